#pragma once

#include "cayley/cayley.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cayley {

// Hard caps: the largest desk-scale sizes the suite will ever run.
struct SuiteCaps {
  unsigned ordinary = 4;
  unsigned symmetric = 4;
  unsigned antisym_m = 3;       // 2m <= 6
  unsigned rect_m = 2, rect_n = 4;
  unsigned rect_antisym_m = 1, rect_antisym_n = 3;  // 2m = 2, 2n <= 6
  unsigned rect_multi_l = 3, rect_multi_n = 3;
  unsigned diag = 3;
  unsigned laplacian = 4;
  unsigned product_m = 2, product_n = 4;
};

struct SuiteConfig {
  SuiteCaps caps;
  // optional global clamp applied on top of the caps (0 = empty run)
  std::optional<unsigned> max_size;
  std::vector<Family> families;  // empty = all families
  bool all_minors = true;  // false: only the full minor of each size
  bool run_identities = true;
  bool run_lemmas = true;
  bool run_paths = true;  // Grassmann proof-path cross-checks
  unsigned pairs = 5;     // random (A,B) pairs for product/border
  std::uint64_t seed = 0;
  unsigned threads = 1;

  std::optional<std::string> validate() const;  // against the hard caps
};

struct CheckResult {
  std::string kind;  // "identity", "lemma", "path"
  std::string key;
  bool holds = false;
  bool vacuous = false;
  std::int64_t elapsed_ms = 0;
  std::optional<VerificationReport> report;  // identity checks only
};

struct SuiteSummary {
  unsigned passed = 0, failed = 0, vacuous = 0;
  std::vector<CheckResult> results;  // sorted by (kind, key)
};

std::vector<IdentityCase> enumerate_cases(const SuiteConfig& cfg);
SuiteSummary run_suite(const SuiteConfig& cfg);

// Report serialization shared by the CLI and the acceptance suite.
std::string report_json(const VerificationReport& rep);
std::string summary_json(const SuiteSummary& s, const SuiteConfig& cfg);
std::string report_table_row(const CheckResult& r);

}  // namespace cayley
