#include "cayley/suite.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

namespace cayley {

namespace {

using ordered_json = nlohmann::ordered_json;

void all_subsets(unsigned n, const std::function<void(const IndexSet&)>& f) {
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    IndexSet I;
    for (unsigned v = 1; v <= n; ++v)
      if (mask & (1u << (v - 1))) I.push_back(v);
    f(I);
  }
}

void all_minor_pairs(unsigned n, bool all_minors,
                     const std::function<void(const IndexSet&, const IndexSet&)>& f) {
  if (!all_minors) {
    IndexSet full(n);
    for (unsigned i = 0; i < n; ++i) full[i] = i + 1;
    f(full, full);
    return;
  }
  std::vector<std::vector<IndexSet>> by_size(n + 1);
  all_subsets(n, [&](const IndexSet& I) { by_size[I.size()].push_back(I); });
  for (unsigned k = 0; k <= n; ++k)
    for (const auto& I : by_size[k])
      for (const auto& J : by_size[k]) f(I, J);
}

void all_even_subsets(unsigned n, bool all_minors,
                      const std::function<void(const IndexSet&)>& f) {
  if (!all_minors) {
    IndexSet full(n);
    for (unsigned i = 0; i < n; ++i) full[i] = i + 1;
    f(full);
    return;
  }
  all_subsets(n, [&](const IndexSet& I) {
    if (I.size() % 2 == 0) f(I);
  });
}

std::uint64_t mix_seed(std::uint64_t base, const std::string& key) {
  std::uint64_t h = 1469598103934665603ull ^ base;
  for (char c : key) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

bool family_selected(const SuiteConfig& cfg, Family f) {
  if (cfg.families.empty()) return true;
  return std::find(cfg.families.begin(), cfg.families.end(), f) != cfg.families.end();
}

unsigned clamp_cap(const SuiteConfig& cfg, unsigned cap) {
  if (cfg.max_size) return std::min(cap, *cfg.max_size);
  return cap;
}

}  // namespace

std::optional<std::string> SuiteConfig::validate() const {
  SuiteCaps hard;
  if (caps.ordinary > hard.ordinary || caps.symmetric > hard.symmetric ||
      caps.antisym_m > hard.antisym_m || caps.rect_m > hard.rect_m ||
      caps.rect_n > hard.rect_n || caps.rect_antisym_m > hard.rect_antisym_m ||
      caps.rect_antisym_n > hard.rect_antisym_n || caps.rect_multi_l > hard.rect_multi_l ||
      caps.rect_multi_n > hard.rect_multi_n || caps.diag > hard.diag ||
      caps.laplacian > hard.laplacian || caps.product_m > hard.product_m ||
      caps.product_n > hard.product_n)
    return "suite sizes exceed the desk-scale hard caps";
  return std::nullopt;
}

std::vector<IdentityCase> enumerate_cases(const SuiteConfig& cfg) {
  std::vector<IdentityCase> cases;
  auto add = [&cases](IdentityCase c) { cases.push_back(std::move(c)); };

  if (family_selected(cfg, Family::ordinary)) {
    for (unsigned n = 1; n <= clamp_cap(cfg, cfg.caps.ordinary); ++n)
      all_minor_pairs(n, cfg.all_minors, [&](const IndexSet& I, const IndexSet& J) {
        IdentityCase c;
        c.family = Family::ordinary;
        c.n = n;
        c.I = I;
        c.J = J;
        add(c);
      });
  }
  if (family_selected(cfg, Family::symmetric)) {
    for (unsigned n = 1; n <= clamp_cap(cfg, cfg.caps.symmetric); ++n)
      all_minor_pairs(n, cfg.all_minors, [&](const IndexSet& I, const IndexSet& J) {
        IdentityCase c;
        c.family = Family::symmetric;
        c.n = n;
        c.I = I;
        c.J = J;
        add(c);
      });
  }
  for (Family f : {Family::antisym_pf, Family::antisym_det}) {
    if (!family_selected(cfg, f)) continue;
    for (unsigned m = 1; m <= clamp_cap(cfg, cfg.caps.antisym_m); ++m)
      all_even_subsets(2 * m, cfg.all_minors, [&](const IndexSet& I) {
        IdentityCase c;
        c.family = f;
        c.m = m;
        c.I = I;
        add(c);
      });
  }
  for (Family f : {Family::rect_two_matrix, Family::rect_sym}) {
    if (!family_selected(cfg, f)) continue;
    for (unsigned m = 1; m <= clamp_cap(cfg, cfg.caps.rect_m); ++m)
      for (unsigned n = m; n <= clamp_cap(cfg, cfg.caps.rect_n); ++n)
        all_minor_pairs(m, cfg.all_minors, [&](const IndexSet& I, const IndexSet& J) {
          IdentityCase c;
          c.family = f;
          c.m = m;
          c.n = n;
          c.I = I;
          c.J = J;
          add(c);
        });
  }
  if (family_selected(cfg, Family::rect_antisym)) {
    for (unsigned m = 1; m <= clamp_cap(cfg, cfg.caps.rect_antisym_m); ++m)
      for (unsigned n = m; n <= clamp_cap(cfg, cfg.caps.rect_antisym_n); ++n)
        all_even_subsets(2 * m, cfg.all_minors, [&](const IndexSet& I) {
          IdentityCase c;
          c.family = Family::rect_antisym;
          c.m = m;
          c.n = n;
          c.I = I;
          add(c);
        });
  }
  if (family_selected(cfg, Family::rect_multi)) {
    unsigned lmax = clamp_cap(cfg, cfg.caps.rect_multi_l);
    unsigned nmax = clamp_cap(cfg, cfg.caps.rect_multi_n);
    std::vector<unsigned> dims;
    std::function<void(unsigned)> rec = [&](unsigned left) {
      if (!dims.empty()) {
        all_minor_pairs(dims[0], cfg.all_minors, [&](const IndexSet& I, const IndexSet& J) {
          IdentityCase c;
          c.family = Family::rect_multi;
          c.ns = dims;
          c.I = I;
          c.J = J;
          add(c);
        });
      }
      if (left == 0) return;
      for (unsigned v = 1; v <= nmax; ++v) {
        dims.push_back(v);
        rec(left - 1);
        dims.pop_back();
      }
    };
    rec(lmax);
  }
  if (family_selected(cfg, Family::diag_param)) {
    const Rational alpha_values[] = {Rational(0), Rational(1, 2), Rational(1), Rational(2, 7)};
    for (unsigned n = 1; n <= clamp_cap(cfg, cfg.caps.diag); ++n)
      for (const Rational& a : alpha_values)
        for (std::uint32_t bm = 0; bm < (1u << n); ++bm) {
          std::vector<int> betas(n);
          for (unsigned i = 0; i < n; ++i) betas[i] = (bm >> i) & 1;
          all_minor_pairs(n, cfg.all_minors, [&](const IndexSet& I, const IndexSet& J) {
            IdentityCase c;
            c.family = Family::diag_param;
            c.n = n;
            c.alphas.assign(n, a);
            c.betas = betas;
            c.I = I;
            c.J = J;
            add(c);
          });
        }
  }
  if (family_selected(cfg, Family::diag_param_sym)) {
    for (unsigned n = 1; n <= clamp_cap(cfg, cfg.caps.diag); ++n)
      for (std::uint32_t bm = 0; bm < (1u << n); ++bm) {
        std::vector<int> betas(n);
        for (unsigned i = 0; i < n; ++i) betas[i] = (bm >> i) & 1;
        all_minor_pairs(n, cfg.all_minors, [&](const IndexSet& I, const IndexSet& J) {
          IdentityCase c;
          c.family = Family::diag_param_sym;
          c.n = n;
          c.betas = betas;
          c.I = I;
          c.J = J;
          add(c);
        });
      }
  }
  for (Family f : {Family::laplacian_row, Family::laplacian_sym}) {
    if (!family_selected(cfg, f)) continue;
    for (unsigned n = 1; n <= clamp_cap(cfg, cfg.caps.laplacian); ++n) {
      IdentityCase c;
      c.family = f;
      c.n = n;
      add(c);
    }
  }
  for (Family f : {Family::tree_row, Family::tree_sym}) {
    if (!family_selected(cfg, f)) continue;
    for (unsigned n = 2; n <= clamp_cap(cfg, cfg.caps.laplacian); ++n)
      for (unsigned i0 = 1; i0 <= n; ++i0) {
        IdentityCase c;
        c.family = f;
        c.n = n;
        c.i0 = i0;
        add(c);
      }
  }
  if (family_selected(cfg, Family::product_param)) {
    for (unsigned m = 1; m <= clamp_cap(cfg, cfg.caps.product_m); ++m)
      for (unsigned n = m; n <= clamp_cap(cfg, cfg.caps.product_n); ++n)
        for (unsigned pair = 0; pair < cfg.pairs; ++pair)
          all_minor_pairs(m, cfg.all_minors, [&](const IndexSet& I, const IndexSet& J) {
            IdentityCase c;
            c.family = Family::product_param;
            c.m = m;
            c.n = n;
            c.I = I;
            c.J = J;
            c.seed = mix_seed(cfg.seed, "product/" + std::to_string(m) + "/" +
                                            std::to_string(n) + "/" + std::to_string(pair));
            Rng rng(c.seed);
            c.A = random_rational_matrix(n, m, rng);
            c.B = random_rational_matrix(n, m, rng);
            add(c);
          });
  }
  if (family_selected(cfg, Family::border_param)) {
    for (unsigned m = 1; m <= clamp_cap(cfg, cfg.caps.product_m); ++m)
      for (unsigned n = m; n <= clamp_cap(cfg, cfg.caps.product_n); ++n)
        for (unsigned pair = 0; pair < cfg.pairs; ++pair) {
          IdentityCase c;
          c.family = Family::border_param;
          c.m = m;
          c.n = n;
          c.seed = mix_seed(cfg.seed, "border/" + std::to_string(m) + "/" + std::to_string(n) +
                                          "/" + std::to_string(pair));
          Rng rng(c.seed);
          c.A = random_rational_matrix(n - m, n, rng);
          c.B = random_rational_matrix(n - m, n, rng);
          add(c);
        }
  }
  return cases;
}

namespace {

struct PendingCheck {
  std::string kind;
  std::string key;
  std::function<CheckResult()> run;
};

std::vector<PendingCheck> lemma_checks(const SuiteConfig& cfg) {
  std::vector<PendingCheck> out;
  auto add = [&](Lemma which, LemmaParams p, const std::string& tag) {
    std::string key = std::string(lemma_name(which)) + "/" + tag;
    p.seed = mix_seed(cfg.seed, key);
    out.push_back({"lemma", key, [which, p, key]() {
                     auto t0 = std::chrono::steady_clock::now();
                     CheckResult r;
                     r.kind = "lemma";
                     r.key = key;
                     r.holds = lemma_check(which, p);
                     r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count();
                     return r;
                   }});
  };
  auto lp = [](unsigned k, unsigned l, unsigned n, unsigned m, unsigned p) {
    LemmaParams q;
    q.k = k;
    q.l = l;
    q.n = n;
    q.m = m;
    q.p = p;
    return q;
  };
  for (unsigned k = 1; k <= 6; ++k)
    add(Lemma::cycle_genfn, lp(k, 0, 0, 0, 0), "k=" + std::to_string(k));
  for (unsigned k = 1; k <= 4; ++k)
    add(Lemma::matching_cycle_sum, lp(k, 0, 0, 0, 0), "k=" + std::to_string(k));
  for (unsigned n = 1; n <= 3; ++n)
    for (unsigned k = 1; k <= 3; ++k)
      add(Lemma::lemma_elem, lp(k, 0, n, 0, 0),
          "n=" + std::to_string(n) + ",k=" + std::to_string(k));
  for (unsigned l = 1; l <= 2; ++l)
    for (unsigned n = 1; n <= 2; ++n)
      add(Lemma::intscalar, lp(0, l, n, 0, 0),
          "l=" + std::to_string(l) + ",n=" + std::to_string(n));
  for (unsigned n = 1; n <= 3; ++n) add(Lemma::gvform, lp(0, 0, n, 0, 0), "n=" + std::to_string(n));
  for (unsigned l = 1; l <= 3; ++l)
    for (unsigned k = 0; k <= 3; ++k)
      add(Lemma::hessenberg, lp(k, l, 0, 0, 0),
          "l=" + std::to_string(l) + ",k=" + std::to_string(k));
  for (unsigned l = 1; l <= 3; ++l)
    add(Lemma::hessenberg_expand, lp(0, l, 0, 0, 0), "l=" + std::to_string(l));
  for (unsigned l = 1; l <= 3; ++l)
    for (unsigned k = 0; k <= 2; ++k) {
      LemmaParams p = lp(k, l, 0, 0, 0);
      p.ms = {1, 2};
      add(Lemma::solvingmulti, p,
          "l=" + std::to_string(l) + ",k=" + std::to_string(k) + ",m=1,2");
    }
  for (unsigned l = 1; l <= 3; ++l)
    for (unsigned k = 0; k <= 3; ++k)
      add(Lemma::bmatrix_sum, lp(k, l, 0, 0, 0),
          "l=" + std::to_string(l) + ",k=" + std::to_string(k));
  for (unsigned m = 0; m <= 6; ++m)
    add(Lemma::binom_parallel, lp(0, 0, 0, m, 0), "m=" + std::to_string(m));
  for (unsigned p = 0; p <= 6; ++p)
    add(Lemma::chu_vandermonde, lp(0, 0, 0, 0, p), "p=" + std::to_string(p));
  for (unsigned m = 0; m <= 6; ++m)
    add(Lemma::binom_triple, lp(0, 0, 0, m, 0), "m=" + std::to_string(m));
  for (unsigned n = 1; n <= 3; ++n)
    all_minor_pairs(n, true, [&](const IndexSet& I, const IndexSet& J) {
      LemmaParams p;
      p.n = n;
      p.I = I;
      p.J = J;
      std::ostringstream tag;
      tag << "n=" << n << ",|I|=" << I.size();
      for (unsigned v : I) tag << "i" << v;
      for (unsigned v : J) tag << "j" << v;
      add(Lemma::sub_lemma_pbABp, p, tag.str());
    });
  for (unsigned m = 1; m <= 2; ++m)
    all_even_subsets(2 * m, true, [&](const IndexSet& I) {
      LemmaParams p;
      p.m = m;
      p.I = I;
      std::ostringstream tag;
      tag << "m=" << m << ",|I|=" << I.size();
      for (unsigned v : I) tag << "i" << v;
      add(Lemma::sub_lemma_pbCJCp, p, tag.str());
    });
  return out;
}

std::vector<PendingCheck> path_checks(const SuiteConfig& cfg) {
  std::vector<PendingCheck> out;
  auto add = [&](IdentityCase c, unsigned s0) {
    std::string key = c.key() + "/s0=" + std::to_string(s0);
    out.push_back({"path", key, [c, s0, key]() {
                     auto t0 = std::chrono::steady_clock::now();
                     CheckResult r;
                     r.kind = "path";
                     r.key = key;
                     r.holds = grassmann_path_check(c, s0);
                     r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count();
                     return r;
                   }});
  };
  for (unsigned s0 = 1; s0 <= 3; ++s0) {
    for (unsigned n = 1; n <= 3; ++n) {
      all_minor_pairs(n, true, [&](const IndexSet& I, const IndexSet& J) {
        IdentityCase c;
        c.family = Family::ordinary;
        c.n = n;
        c.I = I;
        c.J = J;
        add(c, s0);
        c.family = Family::symmetric;
        add(c, s0);
      });
    }
    // antisymmetric path at 2m <= 3, i.e. m = 1
    all_even_subsets(2, true, [&](const IndexSet& I) {
      IdentityCase c;
      c.family = Family::antisym_pf;
      c.m = 1;
      c.I = I;
      add(c, s0);
    });
    for (unsigned m = 1; m <= 2; ++m)
      for (unsigned n = m; n <= 3; ++n) {
        IdentityCase c;
        c.family = Family::product_param;
        c.m = m;
        c.n = n;
        c.seed = mix_seed(cfg.seed, "path-product/" + std::to_string(m) + "/" +
                                        std::to_string(n) + "/" + std::to_string(s0));
        Rng rng(c.seed);
        c.A = random_rational_matrix(n, m, rng);
        c.B = random_rational_matrix(n, m, rng);
        all_minor_pairs(m, true, [&](const IndexSet& I, const IndexSet& J) {
          c.I = I;
          c.J = J;
          add(c, s0);
        });
        IdentityCase b;
        b.family = Family::border_param;
        b.m = m;
        b.n = n;
        b.seed = mix_seed(cfg.seed, "path-border/" + std::to_string(m) + "/" +
                                        std::to_string(n) + "/" + std::to_string(s0));
        Rng rng2(b.seed);
        b.A = random_rational_matrix(n - m, n, rng2);
        b.B = random_rational_matrix(n - m, n, rng2);
        add(b, s0);
      }
  }
  return out;
}

}  // namespace

SuiteSummary run_suite(const SuiteConfig& cfg) {
  if (auto err = cfg.validate()) throw std::invalid_argument("run_suite: " + *err);

  std::vector<PendingCheck> pending;
  if (cfg.run_identities)
  for (const IdentityCase& c : enumerate_cases(cfg)) {
    std::string key = c.key();
    pending.push_back({"identity", key, [c, key]() {
                         VerificationReport rep = verify_identity(c);
                         CheckResult r;
                         r.kind = "identity";
                         r.key = key;
                         r.holds = rep.holds;
                         r.vacuous = rep.vacuous;
                         r.elapsed_ms = rep.elapsed_ms;
                         r.report = std::move(rep);
                         return r;
                       }});
  }
  if (cfg.run_lemmas && (cfg.max_size.value_or(1) > 0))
    for (auto& pc : lemma_checks(cfg)) pending.push_back(std::move(pc));
  if (cfg.run_paths && (cfg.max_size.value_or(1) > 0))
    for (auto& pc : path_checks(cfg)) pending.push_back(std::move(pc));

  std::vector<CheckResult> results(pending.size());
  unsigned threads = std::max(1u, cfg.threads);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= pending.size()) break;
      results[i] = pending[i].run();
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::sort(results.begin(), results.end(), [](const CheckResult& a, const CheckResult& b) {
    return std::tie(a.kind, a.key) < std::tie(b.kind, b.key);
  });
  SuiteSummary s;
  for (auto& r : results) {
    if (r.vacuous)
      ++s.vacuous;
    else if (r.holds)
      ++s.passed;
    else
      ++s.failed;
    s.results.push_back(std::move(r));
  }
  return s;
}

std::string report_json(const VerificationReport& rep) {
  ordered_json j;
  j["family"] = family_name(rep.kase.family);
  ordered_json dims = ordered_json::object();
  if (!rep.kase.ns.empty()) {
    dims["ns"] = rep.kase.ns;
  } else {
    if (rep.kase.m > 0) dims["m"] = rep.kase.m;
    if (rep.kase.n > 0) dims["n"] = rep.kase.n;
  }
  if (rep.kase.i0 > 0) dims["i0"] = rep.kase.i0;
  j["dims"] = dims;
  j["minor"] = ordered_json{{"I", rep.kase.I}, {"J", rep.kase.J}};
  j["holds"] = rep.holds;
  j["expected_b"] = rep.expected_b.str();
  if (rep.computed_b)
    j["computed_b"] = rep.computed_b->str();
  else
    j["computed_b"] = nullptr;
  j["lhs"] = rep.lhs_text;
  j["rhs"] = rep.rhs_text;
  j["elapsed_ms"] = rep.elapsed_ms;
  if (rep.vacuous) j["vacuous"] = true;
  if (rep.kase.family == Family::product_param || rep.kase.family == Family::border_param)
    j["seed"] = rep.kase.seed;
  return j.dump();
}

std::string summary_json(const SuiteSummary& s, const SuiteConfig& cfg) {
  ordered_json j;
  j["seed"] = cfg.seed;
  j["counts"] =
      ordered_json{{"passed", s.passed}, {"failed", s.failed}, {"vacuous", s.vacuous}};
  ordered_json arr = ordered_json::array();
  for (const CheckResult& r : s.results) {
    if (r.report) {
      arr.push_back(ordered_json::parse(report_json(*r.report)));
    } else {
      ordered_json e;
      e["kind"] = r.kind;
      e["key"] = r.key;
      e["holds"] = r.holds;
      arr.push_back(e);
    }
  }
  j["checks"] = arr;
  return j.dump(2);
}

std::string report_table_row(const CheckResult& r) {
  std::ostringstream os;
  os << (r.vacuous ? "VACUOUS" : (r.holds ? "PASS" : "FAIL")) << "  " << r.kind << "  " << r.key;
  if (r.report && r.holds && !r.vacuous) os << "  b(s) = " << r.report->expected_b.str();
  os << "  [" << r.elapsed_ms << " ms]";
  return os.str();
}

}  // namespace cayley
