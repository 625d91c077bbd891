#pragma once

#include "cayley/matrixfun.hpp"
#include "cayley/poly.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cayley {

// Generator universe of a Grassmann algebra.  Generators carry 0-based
// indices; subsets are machine-word bitmasks, hence n <= 62.
struct GContext {
  unsigned n = 0;
  std::vector<std::string> names;
  // partner[i] = index paired with i; present only for "complex" layouts.
  std::optional<std::vector<unsigned>> pairing;

  static std::shared_ptr<const GContext> unpaired(unsigned n, const std::string& prefix = "chi");
  // m pairs (psi_i, psib_i) laid out as psi_1, psib_1, psi_2, psib_2, ...
  static std::shared_ptr<const GContext> paired(unsigned m, const std::string& prefix = "psi");
  static std::shared_ptr<const GContext> named(std::vector<std::string> names,
                                               std::optional<std::vector<unsigned>> pairing);

  unsigned psi(unsigned i) const { return 2 * i; }      // 0-based pair index
  unsigned psibar(unsigned i) const { return 2 * i + 1; }
};

// Element of the Grassmann algebra with Poly coefficients.
class GElement {
 public:
  GElement() = default;  // zero with detached context

  static GElement zero(std::shared_ptr<const GContext> ctx);
  static GElement scalar(std::shared_ptr<const GContext> ctx, Poly body);
  static GElement generator(std::shared_ptr<const GContext> ctx, unsigned i);
  static GElement monomial(std::shared_ptr<const GContext> ctx, std::uint64_t mask, Poly coeff);

  const std::shared_ptr<const GContext>& context() const { return ctx_; }
  const std::map<std::uint64_t, Poly>& coeffs() const { return c_; }

  bool is_zero() const { return c_.empty(); }
  bool is_even() const;
  bool is_odd() const;
  bool is_pure_soul() const { return !c_.count(0); }
  Poly body() const;
  Poly coeff(std::uint64_t mask) const;

  GElement operator+(const GElement& o) const;
  GElement operator-(const GElement& o) const;
  GElement operator*(const GElement& o) const;
  GElement scale(const Poly& p) const;
  GElement pow(std::uint32_t k) const;

  friend bool operator==(const GElement& a, const GElement& b);

  // Iterated Berezin integral/derivative: for the written measure
  // d chi_{order[0]} ... d chi_{order[k-1]} the rightmost factor acts first.
  GElement berezin(const std::vector<unsigned>& order) const;

  // exp of an even pure-soul element (finite by nilpotency).
  GElement exp_even() const;
  // sum_k coeffs[k] * f^k for even pure-soul f.
  GElement series(const std::vector<Poly>& series_coeffs) const;
  // substitute chi_i -> sum_j A_ij chi_j.
  GElement linear_change(const RMatrix<Poly>& A) const;

  std::string str() const;

 private:
  void prune();
  static const GElement& pick_ctx(const GElement& a, const GElement& b);

  std::shared_ptr<const GContext> ctx_;
  std::map<std::uint64_t, Poly> c_;
};

// Sign of the merge chi^I chi^J for disjoint masks.
int merge_sign(std::uint64_t I, std::uint64_t J);

// Full reversed-order measure D chi = d chi_n ... d chi_1.
std::vector<unsigned> measure_all_reversed(unsigned n);
// D(psi, psib) = d psi_1 d psib_1 ... d psi_m d psib_m over pair indices [first, first+m).
std::vector<unsigned> measure_pairs(const GContext& ctx, unsigned first_pair, unsigned m);

// Extracts the scalar coefficient of a fully integrated element.
Poly scalar_part(const GElement& g);

// Evaluate a Poly with some variables bound to (even) Grassmann values.
GElement g_subst_poly(std::shared_ptr<const GContext> ctx, const Poly& p,
                      const std::map<VarId, GElement>& bindings);

// int D chi exp(1/2 chi^T A chi) over an unpaired context; equals pf A.
Poly gaussian_real(const RMatrix<Poly>& A);
// int D(psi,psib) exp(psib^T A psi) over a paired context; equals det A.
Poly gaussian_complex(const RMatrix<Poly>& A);

// Quadratic forms used by the Gaussian integrals and Wick checks.
GElement quad_form_real(std::shared_ptr<const GContext> ctx, const RMatrix<Poly>& A,
                        const std::vector<unsigned>& gens);
GElement quad_form_complex(std::shared_ptr<const GContext> ctx, const RMatrix<Poly>& A,
                           unsigned first_pair);

}  // namespace cayley
