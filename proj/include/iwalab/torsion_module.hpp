#pragma once

#include <string>
#include <utility>
#include <vector>

#include "iwalab/resultant.hpp"
#include "iwalab/weierstrass.hpp"

namespace iwalab {

/// Elementary torsion Lambda-module: direct sum of Lambda/(p^{a_i}) and
/// Lambda/(f_j) with each f_j distinguished of degree >= 1 (powers expanded
/// at construction).
class ElemTorsionModule {
 public:
  ElemTorsionModule() : p_(2), N_(kDefaultPrecision), var_(Variable::H) {}

  ElemTorsionModule(unsigned p, unsigned N, std::vector<unsigned> mu_exponents,
                    std::vector<LambdaPoly> lambda_components,
                    Variable var = Variable::H)
      : p_(p),
        N_(N),
        var_(var),
        mu_exponents_(std::move(mu_exponents)),
        lambda_components_(std::move(lambda_components)) {
    for (unsigned a : mu_exponents_)
      if (a == 0) throw DomainError("ElemTorsionModule: p-power exponent must be >= 1");
    for (const auto& f : lambda_components_) {
      if (f.prime() != p || f.precision() != N)
        throw ConfigError("ElemTorsionModule: component context mismatch");
      if (!f.is_distinguished() || f.degree() < 1)
        throw DomainError(
            "ElemTorsionModule: component must be distinguished of degree >= 1");
    }
  }

  unsigned prime() const { return p_; }
  unsigned precision() const { return N_; }
  Variable variable() const { return var_; }
  const std::vector<unsigned>& mu_exponents() const { return mu_exponents_; }
  const std::vector<LambdaPoly>& lambda_components() const {
    return lambda_components_;
  }

  bool is_trivial() const {
    return mu_exponents_.empty() && lambda_components_.empty();
  }

 private:
  unsigned p_;
  unsigned N_;
  Variable var_;
  std::vector<unsigned> mu_exponents_;
  std::vector<LambdaPoly> lambda_components_;
};

/// Structural invariants: lambda = sum of component degrees, mu = sum of
/// p-power exponents.
inline std::pair<unsigned, unsigned> lambda_mu(const ElemTorsionModule& m) {
  unsigned lambda = 0, mu = 0;
  for (const auto& f : m.lambda_components())
    lambda += static_cast<unsigned>(f.degree());
  for (unsigned a : m.mu_exponents()) mu += a;
  return {lambda, mu};
}

inline ElemTorsionModule direct_sum(const ElemTorsionModule& a,
                                    const ElemTorsionModule& b) {
  if (a.prime() != b.prime() || a.precision() != b.precision())
    throw ConfigError("direct_sum: mismatched contexts");
  std::vector<unsigned> mu = a.mu_exponents();
  mu.insert(mu.end(), b.mu_exponents().begin(), b.mu_exponents().end());
  std::vector<LambdaPoly> fs = a.lambda_components();
  fs.insert(fs.end(), b.lambda_components().begin(),
            b.lambda_components().end());
  return ElemTorsionModule(a.prime(), a.precision(), std::move(mu),
                           std::move(fs), a.variable());
}

/// Exponent E with |M/gM| = p^E. Per component: a_i * deg(ghat) for
/// Lambda/(p^{a_i}) (ghat the distinguished part of g), and the valuation of
/// det of g at the companion matrix for Lambda/(f_j).
inline long long quotient_order(const ElemTorsionModule& m,
                                const LambdaPoly& g) {
  if (g.prime() != m.prime() || g.precision() != m.precision())
    throw ConfigError("quotient_order: mismatched contexts");
  if (g.is_zero()) throw DomainError("quotient_order: g must be nonzero");
  const unsigned p = m.prime(), N = m.precision();

  long long exponent = 0;
  if (!m.mu_exponents().empty()) {
    unsigned t;
    unsigned dist_deg;
    if (g.is_distinguished()) {
      t = 0;
      dist_deg = static_cast<unsigned>(g.degree());
    } else {
      auto w = weierstrass_prepare(g);
      t = w.mu_part;
      dist_deg = static_cast<unsigned>(w.distinguished_part.degree());
    }
    if (t > 0)
      throw InfiniteQuotient(
          "quotient_order: g has a p-power factor against a Lambda/(p^a) component");
    for (unsigned a : m.mu_exponents())
      exponent += static_cast<long long>(a) * dist_deg;
  }
  for (std::size_t j = 0; j < m.lambda_components().size(); ++j) {
    const auto& f = m.lambda_components()[j];
    auto mat = detail::poly_at_matrix(g, detail::companion_matrix(f), p, N);
    unsigned v = detail::valuation_of_det(std::move(mat), p, N);
    if (v == kValInfinity)
      throw InfiniteQuotient("quotient_order: component " + std::to_string(j) +
                             " shares a factor with g");
    exponent += v;
  }
  return exponent;
}

}  // namespace iwalab
