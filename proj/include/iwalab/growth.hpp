#pragma once

#include <string>
#include <vector>

#include "iwalab/torsion_module.hpp"

namespace iwalab {

/// Result of scanning |M / nu_{n,e} M| over a level window and fitting
/// Iwasawa's growth law exponent(n) = lambda*n + mu*p^n + nu.
struct GrowthReport {
  unsigned fitted_lambda = 0;
  unsigned fitted_mu = 0;
  long long fitted_nu = 0;
  unsigned n_stab = 0;
  unsigned base_level = 0;
  std::vector<std::pair<unsigned, long long>> rows;  // (n, exponent)
};

inline long long pow_ll(unsigned p, unsigned n) {
  long long r = 1;
  for (unsigned i = 0; i < n; ++i) r *= p;
  return r;
}

/// Scan |M / nu_{n,e} M| for e < n <= n_max, fit (lambda, mu, nu) from the
/// last three rows and certify the fit on every row from the discovered
/// stabilization index onward. The fitted pair must match the structural
/// invariants of M.
inline GrowthReport growth_scan(const ElemTorsionModule& m, unsigned e,
                                unsigned n_max) {
  const unsigned p = m.prime();
  if (n_max < e + 3)
    throw DomainError("growth_scan: need at least three levels past the base");
  if (pow_big(p, n_max) > kDegreeCap)
    throw ResourceError("growth_scan: p^n_max exceeds the degree cap");

  GrowthReport rep;
  rep.base_level = e;
  std::string obstructions;
  for (unsigned n = e + 1; n <= n_max; ++n) {
    LambdaPoly g = nu(p, m.precision(), n, e, m.variable());
    try {
      rep.rows.emplace_back(n, quotient_order(m, g));
    } catch (const InfiniteQuotient& err) {
      obstructions += "level " + std::to_string(n) + ": " + err.what() + "; ";
    }
  }
  if (!obstructions.empty())
    throw StructuralError("growth_scan: cyclotomic obstruction — " + obstructions);

  // Fit from the last three rows.
  const std::size_t k = rep.rows.size();
  const long long e0 = rep.rows[k - 3].second, e1 = rep.rows[k - 2].second,
                  e2 = rep.rows[k - 1].second;
  const unsigned n0 = rep.rows[k - 3].first;
  const long long d1 = e1 - e0, d2 = e2 - e1;
  const long long mu_den = pow_ll(p, n0) * (p - 1) * (p - 1);
  const long long mu_num = d2 - d1;
  if (mu_num < 0 || mu_num % mu_den != 0)
    throw NoStabilization("growth_scan: no integral mu fit in the window");
  const long long mu_fit = mu_num / mu_den;
  const long long lambda_fit = d1 - mu_fit * pow_ll(p, n0) * (p - 1);
  if (lambda_fit < 0)
    throw NoStabilization("growth_scan: negative lambda fit in the window");
  const long long nu_fit =
      e2 - lambda_fit * rep.rows[k - 1].first - mu_fit * pow_ll(p, rep.rows[k - 1].first);

  rep.fitted_lambda = static_cast<unsigned>(lambda_fit);
  rep.fitted_mu = static_cast<unsigned>(mu_fit);
  rep.fitted_nu = nu_fit;

  // Least index from which agreement is total.
  std::size_t first_good = k;
  for (std::size_t i = k; i-- > 0;) {
    const auto& [n, exp] = rep.rows[i];
    if (exp != lambda_fit * n + mu_fit * pow_ll(p, n) + nu_fit) break;
    first_good = i;
  }
  if (first_good == k)
    throw NoStabilization("growth_scan: fit does not hold on the last row");
  rep.n_stab = rep.rows[first_good].first;

  auto [sl, sm] = lambda_mu(m);
  if (sl != rep.fitted_lambda || sm != rep.fitted_mu)
    throw StructuralError("growth_scan: fitted (lambda, mu) disagree with structure");
  return rep;
}

}  // namespace iwalab
