#pragma once

#include <vector>

#include "iwalab/lambda_poly.hpp"

namespace iwalab {

namespace detail {

using Matrix = std::vector<std::vector<BigInt>>;

/// Valuation of the determinant of a square matrix over Z/p^N, by Gaussian
/// elimination with a minimal-valuation pivot. Returns kValInfinity when the
/// remaining block vanishes at full precision (rank deficiency = common
/// factor upstream). Throws PrecisionExhausted once the accumulated pivot
/// valuation enters the guard band.
inline unsigned valuation_of_det(Matrix m, unsigned p, unsigned N,
                                 unsigned guard = kPrecisionGuard) {
  const std::size_t n = m.size();
  const BigInt& mod = padic_modulus(p, N);
  unsigned long long total = 0;
  for (std::size_t step = 0; step < n; ++step) {
    // Global minimal-valuation pivot in the remaining block.
    unsigned best_v = kValInfinity;
    std::size_t bi = step, bj = step;
    for (std::size_t i = step; i < n; ++i)
      for (std::size_t j = step; j < n; ++j) {
        if (m[i][j] == 0) continue;
        unsigned v = residue_valuation(m[i][j], p, N);
        if (v < best_v) {
          best_v = v;
          bi = i;
          bj = j;
        }
      }
    if (best_v == kValInfinity) return kValInfinity;
    total += best_v;
    if (total + guard >= N)
      throw PrecisionExhausted("valuation_of_det: valuation reaches guard band");
    std::swap(m[step], m[bi]);
    for (std::size_t i = step; i < n; ++i) std::swap(m[i][step], m[i][bj]);
    // pivot = p^v * unit; clear the column below.
    const BigInt pv = pow_big(p, best_v);
    const BigInt unit_inv = residue_inverse(m[step][step] / pv, mod);
    for (std::size_t i = step + 1; i < n; ++i) {
      if (m[i][step] == 0) continue;
      BigInt factor = ((m[i][step] / pv) * unit_inv) % mod;
      if (factor == 0) continue;
      for (std::size_t j = step; j < n; ++j) {
        BigInt& slot = m[i][j];
        slot = (slot - factor * m[step][j]) % mod;
        if (slot < 0) slot += mod;
      }
    }
  }
  return static_cast<unsigned>(total);
}

/// Companion matrix of a monic polynomial, entries mod p^N.
inline Matrix companion_matrix(const LambdaPoly& f) {
  if (!f.is_monic()) throw DomainError("companion_matrix: polynomial must be monic");
  const std::size_t d = static_cast<std::size_t>(f.degree());
  const BigInt& mod = padic_modulus(f.prime(), f.precision());
  Matrix c(d, std::vector<BigInt>(d, BigInt(0)));
  for (std::size_t i = 1; i < d; ++i) c[i][i - 1] = 1;
  for (std::size_t i = 0; i < d; ++i) {
    BigInt v = (-f.coeff(i).residue()) % mod;
    if (v < 0) v += mod;
    c[i][d - 1] = v;
  }
  return c;
}

/// g evaluated at a square matrix by Horner's rule, mod p^N.
inline Matrix poly_at_matrix(const LambdaPoly& g, const Matrix& x, unsigned p,
                             unsigned N) {
  const std::size_t d = x.size();
  const BigInt& mod = padic_modulus(p, N);
  Matrix acc(d, std::vector<BigInt>(d, BigInt(0)));
  const auto& cs = g.coeffs();
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
    Matrix next(d, std::vector<BigInt>(d, BigInt(0)));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        if (acc[i][k] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) {
          if (x[k][j] == 0) continue;
          next[i][j] = (next[i][j] + acc[i][k] * x[k][j]) % mod;
        }
      }
    for (std::size_t i = 0; i < d; ++i)
      next[i][i] = (next[i][i] + it->residue()) % mod;
    acc = std::move(next);
  }
  return acc;
}

/// Sylvester matrix of two nonzero polynomials.
inline Matrix sylvester_matrix(const LambdaPoly& f, const LambdaPoly& g) {
  const int df = f.degree(), dg = g.degree();
  const std::size_t n = static_cast<std::size_t>(df + dg);
  Matrix m(n, std::vector<BigInt>(n, BigInt(0)));
  for (int row = 0; row < dg; ++row)
    for (int k = 0; k <= df; ++k) m[row][row + k] = f.coeff(df - k).residue();
  for (int row = 0; row < df; ++row)
    for (int k = 0; k <= dg; ++k)
      m[dg + row][row + k] = g.coeff(dg - k).residue();
  return m;
}

}  // namespace detail

/// v_p(Res(f,g)) for nonzero f, g, or kValInfinity when the elimination
/// degenerates at full precision (a common factor). When one operand is
/// monic the resultant is computed as det of the other operand evaluated at
/// the companion matrix; otherwise the Sylvester matrix is eliminated
/// directly.
inline unsigned resultant_valuation(const LambdaPoly& f, const LambdaPoly& g) {
  if (f.prime() != g.prime() || f.precision() != g.precision())
    throw ConfigError("resultant_valuation: mismatched contexts");
  if (f.is_zero() || g.is_zero())
    throw DomainError("resultant_valuation: inputs must be nonzero");
  const unsigned p = f.prime(), N = f.precision();
  auto constant_case = [&](const PadicInt& c, int other_deg) -> unsigned {
    unsigned v = c.valuation();
    if (v == kValInfinity) return kValInfinity;
    unsigned long long total = static_cast<unsigned long long>(v) * other_deg;
    if (total + kPrecisionGuard >= N)
      throw PrecisionExhausted("resultant_valuation: valuation reaches guard band");
    return static_cast<unsigned>(total);
  };
  if (f.degree() == 0 && g.degree() == 0) return 0;
  if (f.degree() == 0) return constant_case(f.coeff(0), g.degree());
  if (g.degree() == 0) return constant_case(g.coeff(0), f.degree());
  if (f.is_monic()) {
    auto m = detail::poly_at_matrix(g, detail::companion_matrix(f), p, N);
    return detail::valuation_of_det(std::move(m), p, N);
  }
  if (g.is_monic()) {
    auto m = detail::poly_at_matrix(f, detail::companion_matrix(g), p, N);
    return detail::valuation_of_det(std::move(m), p, N);
  }
  return detail::valuation_of_det(detail::sylvester_matrix(f, g), p, N);
}

}  // namespace iwalab
