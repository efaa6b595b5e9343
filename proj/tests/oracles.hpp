// Independent reference implementations used to cross-check the library.
// Everything here is deliberately naive: exact integer arithmetic, linear
// search, textbook eliminations.
#pragma once

#include <cstdint>
#include <vector>

#include "iwalab/padic.hpp"

namespace oracle {

using iwalab::BigInt;

inline long long xgcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  long long x1, y1;
  long long g = xgcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

inline long long inverse_mod(long long a, long long m) {
  long long x, y;
  xgcd(((a % m) + m) % m, m, x, y);
  return ((x % m) + m) % m;
}

/// Fraction-free determinant (Bareiss) over exact integers.
inline BigInt bareiss_det(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// Sylvester matrix of two integer polynomials (ascending coefficients),
/// built independently of the library's version.
inline std::vector<std::vector<BigInt>> sylvester(const std::vector<BigInt>& f,
                                                  const std::vector<BigInt>& g) {
  const std::size_t df = f.size() - 1, dg = g.size() - 1;
  const std::size_t n = df + dg;
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n, 0));
  for (std::size_t r = 0; r < dg; ++r)
    for (std::size_t j = 0; j <= df; ++j) m[r][r + j] = f[df - j];
  for (std::size_t r = 0; r < df; ++r)
    for (std::size_t j = 0; j <= dg; ++j) m[dg + r][r + j] = g[dg - j];
  return m;
}

inline unsigned valuation_or_max(BigInt v, unsigned p, unsigned cap) {
  if (v < 0) v = -v;
  if (v == 0) return cap;
  unsigned out = 0;
  while (out < cap && v % p == 0) {
    v /= p;
    ++out;
  }
  return out;
}

/// Elementary divisors of an integer matrix by naive Smith reduction.
inline std::vector<BigInt> smith_divisors(std::vector<std::vector<BigInt>> m) {
  std::vector<BigInt> out;
  std::size_t top = 0;
  while (top < m.size() && top < m[0].size()) {
    // locate a nonzero pivot of minimal absolute value
    std::size_t pi = top, pj = top;
    bool found = false;
    for (std::size_t i = top; i < m.size(); ++i)
      for (std::size_t j = top; j < m[0].size(); ++j)
        if (m[i][j] != 0 &&
            (!found || boost::multiprecision::abs(m[i][j]) <
                           boost::multiprecision::abs(m[pi][pj]))) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    std::swap(m[top], m[pi]);
    for (auto& row : m) std::swap(row[top], row[pj]);
    bool clean = true;
    for (std::size_t i = top + 1; i < m.size(); ++i)
      if (m[i][top] % m[top][top] != 0 || m[i][top] != 0) {
        BigInt q = m[i][top] / m[top][top];
        for (std::size_t j = top; j < m[0].size(); ++j)
          m[i][j] -= q * m[top][j];
        if (m[i][top] != 0) clean = false;
      }
    for (std::size_t j = top + 1; j < m[0].size(); ++j)
      if (m[top][j] != 0) {
        BigInt q = m[top][j] / m[top][top];
        for (std::size_t i = top; i < m.size(); ++i)
          m[i][j] -= q * m[i][top];
        if (m[top][j] != 0) clean = false;
      }
    if (!clean) continue;  // remainders left: repeat with a smaller pivot
    out.push_back(boost::multiprecision::abs(m[top][top]));
    ++top;
  }
  return out;
}

/// Least power of ell (by linear search) congruent to +-1 mod 2^k.
inline unsigned long long pm_order_linear(unsigned long long ell, unsigned k) {
  const unsigned long long mod = 1ull << k;
  unsigned long long x = ell % mod;
  unsigned long long ord = 1;
  while (x != 1 && x != mod - 1) {
    x = x * ell % mod;
    ++ord;
  }
  return ord;
}

/// v_p(a^n - 1) by direct big-integer computation.
inline unsigned lifting_valuation(unsigned p, const BigInt& a, unsigned n) {
  BigInt v = 1;
  for (unsigned i = 0; i < n; ++i) v *= a;
  v -= 1;
  return valuation_or_max(v, p, 1u << 20);
}

}  // namespace oracle
