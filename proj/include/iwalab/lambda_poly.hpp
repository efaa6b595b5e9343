#pragma once

#include <algorithm>
#include <vector>

#include "iwalab/padic.hpp"

namespace iwalab {

/// Which one-variable copy of the Iwasawa algebra a polynomial lives in.
/// Purely documentary; the two directions are never mixed.
enum class Variable { H, Gamma };

/// Polynomial over Z_p at precision p^N in T = (topological generator) - 1.
/// Stored dense, ascending degree, normalized so the leading coefficient is
/// nonzero at the declared precision. The zero polynomial has no coefficients.
class LambdaPoly {
 public:
  LambdaPoly() : p_(2), N_(kDefaultPrecision), var_(Variable::H) {}

  LambdaPoly(unsigned p, unsigned N, std::vector<PadicInt> coeffs,
             Variable var = Variable::H)
      : p_(p), N_(N), coeffs_(std::move(coeffs)), var_(var) {
    for (const auto& c : coeffs_)
      if (c.prime() != p || c.precision() != N)
        throw ConfigError("LambdaPoly: coefficient context mismatch");
    normalize();
  }

  /// Convenience constructor from integer coefficients, ascending degree.
  static LambdaPoly from_integers(unsigned p, unsigned N,
                                  const std::vector<long long>& cs,
                                  Variable var = Variable::H) {
    std::vector<PadicInt> v;
    v.reserve(cs.size());
    for (long long c : cs) v.emplace_back(p, N, BigInt(c));
    return LambdaPoly(p, N, std::move(v), var);
  }

  static LambdaPoly zero(unsigned p, unsigned N, Variable var = Variable::H) {
    return LambdaPoly(p, N, {}, var);
  }
  static LambdaPoly one(unsigned p, unsigned N, Variable var = Variable::H) {
    return LambdaPoly(p, N, {PadicInt::one(p, N)}, var);
  }
  static LambdaPoly constant(unsigned p, unsigned N, const BigInt& c,
                             Variable var = Variable::H) {
    return LambdaPoly(p, N, {PadicInt(p, N, c)}, var);
  }

  unsigned prime() const { return p_; }
  unsigned precision() const { return N_; }
  Variable variable() const { return var_; }
  const std::vector<PadicInt>& coeffs() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  PadicInt coeff(std::size_t i) const {
    if (i < coeffs_.size()) return coeffs_[i];
    return PadicInt::zero(p_, N_);
  }

  PadicInt leading() const {
    if (is_zero()) throw DomainError("LambdaPoly: zero polynomial has no leading coefficient");
    return coeffs_.back();
  }

  bool is_monic() const {
    return !is_zero() && leading().residue() == 1;
  }

  /// Monic with every lower coefficient divisible by p.
  bool is_distinguished() const {
    if (!is_monic()) return false;
    for (std::size_t i = 0; i + 1 < coeffs_.size(); ++i)
      if (coeffs_[i].is_unit()) return false;
    return true;
  }

  /// Minimal coefficient valuation; kValInfinity for the zero polynomial.
  unsigned content_valuation() const {
    unsigned v = kValInfinity;
    for (const auto& c : coeffs_) v = std::min(v, c.valuation());
    return v;
  }

  PadicInt evaluate(const PadicInt& x) const {
    check_context_point(x);
    PadicInt acc = PadicInt::zero(p_, N_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * x + *it;
    return acc;
  }

  LambdaPoly operator+(const LambdaPoly& o) const {
    check_context(o);
    std::vector<PadicInt> out(std::max(coeffs_.size(), o.coeffs_.size()),
                              PadicInt::zero(p_, N_));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) + o.coeff(i);
    return LambdaPoly(p_, N_, std::move(out), var_);
  }

  LambdaPoly operator-(const LambdaPoly& o) const {
    check_context(o);
    std::vector<PadicInt> out(std::max(coeffs_.size(), o.coeffs_.size()),
                              PadicInt::zero(p_, N_));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) - o.coeff(i);
    return LambdaPoly(p_, N_, std::move(out), var_);
  }

  LambdaPoly operator*(const LambdaPoly& o) const {
    check_context(o);
    if (is_zero() || o.is_zero()) return zero(p_, N_, var_);
    const BigInt& mod = padic_modulus(p_, N_);
    std::vector<BigInt> out(coeffs_.size() + o.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
        out[i + j] += coeffs_[i].residue() * o.coeffs_[j].residue();
    std::vector<PadicInt> cs;
    cs.reserve(out.size());
    for (auto& x : out) cs.emplace_back(p_, N_, x % mod);
    return LambdaPoly(p_, N_, std::move(cs), var_);
  }

  /// Division with remainder by a monic divisor; exact over Z/p^N.
  std::pair<LambdaPoly, LambdaPoly> divrem(const LambdaPoly& g) const {
    check_context(g);
    if (!g.is_monic()) throw DomainError("LambdaPoly::divrem: divisor must be monic");
    const BigInt& mod = padic_modulus(p_, N_);
    std::vector<BigInt> rem;
    rem.reserve(coeffs_.size());
    for (const auto& c : coeffs_) rem.push_back(c.residue());
    int dg = g.degree();
    int dq = static_cast<int>(rem.size()) - 1 - dg;
    if (dq < 0) return {zero(p_, N_, var_), *this};
    std::vector<BigInt> quo(dq + 1, BigInt(0));
    for (int i = static_cast<int>(rem.size()) - 1; i >= dg; --i) {
      BigInt q = rem[i];
      if (q == 0) continue;
      quo[i - dg] = q;
      for (int j = 0; j <= dg; ++j) {
        BigInt& slot = rem[i - dg + j];
        slot = (slot - q * g.coeffs_[j].residue()) % mod;
        if (slot < 0) slot += mod;
      }
    }
    std::vector<PadicInt> qc, rc;
    for (auto& x : quo) qc.emplace_back(p_, N_, x);
    rem.resize(dg >= 0 ? dg : 0);
    for (auto& x : rem) rc.emplace_back(p_, N_, x);
    return {LambdaPoly(p_, N_, std::move(qc), var_),
            LambdaPoly(p_, N_, std::move(rc), var_)};
  }

  bool operator==(const LambdaPoly& o) const {
    check_context(o);
    if (coeffs_.size() != o.coeffs_.size()) return false;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != o.coeffs_[i]) return false;
    return true;
  }
  bool operator!=(const LambdaPoly& o) const { return !(*this == o); }

  /// Raw residues, ascending degree; convenience for matrix code.
  std::vector<BigInt> residues() const {
    std::vector<BigInt> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c.residue());
    return out;
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero_at_precision())
      coeffs_.pop_back();
  }

  void check_context(const LambdaPoly& o) const {
    if (p_ != o.p_ || N_ != o.N_)
      throw ConfigError("LambdaPoly: mismatched prime or precision");
  }
  void check_context_point(const PadicInt& x) const {
    if (p_ != x.prime() || N_ != x.precision())
      throw ConfigError("LambdaPoly: evaluation point context mismatch");
  }

  unsigned p_;
  unsigned N_;
  std::vector<PadicInt> coeffs_;
  Variable var_;
};

/// Exact binomial row (n choose 0..n) reduced mod p^N.
inline std::vector<BigInt> binomial_row_mod(unsigned n, const BigInt& mod) {
  std::vector<BigInt> row(n + 1);
  BigInt c = 1;
  for (unsigned k = 0; k <= n; ++k) {
    row[k] = c % mod;
    if (k < n) {
      c *= n - k;
      c /= k + 1;
    }
  }
  return row;
}

/// omega_n = (1+T)^{p^n} - 1; distinguished of degree p^n.
inline LambdaPoly omega(unsigned p, unsigned N, unsigned n,
                        Variable var = Variable::H) {
  if (n > 0 && pow_big(p, n) > kDegreeCap)
    throw ResourceError("omega: degree p^n exceeds cap");
  unsigned deg = static_cast<unsigned>(pow_big(p, n).convert_to<unsigned long>());
  const BigInt& mod = padic_modulus(p, N);
  std::vector<BigInt> row = binomial_row_mod(deg, mod);
  std::vector<PadicInt> cs;
  cs.reserve(deg + 1);
  for (unsigned k = 0; k <= deg; ++k) {
    BigInt c = row[k];
    if (k == 0) c -= 1;  // subtract the constant 1
    cs.emplace_back(p, N, c);
  }
  return LambdaPoly(p, N, std::move(cs), var);
}

/// nu_{m,n} = omega_m / omega_n for m > n >= 0.
inline LambdaPoly nu(unsigned p, unsigned N, unsigned m, unsigned n,
                     Variable var = Variable::H) {
  if (m <= n) throw DomainError("nu: requires m > n");
  LambdaPoly om = omega(p, N, m, var);
  LambdaPoly on = omega(p, N, n, var);
  auto [q, r] = om.divrem(on);
  if (!r.is_zero())
    throw StructuralError("nu: omega_m not divisible by omega_n");
  return q;
}

/// nu_{m,n} extended to the degenerate case m == n, where it is the unit 1.
inline LambdaPoly nu_or_one(unsigned p, unsigned N, unsigned m, unsigned n,
                            Variable var = Variable::H) {
  if (m == n) return LambdaPoly::one(p, N, var);
  return nu(p, N, m, n, var);
}

}  // namespace iwalab
