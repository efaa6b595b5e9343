#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "iwalab/errors.hpp"

namespace iwalab {

using BigInt = boost::multiprecision::cpp_int;

/// Default number of p-adic digits carried by every ring element.
inline constexpr unsigned kDefaultPrecision = 256;

/// Results whose certified valuation lies within this many digits of the
/// declared precision are rejected as precision-exhausted.
inline constexpr unsigned kPrecisionGuard = 8;

/// Hard cap on the degree p^m of omega/nu constructions.
inline constexpr unsigned kDegreeCap = 4096;

/// Sentinel for an infinite valuation.
inline constexpr unsigned kValInfinity = std::numeric_limits<unsigned>::max();

inline BigInt pow_big(unsigned base, unsigned exp) {
  BigInt r = 1, b = base;
  while (exp) {
    if (exp & 1u) r *= b;
    b *= b;
    exp >>= 1u;
  }
  return r;
}

/// Cached p^N. The cache is read-mostly and guarded by a mutex.
inline const BigInt& padic_modulus(unsigned p, unsigned N) {
  static std::map<std::pair<unsigned, unsigned>, BigInt> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, N);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, pow_big(p, N)).first;
  return it->second;
}

/// Valuation of a residue known mod p^N. A zero residue yields N (the
/// valuation is only known to be at least N at this precision).
inline unsigned residue_valuation(const BigInt& r, unsigned p, unsigned N) {
  if (r == 0) return N;
  BigInt x = r;
  unsigned v = 0;
  while (v < N && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

/// Inverse of a unit residue mod p^N via extended Euclid.
inline BigInt residue_inverse(const BigInt& a, const BigInt& mod) {
  BigInt r0 = mod, r1 = a % mod, t0 = 0, t1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    BigInt t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw DomainError("residue_inverse: input is not a unit");
  t0 %= mod;
  if (t0 < 0) t0 += mod;
  return t0;
}

/// An element of Z_p known to fixed precision p^N. The exact_zero flag
/// distinguishes the true zero from a residue that merely vanishes mod p^N.
class PadicInt {
 public:
  PadicInt() : p_(2), N_(kDefaultPrecision), residue_(0), exact_zero_(true) {}

  PadicInt(unsigned p, unsigned N, BigInt value)
      : p_(p), N_(N), exact_zero_(value == 0) {
    if (p < 2) throw ConfigError("PadicInt: prime must be >= 2");
    if (N == 0) throw ConfigError("PadicInt: precision must be positive");
    const BigInt& m = padic_modulus(p, N);
    residue_ = value % m;
    if (residue_ < 0) residue_ += m;
  }

  static PadicInt zero(unsigned p, unsigned N) { return PadicInt(p, N, 0); }
  static PadicInt one(unsigned p, unsigned N) { return PadicInt(p, N, 1); }

  unsigned prime() const { return p_; }
  unsigned precision() const { return N_; }
  const BigInt& residue() const { return residue_; }
  bool exact_zero() const { return exact_zero_; }

  /// True when the residue vanishes mod p^N (whether exactly zero or not).
  bool is_zero_at_precision() const { return residue_ == 0; }

  /// Valuation in {0,...,N} or kValInfinity for the exact zero.
  unsigned valuation() const {
    if (exact_zero_) return kValInfinity;
    return residue_valuation(residue_, p_, N_);
  }

  bool is_unit() const { return residue_ % p_ != 0; }

  PadicInt operator+(const PadicInt& o) const {
    check_context(o);
    PadicInt r = with_residue(reduce(residue_ + o.residue_));
    r.exact_zero_ = exact_zero_ && o.exact_zero_;
    return r;
  }

  PadicInt operator-(const PadicInt& o) const {
    check_context(o);
    PadicInt r = with_residue(reduce(residue_ - o.residue_));
    r.exact_zero_ = exact_zero_ && o.exact_zero_;
    return r;
  }

  PadicInt operator*(const PadicInt& o) const {
    check_context(o);
    PadicInt r = with_residue(reduce(residue_ * o.residue_));
    r.exact_zero_ = exact_zero_ || o.exact_zero_;
    return r;
  }

  PadicInt operator-() const {
    PadicInt r = with_residue(reduce(-residue_));
    r.exact_zero_ = exact_zero_;
    return r;
  }

  /// Multiplicative inverse; requires valuation zero.
  PadicInt inverse() const {
    if (!is_unit())
      throw DomainError("PadicInt::inverse: element has positive valuation");
    return with_residue(residue_inverse(residue_, padic_modulus(p_, N_)));
  }

  bool operator==(const PadicInt& o) const {
    check_context(o);
    return residue_ == o.residue_;
  }
  bool operator!=(const PadicInt& o) const { return !(*this == o); }

  std::string str() const { return residue_.str(); }

 private:
  void check_context(const PadicInt& o) const {
    if (p_ != o.p_ || N_ != o.N_)
      throw ConfigError("PadicInt: mismatched prime or precision");
  }

  BigInt reduce(BigInt x) const {
    const BigInt& m = padic_modulus(p_, N_);
    x %= m;
    if (x < 0) x += m;
    return x;
  }

  PadicInt with_residue(BigInt r) const {
    PadicInt out;
    out.p_ = p_;
    out.N_ = N_;
    out.residue_ = std::move(r);
    out.exact_zero_ = false;
    return out;
  }

  unsigned p_;
  unsigned N_;
  BigInt residue_;
  bool exact_zero_;
};

}  // namespace iwalab
