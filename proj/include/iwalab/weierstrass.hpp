#pragma once

#include <vector>

#include "iwalab/lambda_poly.hpp"

namespace iwalab {

/// f = p^t * u * g with g distinguished and u a unit of Lambda.
/// The factors are certified mod p^{N - t}.
struct WeierstrassDecomposition {
  unsigned mu_part = 0;
  LambdaPoly distinguished_part;
  LambdaPoly unit_part;
};

namespace detail {

// Dense polynomials over F_p, ascending degree, coefficients in [0, p).
using FpPoly = std::vector<unsigned long>;

inline void fp_trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, unsigned long p) {
  if (a.empty() || b.empty()) return {};
  FpPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  fp_trim(out);
  return out;
}

inline FpPoly fp_add(FpPoly a, const FpPoly& b, unsigned long p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % p;
  fp_trim(a);
  return a;
}

inline unsigned long fp_inv(unsigned long a, unsigned long p) {
  long long t0 = 0, t1 = 1, r0 = static_cast<long long>(p),
            r1 = static_cast<long long>(a % p);
  while (r1 != 0) {
    long long q = r0 / r1;
    long long r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    long long t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  t0 %= static_cast<long long>(p);
  if (t0 < 0) t0 += static_cast<long long>(p);
  return static_cast<unsigned long>(t0);
}

inline std::pair<FpPoly, FpPoly> fp_divrem(FpPoly a, const FpPoly& b,
                                           unsigned long p) {
  fp_trim(a);
  if (b.empty()) throw DomainError("fp_divrem: division by zero");
  unsigned long lead_inv = fp_inv(b.back(), p);
  if (a.size() < b.size()) return {{}, a};
  FpPoly q(a.size() - b.size() + 1, 0);
  for (int i = static_cast<int>(a.size()) - 1;
       i >= static_cast<int>(b.size()) - 1; --i) {
    unsigned long c = (a[i] * lead_inv) % p;
    if (c == 0) continue;
    q[i - (b.size() - 1)] = c;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::size_t k = i - (b.size() - 1) + j;
      a[k] = (a[k] + p - (c * b[j]) % p) % p;
    }
  }
  fp_trim(a);
  fp_trim(q);
  return {q, a};
}

// Bezout pair for coprime g, u over F_p: a*g + b*u == 1.
inline std::pair<FpPoly, FpPoly> fp_bezout(const FpPoly& g, const FpPoly& u,
                                           unsigned long p) {
  FpPoly r0 = g, r1 = u;
  FpPoly s0 = {1}, s1 = {};
  FpPoly t0 = {}, t1 = {1};
  while (!r1.empty()) {
    auto [q, r2] = fp_divrem(r0, r1, p);
    // s2 = s0 - q*s1, t2 = t0 - q*t1  (subtraction done via p - x)
    auto neg = [p](FpPoly f) {
      for (auto& c : f) c = (p - c) % p;
      return f;
    };
    FpPoly s2 = fp_add(s0, neg(fp_mul(q, s1, p)), p);
    FpPoly t2 = fp_add(t0, neg(fp_mul(q, t1, p)), p);
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
    t0 = t1; t1 = t2;
  }
  if (r0.size() != 1)
    throw StructuralError("fp_bezout: inputs are not coprime mod p");
  unsigned long c = fp_inv(r0[0], p);
  for (auto& x : s0) x = (x * c) % p;
  for (auto& x : t0) x = (x * c) % p;
  return {s0, t0};
}

}  // namespace detail

/// Weierstrass preparation of a nonzero polynomial: f = p^t * u * g with g
/// distinguished of degree equal to the index of the first unit coefficient
/// of f / p^t, and u a polynomial unit of Lambda. Computed by Hensel lifting
/// of the mod-p factorization T^lambda * (unit part).
inline WeierstrassDecomposition weierstrass_prepare(const LambdaPoly& f) {
  const unsigned p = f.prime();
  const unsigned N = f.precision();
  if (f.is_zero() || f.content_valuation() >= N)
    throw PrecisionExhausted(
        "weierstrass_prepare: input indistinguishable from zero at precision");
  unsigned t = f.content_valuation();
  if (N <= t + kPrecisionGuard)
    throw PrecisionExhausted("weierstrass_prepare: mu-part eats the precision");
  const unsigned Np = N - t;  // working precision for the unit*distinguished part
  const BigInt& mod = padic_modulus(p, Np);
  const BigInt pt = pow_big(p, t);

  std::vector<BigInt> fp;  // f / p^t, residues mod p^{N-t}
  fp.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) fp.push_back((c.residue() / pt) % mod);

  // Index of the first unit coefficient = degree of the distinguished part.
  std::size_t lambda = 0;
  while (lambda < fp.size() && fp[lambda] % p == 0) ++lambda;
  if (lambda == fp.size())
    throw StructuralError("weierstrass_prepare: no unit coefficient after p^t removal");
  const std::size_t d = fp.size() - 1;

  if (lambda == 0) {
    // f/p^t is already a unit of Lambda.
    std::vector<PadicInt> uc;
    for (const auto& x : fp) uc.emplace_back(p, N, x);
    WeierstrassDecomposition out;
    out.mu_part = t;
    out.distinguished_part = LambdaPoly::one(p, N, f.variable());
    out.unit_part = LambdaPoly(p, N, std::move(uc), f.variable());
    return out;
  }

  // Mod-p factorization f/p^t = g0 * u0 with g0 = T^lambda, u0 the upper part.
  detail::FpPoly g0(lambda + 1, 0);
  g0[lambda] = 1;
  detail::FpPoly u0;
  for (std::size_t i = lambda; i <= d; ++i)
    u0.push_back(static_cast<unsigned long>((fp[i] % p).convert_to<unsigned long>()));
  detail::fp_trim(u0);
  auto [bez_a, bez_b] = detail::fp_bezout(g0, u0, p);

  // Linear Hensel lifting f/p^t == g*u mod p^{k+1}, g monic of degree lambda.
  std::vector<BigInt> g(lambda + 1, BigInt(0));
  g[lambda] = 1;
  std::vector<BigInt> u(d - lambda + 1, BigInt(0));
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = fp[lambda + i] % p;

  BigInt pk = p;
  for (unsigned k = 1; k < Np; ++k, pk *= p) {
    // e = (f/p^t - g*u) / p^k mod p
    std::vector<BigInt> prod(d + 1, BigInt(0));
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < u.size(); ++j) prod[i + j] += g[i] * u[j];
    detail::FpPoly e(d + 1, 0);
    bool any = false;
    for (std::size_t i = 0; i <= d; ++i) {
      BigInt diff = (fp[i] - prod[i]) % mod;
      if (diff < 0) diff += mod;
      BigInt digit = (diff / pk) % p;
      e[i] = digit.convert_to<unsigned long>();
      any = any || e[i] != 0;
    }
    detail::fp_trim(e);
    if (!any) continue;
    auto [q, dg] = detail::fp_divrem(detail::fp_mul(bez_b, e, p), g0, p);
    detail::FpPoly du =
        detail::fp_add(detail::fp_mul(bez_a, e, p), detail::fp_mul(q, u0, p), p);
    for (std::size_t i = 0; i < dg.size(); ++i)
      g[i] = (g[i] + pk * dg[i]) % mod;
    for (std::size_t i = 0; i < du.size() && i < u.size(); ++i)
      u[i] = (u[i] + pk * du[i]) % mod;
  }

  std::vector<PadicInt> gc, uc;
  for (const auto& x : g) gc.emplace_back(p, N, x);
  for (const auto& x : u) uc.emplace_back(p, N, x);
  WeierstrassDecomposition out;
  out.mu_part = t;
  out.distinguished_part = LambdaPoly(p, N, std::move(gc), f.variable());
  out.unit_part = LambdaPoly(p, N, std::move(uc), f.variable());
  if (!out.distinguished_part.is_distinguished())
    throw StructuralError("weierstrass_prepare: lifted factor is not distinguished");
  return out;
}

}  // namespace iwalab
