#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iwalab/padic.hpp"

namespace iwalab {

inline constexpr long long kDiscriminantCap = 10'000'000;

inline std::vector<long long> prime_factors(long long n) {
  std::vector<long long> out;
  if (n < 0) n = -n;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

inline bool is_squarefree(long long n) {
  if (n < 0) n = -n;
  for (long long d = 2; d * d <= n; ++d)
    if (n % (d * d) == 0) return false;
  return true;
}

/// Fundamental discriminant of a quadratic field; sign recorded, class-group
/// operations require D < 0.
struct FundamentalDiscriminant {
  long long D = 0;
  std::vector<long long> odd_prime_divisors;
  bool two_ramified = false;

  explicit FundamentalDiscriminant(long long d) : D(d) {
    long long m = d % 4;
    if (m < 0) m += 4;
    bool ok = false;
    if (m == 1) ok = is_squarefree(d);
    else if (m == 0) {
      long long q = d / 4;
      long long qm = q % 4;
      if (qm < 0) qm += 4;
      ok = (qm == 2 || qm == 3) && is_squarefree(q);
    }
    if (!ok || d == 1 || d == 0)
      throw DomainError("FundamentalDiscriminant: not fundamental");
    for (long long pr : prime_factors(d)) {
      if (pr == 2)
        two_ramified = true;
      else
        odd_prime_divisors.push_back(pr);
    }
  }
};

/// Kronecker symbol (a/n).
inline int kronecker(long long a, long long n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0) return 0;
    long long am8 = a % 8;
    if (am8 < 0) am8 += 8;
    if (am8 == 3 || am8 == 5) result = -result;
  }
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long long nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

/// Primitive positive definite binary quadratic form (a, b, c), reduced.
struct QForm {
  long long a = 1, b = 0, c = 0;
  auto operator<=>(const QForm&) const = default;
};

namespace qf {

inline QForm reduce(BigInt a, BigInt b, BigInt c) {
  for (;;) {
    if (c < a) {
      std::swap(a, c);
      b = -b;
    }
    // normalize b into (-a, a]
    if (b > a || b <= -a) {
      BigInt r = b % (2 * a);
      if (r > a) r -= 2 * a;
      if (r <= -a) r += 2 * a;
      c -= (b - r) / (2 * a) * ((b + r) / 2);
      b = r;
      continue;
    }
    if (a == c && b < 0) {
      b = -b;
      continue;
    }
    break;
  }
  QForm f;
  f.a = a.convert_to<long long>();
  f.b = b.convert_to<long long>();
  f.c = c.convert_to<long long>();
  return f;
}

inline QForm identity(long long D) {
  long long m = D % 4;
  if (m < 0) m += 4;
  if (m == 0) return QForm{1, 0, -D / 4};
  return QForm{1, 1, (1 - D) / 4};
}

inline QForm inverse(const QForm& f, long long D) {
  return reduce(f.a, -f.b, f.c);
}

inline BigInt eval(const QForm& f, BigInt x, BigInt y) {
  return f.a * x * x + f.b * x * y + f.c * y * y;
}

/// Equivalent form whose leading coefficient is coprime to n, found by a
/// small search over primitively represented values.
inline QForm coprime_representative(const QForm& f, long long n) {
  for (long long x = 0; x <= 60; ++x)
    for (long long y = -60; y <= 60; ++y) {
      if (x == 0 && y == 0) continue;
      if (std::gcd(x, std::abs(y)) != 1) continue;
      BigInt val = eval(f, x, y);
      if (val <= 0) continue;
      if (boost::multiprecision::gcd(val, BigInt(n)) != 1) continue;
      // complete (x, y) to a unimodular matrix [[x, u], [y, v]]
      long long g = 0, u = 0, v = 0;
      {
        long long s, t;
        long long old_r = x, r = y;
        long long old_s = 1, ss = 0, old_t = 0, tt = 1;
        while (r != 0) {
          long long q = old_r / r;
          long long tmp = old_r - q * r; old_r = r; r = tmp;
          tmp = old_s - q * ss; old_s = ss; ss = tmp;
          tmp = old_t - q * tt; old_t = tt; tt = tmp;
        }
        g = old_r; s = old_s; t = old_t;
        if (g != 1 && g != -1) continue;
        if (g == -1) { s = -s; t = -t; }
        // x*s + y*t = 1  ->  matrix [[x, -t], [y, s]] has det x*s + y*t = 1
        u = -t; v = s;
      }
      QForm out;
      out.a = val.convert_to<long long>();
      BigInt bb = 2 * (BigInt(f.a) * x * u + BigInt(f.c) * y * v) +
                  BigInt(f.b) * (BigInt(x) * v + BigInt(y) * u);
      out.b = bb.convert_to<long long>();
      out.c = eval(f, u, v).convert_to<long long>();
      return out;
    }
  throw StructuralError("coprime_representative: search exhausted");
}

/// Gauss composition through concordant representatives, with reduction.
inline QForm compose(const QForm& f1, const QForm& f2, long long D) {
  QForm g2 = f2;
  if (std::gcd(f1.a, f2.a) != 1) g2 = coprime_representative(f2, f1.a);
  const BigInt a1 = f1.a, a2 = g2.a;
  // CRT: B = b1 mod 2a1, B = b2 mod 2a2 (solvable: b1 = b2 = D mod 2)
  BigInt half = (BigInt(g2.b) - f1.b) / 2;
  BigInt t = (half % a2) * residue_inverse(((a1 % a2) + a2) % a2, a2) % a2;
  if (t < 0) t += a2;
  BigInt B = f1.b + 2 * a1 * t;
  BigInt A = a1 * a2;
  BigInt C = (B * B - D) / (4 * A);
  return reduce(A, B, C);
}

inline QForm power(const QForm& f, unsigned long long e, long long D) {
  QForm acc = identity(D), base = f;
  while (e) {
    if (e & 1ull) acc = compose(acc, base, D);
    base = compose(base, base, D);
    e >>= 1ull;
  }
  return acc;
}

}  // namespace qf

/// Class group of an imaginary quadratic field via reduced forms.
struct FormClassGroup {
  long long D = 0;
  unsigned long long class_number = 0;
  std::vector<unsigned long long> invariant_factors;  // ascending, each divides next
  std::vector<unsigned> two_sylow;  // cyclic 2-power exponents, descending
  std::vector<QForm> reduced_forms;

  unsigned two_rank() const { return static_cast<unsigned>(two_sylow.size()); }
};

inline std::vector<QForm> enumerate_reduced_forms(long long D) {
  std::vector<QForm> forms;
  for (long long a = 1; 3 * a * a <= -D; ++a)
    for (long long b = -a + 1; b <= a; ++b) {
      if (((b - D) % 2 + 2) % 2 != 0) continue;
      long long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      long long c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      forms.push_back(QForm{a, b, c});
    }
  std::sort(forms.begin(), forms.end());
  return forms;
}

/// Class group with structure. The group order is recomputed independently
/// of the enumeration by closing the generators under composition; the
/// invariant factors come from element-order counting per prime.
inline FormClassGroup class_group(const FundamentalDiscriminant& disc) {
  const long long D = disc.D;
  if (D >= 0) throw DomainError("class_group: requires D < 0");
  if (-D > kDiscriminantCap) throw ResourceError("class_group: |D| over cap");

  FormClassGroup g;
  g.D = D;
  g.reduced_forms = enumerate_reduced_forms(D);

  // Subgroup closure under composition, one generator at a time.
  std::set<QForm> sub;
  sub.insert(qf::identity(D));
  for (const QForm& gen : g.reduced_forms) {
    if (sub.count(gen)) continue;
    std::vector<QForm> base(sub.begin(), sub.end());
    QForm x = gen;
    while (!sub.count(x)) {
      for (const QForm& s : base) sub.insert(qf::compose(s, x, D));
      x = qf::compose(x, gen, D);
    }
  }
  g.class_number = sub.size();
  if (g.class_number != g.reduced_forms.size())
    throw StructuralError("class_group: closure order disagrees with form count");

  // Per-prime cyclic decomposition by counting solutions of x^{l^j} = id.
  std::map<long long, std::vector<unsigned>> partitions;
  unsigned long long h = g.class_number;
  for (long long l : prime_factors(static_cast<long long>(h))) {
    std::vector<unsigned> part;  // exponents, descending
    unsigned long long prev = 1, lj = 1;
    for (unsigned j = 1;; ++j) {
      lj *= static_cast<unsigned long long>(l);
      unsigned long long count = 0;
      for (const QForm& x : sub)
        if (qf::power(x, lj, D) == qf::identity(D)) ++count;
      unsigned rank_j = 0;
      unsigned long long ratio = count / prev;
      while (ratio > 1) {
        ratio /= static_cast<unsigned long long>(l);
        ++rank_j;
      }
      if (rank_j == 0) break;
      if (part.size() < rank_j) part.resize(rank_j, 0);
      for (unsigned i = 0; i < rank_j; ++i) ++part[i];
      prev = count;
      if (count == h) break;
    }
    partitions[l] = part;
  }

  std::size_t width = 0;
  for (const auto& [l, part] : partitions) width = std::max(width, part.size());
  std::vector<unsigned long long> inv(width, 1);
  for (const auto& [l, part] : partitions)
    for (std::size_t i = 0; i < part.size(); ++i) {
      unsigned long long f = 1;
      for (unsigned k = 0; k < part[i]; ++k) f *= static_cast<unsigned long long>(l);
      inv[i] *= f;  // inv[0] collects the largest factor
    }
  std::reverse(inv.begin(), inv.end());  // ascending
  g.invariant_factors = inv;
  if (partitions.count(2)) g.two_sylow = partitions[2];

  unsigned long long prod = 1;
  for (auto f : g.invariant_factors) prod *= f;
  if (prod != h)
    throw StructuralError("class_group: invariant factors do not multiply to h");
  return g;
}

/// Genus theory: 2-rank of the class group is t - 1 for t ramified primes.
inline unsigned genus_two_rank(const FundamentalDiscriminant& disc) {
  unsigned t = static_cast<unsigned>(disc.odd_prime_divisors.size()) +
               (disc.two_ramified ? 1 : 0);
  return t - 1;
}

/// Number of primes of the cyclotomic Z_2-tower of Q above an odd prime,
/// in closed form: 2^{v_2(l^2 - 1) - 3}, floored at 1.
inline unsigned two_power_split_count(long long l) {
  if (l % 2 == 0) throw DomainError("two_power_split_count: prime must be odd");
  long long m = (l - 1) * (l + 1);
  unsigned v = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++v;
  }
  return v <= 3 ? 1u : (1u << (v - 3));
}

/// lambda-invariant of the cyclotomic Z_2-extension of an imaginary
/// quadratic field with 2 unramified, by the closed-form divisor count:
/// -1 plus the number of tower primes above each odd prime divisor.
inline unsigned ferrero_kida_lambda(const FundamentalDiscriminant& disc) {
  if (disc.D >= 0)
    throw DomainError("ferrero_kida_lambda: real quadratic fields unsupported");
  if (disc.two_ramified)
    throw DomainError("ferrero_kida_lambda: requires 2 unramified");
  long long total = -1;
  for (long long l : disc.odd_prime_divisors) total += two_power_split_count(l);
  return static_cast<unsigned>(total);
}

/// True iff 2 is unramified, i.e. the unramified Iwasawa module upstairs is
/// Z_2-torsion free.
inline bool torsion_free_flag(const FundamentalDiscriminant& disc) {
  if (disc.D >= 0) throw DomainError("torsion_free_flag: requires D < 0");
  return !disc.two_ramified;
}

/// An input consumed from the literature rather than computed here.
struct AssertedInput {
  std::string fact;
  std::string citation;
};

struct KidaRankReport {
  std::optional<unsigned> rank;
  unsigned term_imaginary = 0;     // lambda of Q(sqrt(-m))
  unsigned term_minus_q = 0;       // forced 0 by q = 3 mod 8
  std::optional<unsigned> term_real;  // lambda of Q(sqrt(mq)), asserted
  std::vector<AssertedInput> asserted;
  bool unverified = false;
};

/// rank X(K_1) = rank X(k_inf) + rank over Q(sqrt(-q)) + rank over
/// Q(sqrt(mq)), with the middle term zero for q = 3 mod 8 and the real
/// quadratic term supplied as an asserted input (zero below the table cap).
inline KidaRankReport kida_rank_identity(
    long long m, long long q,
    std::optional<unsigned> asserted_real_lambda = std::nullopt) {
  if (q % 8 != 3) throw DomainError("kida_rank_identity: requires q = 3 mod 8");
  if (m % q == 0) throw DomainError("kida_rank_identity: requires q not dividing m");
  if (m % 2 == 0 || !is_squarefree(m))
    throw DomainError("kida_rank_identity: m must be odd squarefree");
  KidaRankReport rep;
  rep.term_imaginary = ferrero_kida_lambda(FundamentalDiscriminant(-m));
  rep.term_minus_q = 0;
  if (m * q < 10000) {
    rep.term_real = 0;
    rep.asserted.push_back(
        {"lambda of the real quadratic field Q(sqrt(" + std::to_string(m * q) +
             ")) is zero (below the 10000 table cap)",
         "Pagani"});
  } else if (asserted_real_lambda) {
    rep.term_real = *asserted_real_lambda;
    rep.asserted.push_back(
        {"lambda of Q(sqrt(" + std::to_string(m * q) + ")) supplied by caller",
         "caller-asserted"});
  } else {
    rep.unverified = true;
    return rep;
  }
  rep.rank = rep.term_imaginary + rep.term_minus_q + *rep.term_real;
  return rep;
}

}  // namespace iwalab
