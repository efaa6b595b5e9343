#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iwalab/quadratic.hpp"

namespace iwalab {

inline constexpr unsigned kSplitLevelCap = 20;

namespace detail {

inline unsigned long long mulmod_u64(unsigned long long a, unsigned long long b,
                                     unsigned long long m) {
  return static_cast<unsigned long long>(
      static_cast<unsigned __int128>(a) * b % m);
}

inline unsigned long long powmod_u64(unsigned long long base,
                                     unsigned long long e,
                                     unsigned long long m) {
  unsigned long long acc = 1 % m;
  base %= m;
  while (e) {
    if (e & 1ull) acc = mulmod_u64(acc, base, m);
    base = mulmod_u64(base, base, m);
    e >>= 1ull;
  }
  return acc;
}

// order of l in (Z/2^k)^x modulo {+-1}; always a power of two for k >= 3
inline unsigned long long pm_order(unsigned long long l, unsigned k) {
  unsigned long long mod = 1ull << k;
  unsigned long long x = l % mod;
  unsigned long long ord = 1;
  while (x != 1 && x != mod - 1) {
    x = mulmod_u64(x, x, mod);
    ord *= 2;
  }
  return ord;
}

}  // namespace detail

/// Primes of each layer of the cyclotomic Z_2-tower of Q above an odd prime.
struct SplittingProfile {
  long long ell = 0;
  std::vector<unsigned long long> counts;         // counts[n] = primes at level n
  std::vector<unsigned long long> residue_orders; // orders in (Z/2^{n+2})^x / {+-1}
  unsigned stable_from = 0;      // level from which the count is constant
  bool stabilized = false;       // certified: count can no longer grow
  unsigned long long stable_count = 0;
};

/// Decomposition of an odd prime along the tower B_n (level n has degree 2^n):
/// the number of primes at level n is 2^n divided by the order of ell in
/// (Z/2^{n+2})^x modulo {+-1}.
inline SplittingProfile splitting_profile(long long ell, unsigned n_max) {
  if (ell < 3 || ell % 2 == 0)
    throw DomainError("splitting_profile: requires an odd prime > 2");
  if (n_max > kSplitLevelCap)
    throw ResourceError("splitting_profile: level over cap");
  SplittingProfile prof;
  prof.ell = ell;
  for (unsigned n = 0; n <= n_max; ++n) {
    unsigned long long ord =
        detail::pm_order(static_cast<unsigned long long>(ell), n + 2);
    prof.residue_orders.push_back(ord);
    prof.counts.push_back((1ull << n) / ord);
  }
  // Certified stabilization: once l^{o_n} is not +-1 modulo 2^{n+3}, the
  // order doubles at every later level and the count freezes.
  for (unsigned n = 0; n <= n_max; ++n) {
    unsigned long long mod = 1ull << (n + 3);
    unsigned long long v = detail::powmod_u64(
        static_cast<unsigned long long>(ell), prof.residue_orders[n], mod);
    if (v != 1 && v != mod - 1) {
      prof.stabilized = true;
      prof.stable_from = n;
      prof.stable_count = prof.counts[n];
      break;
    }
  }
  return prof;
}

/// Stable prime count above ell in the full tower (the closed form from
/// two_power_split_count, certified by the profile when they must agree).
inline unsigned long long tower_prime_count(long long ell) {
  SplittingProfile prof = splitting_profile(ell, kSplitLevelCap);
  if (!prof.stabilized)
    throw NoStabilization("tower_prime_count: no certificate up to level cap");
  return prof.stable_count;
}

/// 2-part of the local residue units at level n, as cyclic 2-power exponents.
struct ResidueUnitTwoPart {
  long long q = 0;
  unsigned level = 0;
  unsigned long long primes_below = 0;   // primes of B_n above q
  unsigned long long residue_degree = 0; // of q in B_n
  std::vector<unsigned> exponents;       // one entry per prime of k_n above q
};

namespace detail {

// v_2(q^f - 1) for odd q and a power-of-two f, by the lifting rule:
// f even gives v_2(q^2 - 1) + v_2(f) - 1.
inline unsigned v2_pow_minus_one(long long q, unsigned long long f) {
  auto v2 = [](unsigned long long x) {
    unsigned v = 0;
    while (x % 2 == 0) {
      x /= 2;
      ++v;
    }
    return v;
  };
  if (f % 2 == 1)
    return v2(static_cast<unsigned long long>(q - 1));
  unsigned long long q2 = static_cast<unsigned long long>(q) *
                          static_cast<unsigned long long>(q);
  return v2(q2 - 1) + v2(f) - 1;
}

}  // namespace detail

/// 2-part of (O/q)^x summed over the primes of k_n above q, where k_n is the
/// level-n layer of the tower over Q (D = 0) or over Q(sqrt(D)).
inline ResidueUnitTwoPart residue_unit_two_part(long long q, unsigned n,
                                                long long D = 0) {
  if (q < 3 || q % 2 == 0)
    throw DomainError("residue_unit_two_part: requires an odd prime > 2");
  if (n > kSplitLevelCap)
    throw ResourceError("residue_unit_two_part: level over cap");
  if (D != 0 && D % q == 0)
    throw DomainError("residue_unit_two_part: q ramified in the base field");
  SplittingProfile prof = splitting_profile(q, n);
  ResidueUnitTwoPart out;
  out.q = q;
  out.level = n;
  out.primes_below = prof.counts[n];
  out.residue_degree = prof.residue_orders[n];
  const unsigned long long f = out.residue_degree;
  for (unsigned long long i = 0; i < out.primes_below; ++i) {
    if (D == 0) {
      out.exponents.push_back(detail::v2_pow_minus_one(q, f));
    } else {
      bool splits = (f % 2 == 0) || kronecker(D, q) == 1;
      if (splits) {
        unsigned e = detail::v2_pow_minus_one(q, f);
        out.exponents.push_back(e);
        out.exponents.push_back(e);
      } else {
        out.exponents.push_back(detail::v2_pow_minus_one(q, 2 * f));
      }
    }
  }
  return out;
}

/// Scenario tag for the closed-form rank of the S-ramified module.
enum class XsScenario { CaseAOddP, PropQ, PropImag };

struct XsRankReport {
  XsScenario scenario{};
  unsigned rank = 0;
  std::vector<AssertedInput> hypotheses_checked;
  std::string detail;
};

/// Rank of X_S in the three closed-form situations.
/// - odd p, with r ramified primes = 1 mod p but not 1 mod p^2: rank r - 1;
/// - p = 2 with two primes q1, q2 = 7 mod 8 sharing the same tower prime
///   count r: rank r;
/// - p = 2 over an imaginary quadratic field Q(sqrt(-m)) with an auxiliary
///   q = 3 mod 8: rank lambda0 + 1 where lambda0 is the base lambda.
inline XsRankReport xs_rank_case_a(long long p,
                                   const std::vector<long long>& primes) {
  if (p < 3 || p % 2 == 0)
    throw DomainError("xs_rank_case_a: requires odd p");
  XsRankReport rep;
  rep.scenario = XsScenario::CaseAOddP;
  for (long long l : primes) {
    if (l % p != 1)
      throw HypothesisNotMet("xs_rank_case_a: prime not 1 mod p");
    if ((l - 1) % (p * p) == 0)
      throw HypothesisNotMet("xs_rank_case_a: prime is 1 mod p^2");
    rep.hypotheses_checked.push_back(
        {std::to_string(l) + " = 1 mod " + std::to_string(p) +
             " and not 1 mod p^2",
         "computed"});
  }
  if (primes.empty()) throw DomainError("xs_rank_case_a: no primes given");
  rep.rank = static_cast<unsigned>(primes.size()) - 1;
  rep.detail = "rank = r - 1 over the number of ramified primes";
  return rep;
}

inline XsRankReport xs_rank_prop_q(long long q1, long long q2) {
  if (q1 % 8 != 7 || q2 % 8 != 7)
    throw HypothesisNotMet("xs_rank_prop_q: both primes must be 7 mod 8");
  unsigned long long r1 = tower_prime_count(q1);
  unsigned long long r2 = tower_prime_count(q2);
  if (r1 != r2)
    throw HypothesisNotMet("xs_rank_prop_q: tower prime counts differ");
  XsRankReport rep;
  rep.scenario = XsScenario::PropQ;
  rep.rank = static_cast<unsigned>(r1);
  rep.hypotheses_checked.push_back(
      {"tower prime counts above " + std::to_string(q1) + " and " +
           std::to_string(q2) + " both equal " + std::to_string(r1),
       "computed"});
  rep.detail = "rank = shared tower prime count";
  return rep;
}

inline XsRankReport xs_rank_prop_imag(long long m, long long q) {
  if (m % 2 == 0 || !is_squarefree(m))
    throw DomainError("xs_rank_prop_imag: m must be odd squarefree");
  if (q % 8 != 3)
    throw HypothesisNotMet("xs_rank_prop_imag: requires q = 3 mod 8");
  if (m % q == 0)
    throw HypothesisNotMet("xs_rank_prop_imag: q must not divide m");
  unsigned lambda0 = ferrero_kida_lambda(FundamentalDiscriminant(-m));
  if (lambda0 < 1)
    throw HypothesisNotMet("xs_rank_prop_imag: base lambda must be positive");
  XsRankReport rep;
  rep.scenario = XsScenario::PropImag;
  rep.rank = lambda0 + 1;
  rep.hypotheses_checked.push_back(
      {"base lambda over Q(sqrt(-" + std::to_string(m) + ")) equals " +
           std::to_string(lambda0),
       "computed"});
  rep.detail = "rank = base lambda + 1";
  return rep;
}

/// Hypothesis ledger for one tamely ramified configuration at an odd prime p.
struct SRamReport {
  char variant = '?';  // 'a', 'b', or 'c'
  long long p = 0;
  std::vector<long long> primes;
  std::optional<long long> base_D;
  std::vector<AssertedInput> hypotheses_checked;
  bool trivial_module = false;  // case c: all invariants vanish
  std::optional<unsigned> lambda1, mu1, lambda2, nu;
  std::string detail;
};

/// Tame ramification checks over Q or a quadratic base at an odd prime p:
/// (a) every q = 1 mod p but not 1 mod p^2;
/// (b) additionally q splits in the quadratic base (p non-split there, class
///     number prime to p);
/// (c) q = -1 mod p, q^2 not 1 mod p^2, q inert in the base — the unramified
///     module upstairs is trivial and all four invariants vanish.
inline SRamReport check_ex_s_ram(char variant, long long p,
                                 const std::vector<long long>& primes,
                                 std::optional<long long> base_D = std::nullopt) {
  if (p < 3 || p % 2 == 0)
    throw DomainError("check_ex_s_ram: requires odd p");
  if (primes.empty()) throw DomainError("check_ex_s_ram: no primes given");
  SRamReport rep;
  rep.variant = variant;
  rep.p = p;
  rep.primes = primes;
  rep.base_D = base_D;
  auto note = [&rep](std::string fact) {
    rep.hypotheses_checked.push_back({std::move(fact), "computed"});
  };
  auto base_field_checks = [&] {
    if (!base_D) throw DomainError("check_ex_s_ram: this case needs a base field");
    FundamentalDiscriminant disc(*base_D);
    if (kronecker(disc.D, p) == 1)
      throw HypothesisNotMet("check_ex_s_ram: p splits in the base field");
    note("p = " + std::to_string(p) + " does not split in the quadratic base");
    FormClassGroup cg = class_group(disc);
    if (cg.class_number % static_cast<unsigned long long>(p) == 0)
      throw HypothesisNotMet("check_ex_s_ram: class number divisible by p");
    note("class number " + std::to_string(cg.class_number) + " is prime to p");
  };
  if (variant == 'a' || variant == 'b') {
    for (long long q : primes) {
      if (q % p != 1)
        throw HypothesisNotMet("check_ex_s_ram: prime not 1 mod p");
      if ((q - 1) % (p * p) == 0)
        throw HypothesisNotMet("check_ex_s_ram: prime is 1 mod p^2");
      note(std::to_string(q) + " = 1 mod " + std::to_string(p) +
           " and not 1 mod p^2");
    }
    if (variant == 'b') {
      base_field_checks();
      for (long long q : primes) {
        if (kronecker(*base_D, q) != 1)
          throw HypothesisNotMet("check_ex_s_ram: prime does not split in base");
        note(std::to_string(q) + " splits in the quadratic base");
      }
    }
    rep.trivial_module = false;
    rep.detail = "unramified module upstairs is nontrivial";
  } else if (variant == 'c') {
    base_field_checks();
    for (long long q : primes) {
      if ((q + 1) % p != 0)
        throw HypothesisNotMet("check_ex_s_ram: prime not -1 mod p");
      note(std::to_string(q) + " = -1 mod " + std::to_string(p));
      if ((q * q - 1) % (p * p) == 0)
        throw HypothesisNotMet("check_ex_s_ram: q^2 is 1 mod p^2");
      note(std::to_string(q) + "^2 not 1 mod " + std::to_string(p) + "^2");
      if (kronecker(*base_D, q) != -1)
        throw HypothesisNotMet("check_ex_s_ram: prime not inert in base");
      note(std::to_string(q) + " inert in the quadratic base");
    }
    rep.trivial_module = true;
    rep.lambda1 = rep.mu1 = rep.lambda2 = rep.nu = 0;
    rep.detail = "unramified module upstairs is trivial";
  } else {
    throw DomainError("check_ex_s_ram: variant must be a, b, or c");
  }
  return rep;
}

/// Conditional conclusion set for a pro-cyclic semidirect configuration:
/// needs the tame case-(a) hypotheses plus an externally asserted theorem.
struct ExMoReport {
  SRamReport base_checks;
  bool applicable = false;
  bool conditional = true;
  bool unverified = false;  // assertion neither affirmed nor denied
  std::optional<unsigned> lambda1, mu1, lambda2;
  bool nu_positive = false;
  std::vector<AssertedInput> asserted;
};

inline ExMoReport check_ex_mo(long long p, const std::vector<long long>& primes,
                              std::optional<bool> theorem_asserted) {
  ExMoReport rep;
  rep.base_checks = check_ex_s_ram('a', p, primes);
  if (!theorem_asserted) {
    rep.unverified = true;
    return rep;
  }
  if (!*theorem_asserted) {
    rep.applicable = false;
    return rep;
  }
  rep.applicable = true;
  rep.conditional = true;
  rep.lambda1 = rep.mu1 = rep.lambda2 = 0;
  rep.nu_positive = true;
  rep.asserted.push_back(
      {"the Galois group upstairs is a semidirect product of a finite cyclic "
       "p-group by Z_p",
       "Mouhib-Movahhedi"});
  return rep;
}

}  // namespace iwalab
