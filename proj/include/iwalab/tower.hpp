#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "iwalab/growth.hpp"

namespace iwalab {

/// One summand of the unramified module upstairs: X-component Lambda/(h)
/// with h = alpha * beta, ramification-submodule component
/// alpha * Lambda/(h) = Lambda/(beta). alpha is distinguished or 1; beta is
/// either a distinguished polynomial or a p-power.
struct TowerComponent {
  LambdaPoly alpha;  // distinguished of degree >= 1, or the constant 1
  bool beta_is_p_power = false;
  unsigned beta_exponent = 0;  // when beta is p^a
  LambdaPoly beta_poly;        // when beta is distinguished
};

/// Per-level data of the synthetic tower.
struct LevelData {
  unsigned level = 0;
  long long torsion_exponent = 0;  // log_p |C_m|
  long long zp_rank = 0;
};

/// The invariants governing the two-variable growth formula.
struct TowerInvariants {
  unsigned lambda1 = 0;
  unsigned mu1 = 0;
  long long nu1 = 0;
  unsigned lambda2 = 0;
  unsigned m0 = 0;
  long long nu = 0;     // two-variable constant (filled by verify_theorem1)
  unsigned n0 = 0;      // Gamma-direction threshold (filled by verify_theorem1)
};

struct CertRow {
  unsigned m = 0;
  unsigned N = 0;
  long long exponent = 0;
  long long predicted = 0;
};

struct CertifiedInvariants {
  TowerInvariants invariants;
  std::vector<CertRow> table;
};

/// Synthetic model of the unramified Iwasawa module of a two-tiered tower:
/// H-direction components with a ramification submodule, a Gamma-direction
/// module W with submodule scaling delta, total-ramification level e1 and
/// Gamma base level e3. Free Lambda summands (r_free) exist only for
/// negative testing of the torsion criterion.
class TowerModel {
 public:
  TowerModel(unsigned p, unsigned N, unsigned e1, unsigned e3,
             std::vector<TowerComponent> components, unsigned r_free,
             ElemTorsionModule gamma_module, LambdaPoly delta)
      : p_(p),
        N_(N),
        e1_(e1),
        e3_(e3),
        components_(std::move(components)),
        r_free_(r_free),
        gamma_module_(std::move(gamma_module)),
        delta_(std::move(delta)) {
    unsigned lambda2 = 0;
    for (const auto& c : components_) {
      if (c.alpha.prime() != p || c.alpha.precision() != N)
        throw ConfigError("TowerModel: alpha context mismatch");
      const bool alpha_is_one = c.alpha.degree() == 0 && c.alpha.is_monic();
      if (!alpha_is_one && !(c.alpha.is_distinguished() && c.alpha.degree() >= 1))
        throw DomainError("TowerModel: alpha must be distinguished or 1");
      lambda2 += static_cast<unsigned>(c.alpha.degree());
      if (c.beta_is_p_power) {
        if (c.beta_exponent == 0)
          throw DomainError("TowerModel: p-power beta needs exponent >= 1");
      } else {
        if (!c.beta_poly.is_distinguished() || c.beta_poly.degree() < 1)
          throw DomainError("TowerModel: beta must be distinguished or a p-power");
      }
    }
    if (gamma_module_.variable() != Variable::Gamma)
      throw ConfigError("TowerModel: gamma module must live in the Gamma variable");
    auto [wl, wm] = lambda_mu(gamma_module_);
    if (wm != 0)
      throw DomainError("TowerModel: Gamma-direction module must have mu = 0");
    if (wl != lambda2)
      throw DomainError(
          "TowerModel: lambda of the Gamma module must equal sum of alpha degrees");
    const bool delta_is_one = delta_.degree() == 0 && delta_.is_monic();
    if (!delta_is_one && !delta_.is_distinguished())
      throw DomainError("TowerModel: delta must be distinguished or 1");
  }

  unsigned prime() const { return p_; }
  unsigned precision() const { return N_; }
  unsigned e1() const { return e1_; }
  unsigned e3() const { return e3_; }
  unsigned r_free() const { return r_free_; }
  const std::vector<TowerComponent>& components() const { return components_; }
  const ElemTorsionModule& gamma_module() const { return gamma_module_; }
  const LambdaPoly& delta() const { return delta_; }

  unsigned lambda2() const {
    unsigned v = 0;
    for (const auto& c : components_) v += static_cast<unsigned>(c.alpha.degree());
    return v;
  }

  /// The ramification submodule as an elementary module: direct sum of
  /// Lambda/(beta_i).
  ElemTorsionModule beta_module() const {
    std::vector<unsigned> mus;
    std::vector<LambdaPoly> fs;
    for (const auto& c : components_) {
      if (c.beta_is_p_power)
        mus.push_back(c.beta_exponent);
      else
        fs.push_back(c.beta_poly);
    }
    return ElemTorsionModule(p_, N_, std::move(mus), std::move(fs), Variable::H);
  }

  /// (lambda, mu) of the torsion part of the full module, read off the
  /// Weierstrass data of each expanded product h_i = alpha_i * beta_i.
  std::pair<unsigned, unsigned> full_lambda_mu() const {
    unsigned lambda = 0, mu = 0;
    for (const auto& c : components_) {
      LambdaPoly h = c.beta_is_p_power
                         ? c.alpha * LambdaPoly::constant(
                                         p_, N_, pow_big(p_, c.beta_exponent))
                         : c.alpha * c.beta_poly;
      auto w = weierstrass_prepare(h);
      lambda += static_cast<unsigned>(w.distinguished_part.degree());
      mu += w.mu_part;
    }
    return {lambda, mu};
  }

 private:
  unsigned p_;
  unsigned N_;
  unsigned e1_;
  unsigned e3_;
  std::vector<TowerComponent> components_;
  unsigned r_free_;
  ElemTorsionModule gamma_module_;
  LambdaPoly delta_;
};

/// Torsion size and Z_p-rank at level m >= e1: the torsion is the
/// ramification submodule modulo nu_{m,e1}.
inline LevelData derive_level(const TowerModel& model, unsigned m) {
  if (m < model.e1()) throw DomainError("derive_level: m < e1");
  LevelData out;
  out.level = m;
  LambdaPoly g = nu_or_one(model.prime(), model.precision(), m, model.e1());
  out.torsion_exponent = quotient_order(model.beta_module(), g);
  out.zp_rank = static_cast<long long>(model.lambda2()) +
                static_cast<long long>(model.r_free()) *
                    (pow_ll(model.prime(), m) - pow_ll(model.prime(), model.e1()));
  return out;
}

/// Largest H-direction level the degree cap allows.
inline unsigned level_cap(unsigned p) {
  unsigned m = 0;
  while (pow_big(p, m + 1) <= kDegreeCap) ++m;
  return m;
}

/// H-direction invariants: structural lambda1/mu1/lambda2, with nu1 and the
/// stabilization level m0 discovered by scanning derive_level. Requires the
/// torsion condition (r_free = 0).
inline TowerInvariants h_invariants(const TowerModel& model,
                                    unsigned m_scan = 0) {
  if (model.r_free() > 0)
    throw ConditionTViolated("h_invariants: model has free summands");
  const unsigned p = model.prime();
  if (m_scan == 0) m_scan = std::min(level_cap(p), model.e1() + 6);

  TowerInvariants inv;
  for (const auto& c : model.components()) {
    if (c.beta_is_p_power)
      inv.mu1 += c.beta_exponent;
    else
      inv.lambda1 += static_cast<unsigned>(c.beta_poly.degree());
  }
  inv.lambda2 = model.lambda2();

  auto [full_l, full_m] = model.full_lambda_mu();
  if (inv.lambda1 + inv.lambda2 != full_l || inv.mu1 != full_m)
    throw StructuralError("h_invariants: invariant sums disagree with Weierstrass data");

  // Scan the torsion exponents and find where lambda1*m + mu1*p^m + nu1
  // holds onward.
  std::vector<long long> resid;
  for (unsigned m = model.e1(); m <= m_scan; ++m) {
    long long c = derive_level(model, m).torsion_exponent;
    resid.push_back(c - static_cast<long long>(inv.lambda1) * m -
                    static_cast<long long>(inv.mu1) * pow_ll(p, m));
  }
  std::size_t first_good = resid.size();
  for (std::size_t i = resid.size(); i-- > 0;) {
    if (resid[i] != resid.back()) break;
    first_good = i;
  }
  if (first_good + 1 >= resid.size())
    throw NoStabilization("h_invariants: torsion exponents did not stabilize in window");
  inv.nu1 = resid.back();
  inv.m0 = std::max(model.e1(), model.e1() + static_cast<unsigned>(first_good));
  return inv;
}

/// delta * nu_N in the Gamma direction (nu_0 is the unit 1).
inline LambdaPoly gamma_scaling(const TowerModel& model, unsigned N) {
  LambdaPoly nuN =
      nu_or_one(model.prime(), model.precision(), N, 0, Variable::Gamma);
  LambdaPoly delta = model.delta();
  if (delta.degree() == 0) return nuN;
  // delta lives in the Gamma variable by construction of the model.
  LambdaPoly d(model.prime(), model.precision(), delta.coeffs(), Variable::Gamma);
  return d * nuN;
}

/// Exponent of |X(F_m k_{e3+N})|: level-m torsion plus the m-independent
/// Gamma-direction factor |W / delta*nu_N W|.
inline long long gamma_level_order(const TowerModel& model, unsigned m,
                                   unsigned N) {
  TowerInvariants inv = h_invariants(model);
  if (m < inv.m0) throw DomainError("gamma_level_order: m below m0");
  long long torsion = derive_level(model, m).torsion_exponent;
  long long gamma_part = quotient_order(model.gamma_module(), gamma_scaling(model, N));
  return torsion + gamma_part;
}

/// Certify |X(F_m k_{e3+N})| = p^{lambda1*m + mu1*p^m + lambda2*(e3+N) + nu}
/// on the whole window [m0, m1] x [n0, N_max], discovering nu and n0. nu is
/// computed a second way as nu' - nu'' + nu1 (level-m0 Gamma intercept minus
/// level-m0 torsion plus the torsion constant); the two routes must agree.
inline CertifiedInvariants verify_theorem1(const TowerModel& model, unsigned m1,
                                           unsigned N_max) {
  TowerInvariants inv = h_invariants(model);
  const unsigned p = model.prime();
  if (model.r_free() > 0)
    throw ConditionTViolated("verify_theorem1: model has free summands");
  if (m1 <= inv.m0) throw DomainError("verify_theorem1: need m1 > m0");
  if (m1 > level_cap(p)) throw ResourceError("verify_theorem1: m1 exceeds degree cap");

  // Torsion exponents per level and the shared Gamma-direction factors.
  std::vector<long long> torsion(m1 + 1, 0);
  for (unsigned m = inv.m0; m <= m1; ++m)
    torsion[m] = derive_level(model, m).torsion_exponent;
  std::vector<long long> gpart(N_max + 1, 0);
  for (unsigned N = 0; N <= N_max; ++N)
    gpart[N] = quotient_order(model.gamma_module(), gamma_scaling(model, N));

  auto predicted = [&](unsigned m, unsigned N, long long nu_c) {
    return static_cast<long long>(inv.lambda1) * m +
           static_cast<long long>(inv.mu1) * pow_ll(p, m) +
           static_cast<long long>(inv.lambda2) * (model.e3() + N) + nu_c;
  };

  // nu from the far corner; n0 = least N from which every row agrees.
  const long long corner = torsion[m1] + gpart[N_max];
  const long long nu_fit = corner - predicted(m1, N_max, 0);
  std::optional<unsigned> n0;
  for (unsigned N = N_max + 1; N-- > 0;) {
    bool all = true;
    for (unsigned m = inv.m0; m <= m1 && all; ++m)
      all = torsion[m] + gpart[N] == predicted(m, N, nu_fit);
    if (all)
      n0 = N;
    else
      break;
  }
  if (!n0)
    throw NoStabilization("verify_theorem1: formula fails at the far corner — counterexample: m=" +
                          std::to_string(m1) + " N=" + std::to_string(N_max));

  // Independent decomposition nu = nu' - nu'' + nu1.
  const long long nu_pp = torsion[inv.m0];
  const long long nu_p = torsion[inv.m0] + gpart[N_max] -
                         static_cast<long long>(inv.lambda2) * (model.e3() + N_max);
  if (nu_p - nu_pp + inv.nu1 != nu_fit)
    throw StructuralError("verify_theorem1: nu decomposition disagrees with direct fit");

  CertifiedInvariants out;
  out.invariants = inv;
  out.invariants.nu = nu_fit;
  out.invariants.n0 = *n0;
  for (unsigned m = inv.m0; m <= m1; ++m)
    for (unsigned N = *n0; N <= N_max; ++N) {
      CertRow row;
      row.m = m;
      row.N = N;
      row.exponent = torsion[m] + gpart[N];
      row.predicted = predicted(m, N, nu_fit);
      if (row.exponent != row.predicted)
        throw StructuralError("verify_theorem1: certification row mismatch at m=" +
                              std::to_string(m) + " N=" + std::to_string(N));
      out.table.push_back(row);
    }
  return out;
}

struct LemmaBResult {
  bool satisfied = false;
  long long lhs = 0;
  long long rhs = 0;
};

/// Rank criterion for the torsion condition: rank X(K_m) - rank X(k_inf)
/// must stay below p^m - 1.
inline LemmaBResult lemma_b_check(const TowerModel& model, unsigned m,
                                  unsigned rank_k_inf) {
  if (m < 1) throw DomainError("lemma_b_check: requires m >= 1");
  if (rank_k_inf != model.lambda2())
    throw DomainError("lemma_b_check: rank_k_inf must equal sum of alpha degrees");
  LemmaBResult r;
  r.lhs = static_cast<long long>(model.r_free()) *
          (pow_ll(model.prime(), m) - pow_ll(model.prime(), model.e1()));
  r.rhs = pow_ll(model.prime(), m) - 1;
  r.satisfied = r.lhs < r.rhs;
  return r;
}

struct LowerBoundResult {
  long long bound = 0;
  bool holds = false;
  long long rank_c = 0;  // diagnostic: lambda1 + lambda2 - d + 1
  long long rank_f = 0;  // diagnostic: d - 1
};

/// lambda1 >= d - 1 - rank X(k_inf) for a torsion model totally ramified
/// from level zero.
inline LowerBoundResult lower_bound_check(const TowerModel& model, unsigned d,
                                          unsigned rank_k_inf) {
  if (d < 1) throw DomainError("lower_bound_check: requires d >= 1");
  if (model.r_free() > 0)
    throw ConditionTViolated("lower_bound_check: model has free summands");
  if (model.e1() != 0)
    throw DomainError("lower_bound_check: requires total ramification from level 0");
  TowerInvariants inv = h_invariants(model);
  LowerBoundResult r;
  r.bound = static_cast<long long>(d) - 1 - static_cast<long long>(rank_k_inf);
  r.holds = static_cast<long long>(inv.lambda1) >= r.bound;
  r.rank_c = static_cast<long long>(inv.lambda1) + inv.lambda2 - d + 1;
  r.rank_f = static_cast<long long>(d) - 1;
  return r;
}

/// Bounds for the deterministic model generator.
struct ModelBounds {
  unsigned p = 2;
  unsigned N = kDefaultPrecision;
  unsigned max_components = 3;
  unsigned max_alpha_deg = 2;
  unsigned max_beta_deg = 3;
  unsigned max_mu = 2;
  unsigned e1_max = 1;
  unsigned e3_max = 1;
  unsigned r_free = 0;
};

namespace detail {

inline unsigned rand_below(std::mt19937_64& rng, unsigned n) {
  return n == 0 ? 0 : static_cast<unsigned>(rng() % n);
}

/// Random distinguished polynomial of the given degree, coprime to every
/// cyclotomic element up to the degree cap window (rejection sampled).
inline LambdaPoly random_distinguished(std::mt19937_64& rng, unsigned p,
                                       unsigned N, unsigned deg, Variable var) {
  const unsigned cap = level_cap(p);
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::vector<PadicInt> cs;
    for (unsigned i = 0; i < deg; ++i) {
      BigInt c = BigInt(p) * rand_below(rng, pow_ll(p, 3));
      cs.emplace_back(p, N, c);
    }
    cs.emplace_back(p, N, 1);
    LambdaPoly f(p, N, std::move(cs), var);
    if (resultant_valuation(f, omega(p, N, cap, var)) != kValInfinity) return f;
  }
  throw StructuralError("random_distinguished: rejection sampling failed");
}

}  // namespace detail

/// Deterministic model generator: same seed, same model. Every draw passes
/// construction invariants and has components coprime to the cyclotomic
/// window, so all (T)-dependent scans are defined.
inline TowerModel random_model(unsigned long long seed,
                               const ModelBounds& bounds) {
  std::mt19937_64 rng(seed);
  const unsigned p = bounds.p, N = bounds.N;
  const unsigned n_comp =
      bounds.max_components == 0 ? 0 : detail::rand_below(rng, bounds.max_components + 1);

  std::vector<TowerComponent> comps;
  unsigned lambda2 = 0;
  for (unsigned i = 0; i < n_comp; ++i) {
    TowerComponent c;
    unsigned ad = detail::rand_below(rng, bounds.max_alpha_deg + 1);
    c.alpha = ad == 0 ? LambdaPoly::one(p, N)
                      : detail::random_distinguished(rng, p, N, ad, Variable::H);
    lambda2 += ad;
    if (bounds.max_mu > 0 && rng() % 3 == 0) {
      c.beta_is_p_power = true;
      c.beta_exponent = 1 + detail::rand_below(rng, bounds.max_mu);
    } else {
      unsigned bd = 1 + detail::rand_below(rng, bounds.max_beta_deg);
      c.beta_poly = detail::random_distinguished(rng, p, N, bd, Variable::H);
    }
    comps.push_back(std::move(c));
  }

  // Gamma-direction module with total degree lambda2 and mu = 0.
  std::vector<LambdaPoly> wcomps;
  unsigned left = lambda2;
  while (left > 0) {
    unsigned d = 1 + detail::rand_below(rng, left);
    wcomps.push_back(detail::random_distinguished(rng, p, N, d, Variable::Gamma));
    left -= d;
  }
  ElemTorsionModule w(p, N, {}, std::move(wcomps), Variable::Gamma);

  LambdaPoly delta = LambdaPoly::one(p, N, Variable::Gamma);
  if (rng() % 2 == 0 && !w.is_trivial()) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      LambdaPoly cand = detail::random_distinguished(
          rng, p, N, 1 + detail::rand_below(rng, 2), Variable::Gamma);
      bool coprime = true;
      for (const auto& f : w.lambda_components())
        coprime = coprime && resultant_valuation(f, cand) != kValInfinity;
      if (coprime) {
        delta = cand;
        break;
      }
    }
  }

  unsigned e1 = detail::rand_below(rng, bounds.e1_max + 1);
  unsigned e3 = detail::rand_below(rng, bounds.e3_max + 1);
  return TowerModel(p, N, e1, e3, std::move(comps), bounds.r_free, std::move(w),
                    std::move(delta));
}

}  // namespace iwalab
