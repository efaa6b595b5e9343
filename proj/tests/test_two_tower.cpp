#include <doctest.h>

#include "iwalab/two_tower.hpp"
#include "oracles.hpp"

using namespace iwalab;

TEST_CASE("splitting profiles of small primes") {
  SplittingProfile p3 = splitting_profile(3, 8);
  for (unsigned long long c : p3.counts) CHECK(c == 1);
  CHECK(p3.stabilized);
  CHECK(p3.stable_count == 1);

  SplittingProfile p7 = splitting_profile(7, 8);
  CHECK(p7.counts[0] == 1);
  CHECK(p7.counts[1] == 2);
  CHECK(p7.counts[8] == 2);
  CHECK(p7.stabilized);
  CHECK(p7.stable_count == 2);

  SplittingProfile p31 = splitting_profile(31, 10);
  CHECK(p31.counts[3] == 8);
  CHECK(p31.counts[10] == 8);
  CHECK(p31.stable_count == 8);

  CHECK_THROWS_AS(splitting_profile(2, 4), DomainError);
  CHECK_THROWS_AS(splitting_profile(7, kSplitLevelCap + 1), ResourceError);
}

TEST_CASE("residue orders match a linear-search oracle") {
  for (long long ell = 3; ell < 500; ell += 2) {
    SplittingProfile prof = splitting_profile(ell, 8);
    for (unsigned n = 0; n <= 8; ++n)
      CHECK(prof.residue_orders[n] ==
            oracle::pm_order_linear(static_cast<unsigned long long>(ell), n + 2));
  }
}

TEST_CASE("stable counts agree with the closed form") {
  for (long long ell = 3; ell < 2000; ell += 2) {
    bool prime = true;
    for (long long d = 3; d * d <= ell; d += 2)
      if (ell % d == 0) prime = false;
    if (!prime) continue;
    CHECK(tower_prime_count(ell) == two_power_split_count(ell));
  }
  CHECK(tower_prime_count(223) == 8);
}

TEST_CASE("residue units over the rationals") {
  ResidueUnitTwoPart lvl0 = residue_unit_two_part(3, 0);
  CHECK(lvl0.primes_below == 1);
  CHECK(lvl0.residue_degree == 1);
  CHECK(lvl0.exponents == std::vector<unsigned>{1});  // v2(3 - 1)

  ResidueUnitTwoPart lvl1 = residue_unit_two_part(3, 1);
  CHECK(lvl1.primes_below == 1);
  CHECK(lvl1.residue_degree == 2);
  CHECK(lvl1.exponents == std::vector<unsigned>{3});  // v2(3^2 - 1)

  ResidueUnitTwoPart p7 = residue_unit_two_part(7, 3);
  CHECK(p7.primes_below == 2);
  // the lifting rule must match a direct big-integer valuation
  for (unsigned e : p7.exponents)
    CHECK(e == oracle::lifting_valuation(2, 7, static_cast<unsigned>(p7.residue_degree)));
}

TEST_CASE("residue units over a quadratic base") {
  // f even: each prime below splits into two conjugate places
  ResidueUnitTwoPart split = residue_unit_two_part(3, 1, -7);
  CHECK(split.exponents == std::vector<unsigned>{3, 3});

  // f odd and non-split: one place of doubled residue degree
  ResidueUnitTwoPart inert = residue_unit_two_part(3, 0, -4);
  CHECK(inert.exponents == std::vector<unsigned>{3});  // v2(3^2 - 1)

  // f odd and split in the base
  ResidueUnitTwoPart sp = residue_unit_two_part(5, 0, -4);
  CHECK(sp.exponents == std::vector<unsigned>{2, 2});  // v2(5 - 1) twice

  CHECK_THROWS_AS(residue_unit_two_part(7, 1, -7), DomainError);  // ramified
  CHECK_THROWS_AS(residue_unit_two_part(2, 1), DomainError);
}

TEST_CASE("closed-form ranks") {
  XsRankReport a = xs_rank_case_a(3, {7, 13});
  CHECK(a.rank == 1);
  CHECK(a.hypotheses_checked.size() == 2);
  CHECK(xs_rank_case_a(5, {11, 31, 41}).rank == 2);
  CHECK_THROWS_AS(xs_rank_case_a(3, {19}), HypothesisNotMet);   // 19 = 1 mod 9
  CHECK_THROWS_AS(xs_rank_case_a(3, {5}), HypothesisNotMet);    // 5 != 1 mod 3
  CHECK_THROWS_AS(xs_rank_case_a(2, {7}), DomainError);

  XsRankReport q = xs_rank_prop_q(31, 223);
  CHECK(q.rank == 8);
  CHECK_THROWS_AS(xs_rank_prop_q(7, 31), HypothesisNotMet);  // counts 2 vs 8
  CHECK_THROWS_AS(xs_rank_prop_q(5, 7), HypothesisNotMet);   // 5 != 7 mod 8

  XsRankReport im = xs_rank_prop_imag(1463, 3);
  CHECK(im.rank == 4);
  CHECK(xs_rank_prop_imag(7, 3).rank == 2);
  CHECK_THROWS_AS(xs_rank_prop_imag(11, 3), HypothesisNotMet);  // base lambda 0
  CHECK_THROWS_AS(xs_rank_prop_imag(1463, 7), HypothesisNotMet);
  CHECK_THROWS_AS(xs_rank_prop_imag(9, 3), DomainError);
}

TEST_CASE("tame ramification hypothesis ledgers") {
  SRamReport a = check_ex_s_ram('a', 3, {7, 13});
  CHECK_FALSE(a.trivial_module);
  CHECK(a.hypotheses_checked.size() == 2);
  CHECK_FALSE(a.lambda1.has_value());
  CHECK_THROWS_AS(check_ex_s_ram('a', 3, {19}), HypothesisNotMet);
  CHECK_THROWS_AS(check_ex_s_ram('a', 2, {7}), DomainError);
  CHECK_THROWS_AS(check_ex_s_ram('d', 3, {7}), DomainError);
  CHECK_THROWS_AS(check_ex_s_ram('a', 3, {}), DomainError);

  SRamReport b = check_ex_s_ram('b', 3, {13}, -4);
  CHECK_FALSE(b.trivial_module);
  CHECK(b.base_D == -4);
  CHECK_THROWS_AS(check_ex_s_ram('b', 3, {7}, -4), HypothesisNotMet);  // 7 inert
  CHECK_THROWS_AS(check_ex_s_ram('b', 3, {13}), DomainError);  // base missing

  SRamReport c = check_ex_s_ram('c', 3, {11}, -4);
  CHECK(c.trivial_module);
  CHECK(c.lambda1 == 0);
  CHECK(c.mu1 == 0);
  CHECK(c.lambda2 == 0);
  CHECK(c.nu == 0);
  CHECK_THROWS_AS(check_ex_s_ram('c', 3, {5}, -4), HypothesisNotMet);  // 5 splits
  CHECK_THROWS_AS(check_ex_s_ram('c', 3, {7}, -4), HypothesisNotMet);  // 7 = 1 mod 3
}

TEST_CASE("semidirect configuration with an external assertion") {
  ExMoReport yes = check_ex_mo(3, {7, 13}, true);
  CHECK(yes.applicable);
  CHECK(yes.conditional);
  CHECK(yes.lambda1 == 0);
  CHECK(yes.mu1 == 0);
  CHECK(yes.lambda2 == 0);
  CHECK(yes.nu_positive);
  CHECK_FALSE(yes.asserted.empty());

  ExMoReport no = check_ex_mo(3, {7, 13}, false);
  CHECK_FALSE(no.applicable);
  CHECK_FALSE(no.unverified);

  ExMoReport unknown = check_ex_mo(3, {7, 13}, std::nullopt);
  CHECK(unknown.unverified);
  CHECK_FALSE(unknown.applicable);

  CHECK_THROWS_AS(check_ex_mo(3, {19}, true), HypothesisNotMet);
}
