#include <doctest.h>

#include <random>

#include "iwalab/torsion_module.hpp"
#include "oracles.hpp"

using namespace iwalab;

namespace {
ElemTorsionModule single_poly(unsigned p, unsigned N, const LambdaPoly& f) {
  return ElemTorsionModule(p, N, {}, {f}, Variable::H);
}
}  // namespace

TEST_CASE("lambda and mu sums") {
  LambdaPoly t = LambdaPoly::from_integers(2, 64, {0, 1});
  CHECK(lambda_mu(single_poly(2, 64, t)) == std::pair{1u, 0u});
  LambdaPoly f = LambdaPoly::from_integers(2, 64, {2, 2, 1});  // T^2+2T+2
  ElemTorsionModule m(2, 64, {1}, {f}, Variable::H);
  CHECK(lambda_mu(m) == std::pair{2u, 1u});
  ElemTorsionModule zero(2, 64, {}, {}, Variable::H);
  CHECK(lambda_mu(zero) == std::pair{0u, 0u});
}

TEST_CASE("validation") {
  LambdaPoly not_dist = LambdaPoly::from_integers(2, 64, {1, 1});
  CHECK_THROWS_AS(single_poly(2, 64, not_dist), DomainError);
  CHECK_THROWS_AS(ElemTorsionModule(2, 64, {0}, {}, Variable::H), DomainError);
}

TEST_CASE("quotient order examples") {
  LambdaPoly t = LambdaPoly::from_integers(2, 64, {0, 1});
  for (unsigned m = 1; m <= 5; ++m)
    CHECK(quotient_order(single_poly(2, 64, t), nu(2, 64, m, 0)) == m);

  // Lambda/(p^a) with distinguished g of degree d -> a*d
  ElemTorsionModule mu_only(2, 64, {3}, {}, Variable::H);
  LambdaPoly g = nu(2, 64, 2, 0);  // degree 3
  CHECK(quotient_order(mu_only, g) == 9);

  // p=2, Lambda/(T^2 - 2), g = T + 2: Res = (-2)^2 - 2 = 2
  LambdaPoly f = LambdaPoly::from_integers(2, 64, {-2, 0, 1});
  CHECK(quotient_order(single_poly(2, 64, f), nu(2, 64, 1, 0)) == 1);
}

TEST_CASE("non-coprime component is an infinite quotient") {
  LambdaPoly t = LambdaPoly::from_integers(2, 64, {0, 1});
  CHECK_THROWS_AS(quotient_order(single_poly(2, 64, t), omega(2, 64, 1)),
                  InfiniteQuotient);
  // mu component with a g that has positive mu part
  ElemTorsionModule mu_only(2, 64, {1}, {}, Variable::H);
  LambdaPoly g2 = LambdaPoly::from_integers(2, 64, {4, 2});  // 2(T+2)
  CHECK_THROWS_AS(quotient_order(mu_only, g2), InfiniteQuotient);
}

TEST_CASE("additivity over direct sums") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 25; ++t) {
    unsigned p = t % 2 ? 3 : 2;
    LambdaPoly f1 = LambdaPoly::from_integers(
        p, 64, {static_cast<long long>(p * (1 + rng() % 4)), 1});
    LambdaPoly f2 = LambdaPoly::from_integers(
        p, 64,
        {static_cast<long long>(p * (1 + rng() % 4)),
         static_cast<long long>(p * (rng() % 4)), 1});
    ElemTorsionModule m1 = single_poly(p, 64, f1);
    ElemTorsionModule m2(p, 64, {1 + static_cast<unsigned>(rng() % 2)}, {f2},
                         Variable::H);
    LambdaPoly g = nu(p, 64, 2, 0);
    long long a, b, ab;
    try {
      a = quotient_order(m1, g);
      b = quotient_order(m2, g);
      ab = quotient_order(direct_sum(m1, m2), g);
    } catch (const InfiniteQuotient&) {
      continue;  // f_i hit a cyclotomic factor of g
    }
    CHECK(ab == a + b);
  }
  // identity case
  ElemTorsionModule m = single_poly(2, 64, LambdaPoly::from_integers(2, 64, {2, 1}));
  ElemTorsionModule zero(2, 64, {}, {}, Variable::H);
  CHECK(lambda_mu(direct_sum(m, zero)) == lambda_mu(m));
}

TEST_CASE("quotient order matches integer Smith reduction") {
  // single components of degree <= 3 against nu-levels <= 3
  std::mt19937_64 rng(37);
  int done = 0;
  while (done < 50) {
    unsigned p = done % 2 ? 3 : 2;
    const unsigned N = 96;
    unsigned deg = 1 + rng() % 3;
    std::vector<long long> cs;
    for (unsigned i = 0; i < deg; ++i)
      cs.push_back(static_cast<long long>(p * (rng() % 9)));
    cs.push_back(1);
    LambdaPoly f = LambdaPoly::from_integers(p, N, cs);
    unsigned n = 1 + rng() % 3;
    LambdaPoly g = nu(p, N, n, 0);

    long long got;
    try {
      got = quotient_order(single_poly(p, N, f), g);
    } catch (const InfiniteQuotient&) {
      continue;
    }

    // Multiplication-by-g matrix on Z[T]/(f) in the basis 1..T^{deg-1},
    // with entries lifted to plain integers.
    std::vector<std::vector<BigInt>> mat(deg, std::vector<BigInt>(deg, 0));
    auto mul_by_t = [&](std::vector<BigInt> v) {
      std::vector<BigInt> w(deg, 0);
      BigInt top = v[deg - 1];
      for (unsigned i = deg - 1; i > 0; --i) w[i] = v[i - 1];
      for (unsigned i = 0; i < deg; ++i) w[i] -= top * cs[i];
      return w;
    };
    std::vector<std::vector<BigInt>> basis_images(deg);
    for (unsigned b = 0; b < deg; ++b) {
      // image of T^b under multiplication by g
      std::vector<BigInt> e(deg, 0);
      e[b] = 1;
      std::vector<BigInt> img(deg, 0), tp = e;
      auto gres = g.residues();
      for (std::size_t k = 0; k < gres.size(); ++k) {
        for (unsigned i = 0; i < deg; ++i) img[i] += gres[k] * tp[i];
        tp = mul_by_t(tp);
      }
      basis_images[b] = img;
    }
    for (unsigned i = 0; i < deg; ++i)
      for (unsigned b = 0; b < deg; ++b) mat[i][b] = basis_images[b][i];

    std::vector<BigInt> divisors = oracle::smith_divisors(mat);
    long long expect = 0;
    bool infinite = divisors.size() < deg;
    for (const BigInt& d : divisors)
      expect += oracle::valuation_or_max(d, p, 1u << 20);
    REQUIRE_FALSE(infinite);
    CHECK(got == expect);
    ++done;
  }
}
