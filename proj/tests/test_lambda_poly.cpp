#include <doctest.h>

#include <random>

#include "iwalab/lambda_poly.hpp"
#include "oracles.hpp"

using namespace iwalab;

namespace {
LambdaPoly random_poly(std::mt19937_64& rng, unsigned p, unsigned N,
                       unsigned deg) {
  std::vector<PadicInt> cs;
  for (unsigned i = 0; i <= deg; ++i)
    cs.emplace_back(p, N, BigInt(rng() % 1000));
  cs.back() = PadicInt(p, N, BigInt(1 + rng() % (p - 1 ? p - 1 : 1)));
  return LambdaPoly(p, N, std::move(cs));
}
}  // namespace

TEST_CASE("omega small cases") {
  CHECK(omega(2, 32, 0).coeffs().size() == 2);
  CHECK(omega(2, 32, 0).coeff(1).residue() == 1);  // T
  LambdaPoly w1 = omega(2, 32, 1);                 // T^2 + 2T
  CHECK(w1.degree() == 2);
  CHECK(w1.coeff(0).residue() == 0);
  CHECK(w1.coeff(1).residue() == 2);
  CHECK(w1.coeff(2).residue() == 1);
  LambdaPoly v1 = omega(3, 32, 1);  // T^3 + 3T^2 + 3T
  CHECK(v1.degree() == 3);
  CHECK(v1.coeff(1).residue() == 3);
  CHECK(v1.coeff(2).residue() == 3);
  CHECK(omega(2, 32, 3).is_distinguished());
  CHECK(omega(3, 32, 2).degree() == 9);
}

TEST_CASE("degree cap") {
  CHECK_THROWS_AS(omega(2, 32, 13), ResourceError);  // 2^13 > 4096
  CHECK_NOTHROW(omega(2, 32, 12));
}

TEST_CASE("nu small cases and contract") {
  LambdaPoly n10 = nu(2, 32, 1, 0);  // T + 2
  CHECK(n10.degree() == 1);
  CHECK(n10.coeff(0).residue() == 2);
  LambdaPoly n10_3 = nu(3, 32, 1, 0);  // T^2 + 3T + 3
  CHECK(n10_3.coeff(0).residue() == 3);
  CHECK(n10_3.coeff(1).residue() == 3);
  CHECK(n10_3.coeff(2).residue() == 1);
  CHECK_THROWS_AS(nu(2, 32, 1, 1), DomainError);
  CHECK_THROWS_AS(nu(2, 32, 0, 1), DomainError);
  CHECK(nu_or_one(2, 32, 1, 1).degree() == 0);
}

TEST_CASE("nu constant term is p^(m-n)") {
  for (unsigned m = 1; m <= 5; ++m) {
    LambdaPoly v = nu(2, 64, m, 0);
    CHECK(v.is_distinguished());
    CHECK(v.degree() == (1 << m) - 1);
    CHECK(v.coeff(0).residue() == pow_big(2, m));
    CHECK(v.coeff(0).valuation() == m);
  }
  CHECK(nu(3, 64, 3, 1).coeff(0).residue() == 9);
}

TEST_CASE("nu * omega identity and telescoping") {
  for (unsigned p : {2u, 3u}) {
    unsigned m_max = p == 2 ? 5u : 4u;
    for (unsigned n = 0; n < m_max; ++n)
      for (unsigned m = n + 1; m <= m_max; ++m) {
        LambdaPoly lhs = nu(p, 64, m, n) * omega(p, 64, n);
        LambdaPoly rhs = omega(p, 64, m);
        CHECK(lhs.degree() == rhs.degree());
        for (int i = 0; i <= rhs.degree(); ++i)
          CHECK(lhs.coeff(i) == rhs.coeff(i));
      }
    // product of single steps
    LambdaPoly prod = LambdaPoly::one(p, 64);
    for (unsigned j = 0; j < 3; ++j) prod = prod * nu(p, 64, j + 1, j);
    LambdaPoly direct = nu(p, 64, 3, 0);
    CHECK(prod.degree() == direct.degree());
    for (int i = 0; i <= direct.degree(); ++i)
      CHECK(prod.coeff(i) == direct.coeff(i));
  }
}

TEST_CASE("division by monic is exact inverse of multiplication") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    unsigned p = t % 2 ? 3 : 2;
    LambdaPoly f = random_poly(rng, p, 32, 1 + rng() % 5);
    LambdaPoly g = random_poly(rng, p, 32, 1 + rng() % 4);
    // force g monic
    auto gc = g.coeffs();
    gc.back() = PadicInt::one(p, 32);
    g = LambdaPoly(p, 32, std::move(gc));
    auto [q, r] = f.divrem(g);
    LambdaPoly back = q * g + r;
    CHECK(back.degree() == f.degree());
    for (int i = 0; i <= f.degree(); ++i) CHECK(back.coeff(i) == f.coeff(i));
    CHECK(r.degree() < g.degree());
  }
}

TEST_CASE("evaluate is Horner") {
  LambdaPoly f = LambdaPoly::from_integers(2, 16, {5, 3, 1});  // 5 + 3T + T^2
  PadicInt x(2, 16, 6);
  CHECK(f.evaluate(x).residue() == (5 + 3 * 6 + 36) % (1 << 16));
}

TEST_CASE("normalization trims trailing zeros") {
  LambdaPoly f = LambdaPoly::from_integers(2, 8, {1, 2, 0, 0});
  CHECK(f.degree() == 1);
  CHECK(LambdaPoly::from_integers(2, 8, {0}).is_zero());
  CHECK(LambdaPoly::from_integers(2, 8, {0}).degree() == -1);
}
