#include <catch2/catch_amalgamated.hpp>

#include "pkl/fp.hpp"
#include "pkl/laurent.hpp"
#include "pkl/linalg.hpp"
#include "pkl/poly.hpp"
#include "pkl/ratfunc.hpp"

using namespace pkl;

TEST_CASE("prime field basics", "[core]") {
  u32 p = 5;
  REQUIRE(fp_add(3, 4, p) == 2);
  REQUIRE(fp_sub(1, 3, p) == 3);
  REQUIRE(fp_mul(3, 4, p) == 2);
  REQUIRE(fp_inv(2, p) == 3);
  REQUIRE(fp_norm(-7, p) == 3);
  for (u32 a = 1; a < p; ++a) REQUIRE(fp_mul(a, fp_inv(a, p), p) == 1);
}

TEST_CASE("extension fields", "[core]") {
  for (u32 p : {3u, 5u, 7u}) {
    for (int k : {1, 2, 4}) {
      Fq F(p, k);
      REQUIRE(F.irr[k] == 1);
      FqElt t = F.gen();
      // multiplicative order divides q-1
      REQUIRE(F.pow(t, F.order() - 1) == F.one());
      // Frobenius inverse really inverts
      Rng rng(42);
      for (int trial = 0; trial < 20; ++trial) {
        FqElt a = F.elt_at(rng.next() % F.order());
        REQUIRE(F.frobenius(F.frobenius_inv(a)) == a);
        FqElt b = F.elt_at(rng.next() % F.order());
        // distributivity sample
        REQUIRE(F.mul(F.add(a, b), t) == F.add(F.mul(a, t), F.mul(b, t)));
        if (!F.is_zero(a)) REQUIRE(F.mul(a, F.inv(a)) == F.one());
      }
    }
  }
}

TEST_CASE("laurent polynomials", "[core]") {
  LaurentInt v = LaurentInt::monomial(1, 1);
  LaurentInt vinv = LaurentInt::monomial(1, -1);
  LaurentInt s = v + vinv;
  REQUIRE(s.at_one() == 2);
  REQUIRE((s * s).coeff(0) == 2);
  REQUIRE((s * s).coeff(2) == 1);
  REQUIRE(s.bar() == s);
  REQUIRE((v - v).is_zero());
  REQUIRE(v.shifted(-2) == vinv);
  REQUIRE(s.str() == "v^-1 + v");
}

TEST_CASE("graded polynomials", "[core]") {
  u32 p = 5;
  auto x = GradedPoly::variable(p, 2, 0);
  auto y = GradedPoly::variable(p, 2, 1);
  auto f = x * x + y.scaled(3) * x;
  REQUIRE(f.graded_degree() == 4);
  REQUIRE(f.is_homogeneous());
  REQUIRE(!(f + GradedPoly::constant(p, 2, 1)).is_homogeneous());

  // product degree adds
  auto g = (x + y) * (x - y);
  REQUIRE(g == x * x - y * y);
  REQUIRE(g.graded_degree() == 4);

  // exact division roundtrip
  auto h = (x + y.scaled(2)) * (x * x + y * y + x * y);
  REQUIRE(h.exact_div(x + y.scaled(2)) == x * x + y * y + x * y);
  REQUIRE_THROWS(g.exact_div(x + GradedPoly::constant(p, 2, 1)));

  // substitution is a ring hom: swap the variables
  std::vector<std::vector<u32>> sw = {{0, 1}, {1, 0}};
  REQUIRE((f * g).substitute(sw) == f.substitute(sw) * g.substitute(sw));
}

TEST_CASE("polynomial gcd and rational functions", "[core]") {
  u32 p = 5;
  auto x = GradedPoly::variable(p, 2, 0);
  auto y = GradedPoly::variable(p, 2, 1);
  auto one = GradedPoly::constant(p, 2, 1);

  SECTION("univariate euclid") {
    auto a = (x + one) * (x + one) * (x - one);
    auto b = (x + one) * x;
    auto g = poly_gcd(a, b);
    REQUIRE(g == x + one);
  }
  SECTION("bivariate common factor") {
    auto c = x * y + one;
    auto a = c * (x + y);
    auto b = c * (x * x + y.scaled(3));
    auto g = poly_gcd(a, b);
    REQUIRE(g == c);  // c is already gradlex-monic here
    a.exact_div(g);   // must not throw
    b.exact_div(g);
  }
  SECTION("ratfunc reduction and arithmetic") {
    RatFunc r(x * x - y * y, x - y);
    REQUIRE(r.num == x + y);
    REQUIRE(r.den == one);
    RatFunc s(one, x);
    RatFunc t = s + s;
    REQUIRE(t.num == GradedPoly::constant(p, 2, 2));
    REQUIRE(t.den == x);
    RatFunc q = (s * RatFunc(x + y)) - RatFunc(y) / RatFunc(x);
    REQUIRE(q == RatFunc::one(p, 2));
    RatFunc red = r;
    red.reduce();
    REQUIRE(red == r);  // reduction idempotent
  }
}

TEST_CASE("dense linear algebra over F_p and Q", "[core]") {
  FpField F(7);
  Mat<FpField> m(3, 4, F);
  u32 vals[3][4] = {{1, 2, 3, 4}, {2, 4, 6, 2}, {0, 1, 1, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) m.at(i, j) = vals[i][j];
  REQUIRE(mat_rank(m, F) == 3);
  m.at(1, 3) = fp_mul(2, 4, 7);  // make row1 = 2*row0
  REQUIRE(mat_rank(m, F) == 2);
  Mat<FpField> K = kernel_basis(m, F);
  REQUIRE(K.cols == 2);
  // check m * k = 0 for kernel columns
  for (int c = 0; c < K.cols; ++c) {
    std::vector<u32> v(4);
    for (int i = 0; i < 4; ++i) v[i] = K.at(i, c);
    auto img = m.apply(v, F);
    for (auto& e : img) REQUIRE(e == 0);
  }

  // inverse over the rational function field
  RatField Q(5, 1);
  auto x = RatFunc(GradedPoly::variable(5, 1, 0));
  Mat<RatField> a(2, 2, Q);
  a.at(0, 0) = x;
  a.at(0, 1) = Q.one();
  a.at(1, 0) = Q.one();
  a.at(1, 1) = x;
  auto inv = mat_inverse(a, Q);
  auto id = a.mul(inv, Q);
  REQUIRE(id.at(0, 0) == Q.one());
  REQUIRE(id.at(0, 1).is_zero());
  REQUIRE(id.at(1, 1) == Q.one());

  // echelon accumulator
  Echelon<FpField> ech(3, F);
  REQUIRE(ech.insert({1, 2, 3}));
  REQUIRE(ech.insert({0, 1, 1}));
  REQUIRE(!ech.insert({1, 3, 4}));
  REQUIRE(ech.rank() == 2);
  REQUIRE(ech.contains({2, 4, 6}));
  REQUIRE(!ech.contains({0, 0, 1}));
}
