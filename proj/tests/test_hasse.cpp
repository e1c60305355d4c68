#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/error.hpp"
#include "core/hasse.hpp"
#include "testutil.hpp"

using namespace jointkit;
using namespace jointkit::testutil;

namespace {
const Field Q = Field::rationals();

AffineSubspace plane_z0() {
  Vec e1 = {Q.one(), Q.zero(), Q.zero()};
  Vec e2 = {Q.zero(), Q.one(), Q.zero()};
  return AffineSubspace({Q.zero(), Q.zero(), Q.zero()}, {e1, e2});
}

Line x_axis() {
  return Line(AffineSubspace({Q.zero(), Q.zero(), Q.zero()}, {{Q.one(), Q.zero(), Q.zero()}}), 0);
}
}  // namespace

TEST_CASE("directional derivative reduces to D^a on the standard basis") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    MultiPoly p = random_poly(3, 4, 5, Q, rng);
    Exponents a = random_index(3, 3, rng);
    CHECK(directional_hasse(p, Mat::identity(3, Q), a) == p.hasse_derivative(a));
  }
}

TEST_CASE("directional derivative of x^2 along (1,1) is 2x") {
  Field f7 = Field::prime(7);
  MultiPoly p = MultiPoly::monomial({2, 0}, f7.one());  // x^2 in F_7[x,y]
  Mat basis(2, 2, f7);
  basis.at(0, 0) = f7.one();
  basis.at(1, 0) = f7.one();  // w1 = (1,1)
  basis.at(0, 1) = f7.zero();
  basis.at(1, 1) = f7.one();  // w2 = (0,1)
  MultiPoly d = directional_hasse(p, basis, {1, 0});
  CHECK(d == MultiPoly::monomial({1, 0}, f7.from_int(2)));
}

TEST_CASE("order beyond degree annihilates, rank-deficient basis errors") {
  MultiPoly p = MultiPoly::monomial({2, 1}, Q.one());
  CHECK(directional_hasse(p, Mat::identity(2, Q), {3, 1}).is_zero());
  Mat bad(2, 2, Q);
  bad.at(0, 0) = Q.one();
  bad.at(0, 1) = Q.from_int(2);
  CHECK_THROWS_AS(directional_hasse(p, bad, {1, 0}), Error);
}

TEST_CASE("the two directional routes agree (with cross-check enabled)") {
  set_route_crosscheck(true);
  std::mt19937_64 rng(17);
  for (Field f : {Field::prime(5), Field::rationals()}) {
    for (int t = 0; t < 8; ++t) {
      MultiPoly p = random_poly(3, 4, 5, f, rng);
      Mat basis = random_basis(3, f, rng);
      Exponents a = random_index(3, 3, rng);
      CHECK_NOTHROW(directional_hasse(p, basis, a));
      CHECK(directional_hasse_by_expansion(p, basis, a) ==
            directional_hasse_by_composition(p, basis, a));
    }
  }
  set_route_crosscheck(false);
}

TEST_CASE("restrict_to_plane") {
  MultiPoly z = MultiPoly::variable(3, 2, Q);
  CHECK(restrict_to_plane(z, plane_z0()).is_zero());

  MultiPoly sum_sq = MultiPoly::monomial({2, 0, 0}, Q.one()) +
                     MultiPoly::monomial({0, 2, 0}, Q.one()) +
                     MultiPoly::monomial({0, 0, 2}, Q.one());
  AffineSubspace diag({Q.zero(), Q.zero(), Q.zero()}, {{Q.one(), Q.one(), Q.one()}});
  CHECK(restrict_to_plane(sum_sq, diag) == MultiPoly::monomial({2}, Q.from_int(3)));

  MultiPoly x = MultiPoly::variable(3, 0, Q);
  CHECK(restrict_to_plane(x, x_axis().sub) == MultiPoly::monomial({1}, Q.one()));
}

TEST_CASE("restricted transverse derivatives") {
  Vec e3 = {Q.zero(), Q.zero(), Q.one()};
  AffineSubspace p0 = plane_z0();

  MultiPoly z2 = MultiPoly::monomial({0, 0, 2}, Q.one());
  CHECK(restricted_transverse_derivative(z2, p0, {e3}, {0}) == restrict_to_plane(z2, p0));
  CHECK(restricted_transverse_derivative(z2, p0, {e3}, {1}).is_zero());
  CHECK(restricted_transverse_derivative(z2, p0, {e3}, {2}) ==
        MultiPoly::constant(2, Q.one()));

  MultiPoly xz = MultiPoly::monomial({1, 0, 1}, Q.one());
  CHECK(restricted_transverse_derivative(xz, p0, {e3}, {1}) ==
        MultiPoly::variable(2, 0, Q));

  // non-transverse direction errors
  Vec e1 = {Q.one(), Q.zero(), Q.zero()};
  CHECK_THROWS_AS(restricted_transverse_derivative(z2, p0, {e1}, {1}), Error);
}

TEST_CASE("multiplicity") {
  MultiPoly x2y = MultiPoly::monomial({2, 1}, Q.one());
  Vec origin = {Q.zero(), Q.zero()};
  CHECK(multiplicity(x2y, origin) == Multiplicity::finite(3));
  CHECK(multiplicity(MultiPoly::constant(2, Q.one()), origin) == Multiplicity::finite(0));
  CHECK(multiplicity(MultiPoly(2, Q), origin).infinite);
  // off the zero set the multiplicity is 0
  CHECK(multiplicity(x2y, {Q.one(), Q.one()}) == Multiplicity::finite(0));
}

TEST_CASE("minimal transverse derivative") {
  Vec e3 = {Q.zero(), Q.zero(), Q.one()};
  AffineSubspace p0 = plane_z0();

  MultiPoly xz = MultiPoly::monomial({1, 0, 1}, Q.one()) + MultiPoly::variable(3, 0, Q);
  auto m0 = minimal_transverse_derivative(xz, p0, {e3});
  CHECK(m0.order() == 0);
  CHECK(m0.restricted == restrict_to_plane(xz, p0));

  MultiPoly z2 = MultiPoly::monomial({0, 0, 2}, Q.one());
  auto m2 = minimal_transverse_derivative(z2, p0, {e3});
  CHECK(m2.order() == 2);
  CHECK(m2.lambda == Exponents{2});
  CHECK(m2.restricted == MultiPoly::constant(2, Q.one()));

  MultiPoly zz1 = z2 - MultiPoly::variable(3, 2, Q);  // z(z-1)
  auto m1 = minimal_transverse_derivative(zz1, p0, {e3});
  CHECK(m1.order() == 1);
  CHECK(m1.restricted == MultiPoly::constant(2, -Q.one()));

  CHECK_THROWS_AS(minimal_transverse_derivative(MultiPoly(3, Q), p0, {e3}), Error);
}

TEST_CASE("minimal line derivative") {
  Line l = x_axis();
  MultiPoly z = MultiPoly::variable(3, 2, Q);
  auto d1 = minimal_line_derivative(z, l);
  CHECK(d1.order() == 1);
  CHECK(d1.restricted == MultiPoly::constant(1, Q.one()));

  MultiPoly x = MultiPoly::variable(3, 0, Q);
  auto d0 = minimal_line_derivative(x, l);
  CHECK(d0.order() == 0);
  CHECK(d0.restricted == MultiPoly::monomial({1}, Q.one()));

  MultiPoly z2 = MultiPoly::monomial({0, 0, 2}, Q.one());
  auto d2 = minimal_line_derivative(z2, l);
  CHECK(d2.order() == 2);
  CHECK(d2.restricted == MultiPoly::constant(1, Q.one()));
}

TEST_CASE("composition identity D^i D^j = binom(i+j,j) D^{i+j}") {
  std::mt19937_64 rng(23);
  for (Field f : {Field::prime(5), Field::prime(101), Field::rationals()}) {
    for (int t = 0; t < 15; ++t) {
      MultiPoly p = random_poly(3, 5, 6, f, rng);
      Exponents i = random_index(3, 3, rng), j = random_index(3, 3, rng);
      Exponents ij(3);
      for (std::size_t v = 0; v < 3; ++v) ij[v] = i[v] + j[v];
      Value factor = f.from_mpz(binom_mpz(ij, j));
      CHECK(p.hasse_derivative(j).hasse_derivative(i) ==
            p.hasse_derivative(ij).scaled(factor));
    }
  }
}

TEST_CASE("translation invariance of D^a") {
  std::mt19937_64 rng(29);
  for (Field f : {Field::prime(5), Field::rationals()}) {
    for (int t = 0; t < 10; ++t) {
      MultiPoly p = random_poly(2, 5, 5, f, rng);
      Exponents a = random_index(2, 3, rng);
      Vec y = random_point(2, f, rng);
      CHECK(p.taylor_shift(y).hasse_derivative(a) == p.hasse_derivative(a).taylor_shift(y));
    }
  }
}

TEST_CASE("multiplicity is basis invariant") {
  std::mt19937_64 rng(31);
  for (Field f : {Field::prime(5), Field::rationals()}) {
    for (int t = 0; t < 6; ++t) {
      MultiPoly p = random_nonzero_poly(3, 4, 4, f, rng);
      Vec x0 = random_point(3, f, rng);
      Mat basis = random_basis(3, f, rng);
      Multiplicity mult = multiplicity(p, x0);
      // smallest |a| with a nonvanishing directional derivative at x0
      unsigned found = 0;
      bool done = false;
      for (unsigned order = 0; !done && order <= *p.degree(); ++order) {
        for (const Exponents& a : exponents_of_degree(order, 3)) {
          if (!directional_hasse(p, basis, a).evaluate(x0).is_zero()) {
            found = order;
            done = true;
            break;
          }
        }
      }
      REQUIRE(done);
      CHECK(mult == Multiplicity::finite(found));
    }
  }
}
