#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/error.hpp"
#include "core/vanishing.hpp"
#include "testutil.hpp"

using namespace jointkit;
using namespace jointkit::testutil;

namespace {
const Field Q = Field::rationals();

Vec pt(std::vector<long long> cs, const Field& f = Q) {
  Vec v;
  for (long long c : cs) v.push_back(f.from_int(c));
  return v;
}
}  // namespace

TEST_CASE("condition matrix row counts") {
  VanishingSpec spec;
  spec.n = 2;
  spec.field = Q;
  spec.points.push_back({pt({0, 0}), 1});
  ConditionMatrix cm = build_conditions(spec, 1);
  CHECK(cm.matrix.rows() == 1);
  CHECK(cm.matrix.cols() == 3);
  // evaluation at the origin touches only the constant column
  CHECK(cm.matrix.at(0, 0) == Q.one());
  CHECK(cm.matrix.at(0, 1).is_zero());
  CHECK(cm.matrix.at(0, 2).is_zero());

  VanishingSpec spec2;
  spec2.n = 2;
  spec2.field = Q;
  spec2.points.push_back({pt({1, 2}), 2});
  CHECK(build_conditions(spec2, 3).matrix.rows() == 3);  // orders (0,0),(0,1),(1,0)

  // plane constraint with k = 2: the inner plane is a line, grid of D+1 rows
  VanishingSpec spec3;
  spec3.n = 3;
  spec3.field = Q;
  AffineSubspace outer(pt({0, 0, 0}), {pt({1, 0, 0}), pt({0, 1, 0})});
  AffineSubspace inner(pt({0, 0, 0}), {pt({1, 0, 0})});
  spec3.planes.push_back({inner, outer, {pt({0, 0, 1})}, 0});
  CHECK(build_conditions(spec3, 2).matrix.rows() == 3);

  // grid scheme needs |F| > D
  VanishingSpec small = spec3;
  small.field = Field::prime(2);
  AffineSubspace outer2(pt({0, 0, 0}, small.field),
                        {pt({1, 0, 0}, small.field), pt({0, 1, 0}, small.field)});
  AffineSubspace inner2(pt({0, 0, 0}, small.field), {pt({1, 0, 0}, small.field)});
  small.planes.clear();
  small.planes.push_back({inner2, outer2, {pt({0, 0, 1}, small.field)}, 0});
  CHECK_THROWS_AS(build_conditions(small, 2), Error);
}

TEST_CASE("annihilator of three collinear points is the line form") {
  VanishingSpec spec;
  spec.n = 2;
  spec.field = Q;
  for (long long t : {0, 1, 2}) spec.points.push_back({pt({t, t}), 1});
  Annihilator ann = min_degree_annihilator(spec, 6);
  CHECK(ann.degree == 1);
  // up to the normalization, the defining form of y = x
  MultiPoly x = MultiPoly::variable(2, 0, Q), y = MultiPoly::variable(2, 1, Q);
  bool matches = ann.poly == (y - x) || ann.poly == (x - y);
  CHECK(matches);
  CHECK(verify_vanishing(ann.poly, spec).ok());
}

TEST_CASE("annihilator of 10 points in F_101^2 fits in degree 4") {
  Field f = Field::prime(101);
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    VanishingSpec spec;
    spec.n = 2;
    spec.field = f;
    std::set<std::pair<std::uint64_t, std::uint64_t>> used;
    while (used.size() < 10) used.emplace(rng() % 101, rng() % 101);
    for (auto [a, b] : used)
      spec.points.push_back({pt({static_cast<long long>(a), static_cast<long long>(b)}, f), 1});
    Annihilator ann = min_degree_annihilator(spec, 8);
    CHECK(ann.degree <= 4);  // binom(6,2) = 15 > 10 conditions
    CHECK(verify_vanishing(ann.poly, spec).ok());
  }
}

TEST_CASE("empty spec yields the constant annihilator") {
  VanishingSpec spec;
  spec.n = 3;
  spec.field = Q;
  Annihilator ann = min_degree_annihilator(spec, 4);
  CHECK(ann.degree == 0);
  CHECK(ann.poly == MultiPoly::constant(3, Q.one()));
}

TEST_CASE("degree budget exhaustion is an explicit error") {
  VanishingSpec spec;
  spec.n = 1;
  spec.field = Q;
  spec.points.push_back({pt({0}), 5});  // needs degree >= 5
  CHECK_THROWS_AS(min_degree_annihilator(spec, 3), Error);
}

TEST_CASE("kernel guarantee: fewer rows than columns always succeeds") {
  std::mt19937_64 rng(77);
  Field f = Field::prime(101);
  for (int trial = 0; trial < 10; ++trial) {
    VanishingSpec spec;
    spec.n = 2 + rng() % 2;
    spec.field = f;
    std::size_t npts = 1 + rng() % 6;
    for (std::size_t i = 0; i < npts; ++i)
      spec.points.push_back({random_point(spec.n, f, rng), 1 + static_cast<unsigned>(rng() % 2)});
    // rows = sum of binom(n + m_i - 1 choose ...) < cols at high enough D
    Annihilator ann = min_degree_annihilator(spec, 12);
    CHECK(verify_vanishing(ann.poly, spec).ok());
  }
}

TEST_CASE("verify_vanishing reports violations") {
  VanishingSpec spec;
  spec.n = 2;
  spec.field = Q;
  spec.points.push_back({pt({0, 1}), 1});
  MultiPoly x = MultiPoly::variable(2, 0, Q);
  CHECK(verify_vanishing(x, spec).ok());
  MultiPoly xp1 = x + MultiPoly::constant(2, Q.one());
  CHECK(!verify_vanishing(xp1, spec).ok());
}

TEST_CASE("grid sufficiency witness") {
  // a nonzero polynomial of degree <= D cannot vanish on the whole
  // (D+1)-point-per-variable grid
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly p = random_nonzero_poly(2, 4, 4, Q, rng);
    unsigned d = *p.degree();
    bool witness = false;
    for (unsigned a = 0; a <= d && !witness; ++a)
      for (unsigned b = 0; b <= d && !witness; ++b)
        if (!p.evaluate(pt({a, b})).is_zero()) witness = true;
    CHECK(witness);
  }
}

TEST_CASE("line root accounting") {
  Line l(AffineSubspace(pt({0, 0, 0}), {pt({1, 0, 0})}), 0);
  MultiPoly x = MultiPoly::variable(3, 0, Q);

  // p = x(x-1): q = t(t-1), both roots simple, equality in Bezout
  MultiPoly p = x * (x - MultiPoly::constant(3, Q.one()));
  RootAccount acc = line_root_accounting(p, l, {{pt({0, 0, 0}), 1}, {pt({1, 0, 0}), 1}});
  CHECK(acc.derivative_order == 0);
  CHECK(acc.q_degree == 2);
  CHECK(acc.total_actual == 2);
  CHECK(acc.bezout_ok);
  CHECK(acc.violations.empty());

  // degree 5 with 3 simple marked roots
  MultiPoly p5 = x * (x - MultiPoly::constant(3, Q.one())) *
                 (x - MultiPoly::constant(3, Q.from_int(2))) * x * x;
  RootAccount acc5 = line_root_accounting(
      p5, l, {{pt({0, 0, 0}), 1}, {pt({1, 0, 0}), 1}, {pt({2, 0, 0}), 1}});
  CHECK(acc5.q_degree == 5);
  CHECK(acc5.total_actual == 5);  // the root at 0 has multiplicity 3
  CHECK(acc5.bezout_ok);

  // constant q with a claimed root: violation reported
  MultiPoly z = MultiPoly::variable(3, 2, Q);
  RootAccount accz = line_root_accounting(z, l, {{pt({0, 0, 0}), 1}});
  CHECK(accz.q_degree == 0);
  CHECK(!accz.violations.empty());
  CHECK(accz.bezout_ok);  // 0 <= 0 <= 1

  // marked point off the line errors
  CHECK_THROWS_AS(line_root_accounting(p, l, {{pt({0, 1, 0}), 1}}), Error);
}

TEST_CASE("exceptional plane test") {
  AffineSubspace p0(pt({0, 0, 0}), {pt({1, 0, 0}), pt({0, 1, 0})});
  std::vector<Vec> e3 = {pt({0, 0, 1})};
  MultiPoly z2 = MultiPoly::monomial({0, 0, 2}, Q.one());
  CHECK(!exceptional_plane_test(z2, p0, e3, 1));
  CHECK(exceptional_plane_test(z2, p0, e3, 2));

  MultiPoly x = MultiPoly::variable(3, 0, Q);
  CHECK(exceptional_plane_test(x, p0, e3, 0));  // restriction nonzero already

  std::mt19937_64 rng(41);
  for (int t = 0; t < 5; ++t) {
    MultiPoly p = random_nonzero_poly(3, 4, 4, Q, rng);
    CHECK(exceptional_plane_test(p, p0, e3, *p.degree()));
  }
}

TEST_CASE("exceptional test agrees with direct order search") {
  std::mt19937_64 rng(53);
  AffineSubspace p0(pt({0, 0, 0}), {pt({1, 0, 0}), pt({0, 1, 0})});
  std::vector<Vec> e3 = {pt({0, 0, 1})};
  for (int t = 0; t < 10; ++t) {
    MultiPoly p = random_nonzero_poly(3, 4, 4, Q, rng);
    unsigned budget = rng() % 4;
    bool direct = false;
    for (unsigned order = 0; order <= budget && !direct; ++order)
      if (!restricted_transverse_derivative(p, p0, e3, {order}).is_zero()) direct = true;
    CHECK(exceptional_plane_test(p, p0, e3, budget) == direct);
  }
}

TEST_CASE("multijoint dichotomy classifies every point") {
  MultijointConfig cfg = multijoint_grid(3, 2, 2, Q);
  DichotomyResult res = multijoint_dichotomy(cfg, 1, 1, 12);
  CHECK(res.points.size() == 8);
  CHECK(res.unclassified == 0);
  CHECK(res.type1 + res.type2 == 8);
  CHECK(res.bezout_ok);
}
