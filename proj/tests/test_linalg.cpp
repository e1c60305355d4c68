#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/error.hpp"
#include "core/linalg.hpp"

using namespace jointkit;

namespace {
Mat make(const Field& f, std::vector<std::vector<long long>> rows) {
  std::vector<Vec> vr;
  for (auto& r : rows) {
    Vec v;
    for (long long x : r) v.push_back(f.from_int(x));
    vr.push_back(v);
  }
  return Mat::from_rows(vr, f);
}
}  // namespace

TEST_CASE("rank and rref over Q") {
  Field q = Field::rationals();
  Mat m = make(q, {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(m) == 2);
  CHECK(rank(Mat::identity(4, q)) == 4);
  Mat z(3, 3, q);
  CHECK(rank(z) == 0);
}

TEST_CASE("kernel basis solves the homogeneous system") {
  Field q = Field::rationals();
  Mat m = make(q, {{1, 2, 3}, {2, 4, 6}});
  auto basis = kernel_basis(m);
  REQUIRE(basis.size() == 2);
  for (const Vec& v : basis) {
    Vec y = mat_vec(m, v);
    for (const Value& e : y) CHECK(e.is_zero());
  }
}

TEST_CASE("solve consistent and inconsistent systems") {
  Field q = Field::rationals();
  Mat m = make(q, {{1, 1}, {1, -1}});
  Vec b = {q.from_int(3), q.from_int(1)};
  auto x = solve(m, b);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == q.from_int(2));
  CHECK((*x)[1] == q.one());

  Mat sing = make(q, {{1, 1}, {2, 2}});
  Vec bad = {q.from_int(1), q.from_int(3)};
  CHECK(!solve(sing, bad).has_value());
}

TEST_CASE("inverse round trip over F_101") {
  Field f = Field::prime(101);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Mat m(4, 4, f);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m.at(i, j) = f.from_int(static_cast<long long>(rng() % 101));
    if (rank(m) < 4) continue;
    Mat inv = inverse(m);
    CHECK(mat_mul(m, inv) == Mat::identity(4, f));
  }
  CHECK_THROWS_AS(inverse(make(f, {{1, 2}, {2, 4}})), Error);
}

TEST_CASE("reduced column echelon is canonical under column operations") {
  Field q = Field::rationals();
  Mat a = make(q, {{2, 1}, {0, 1}, {0, 0}});
  Mat b = make(q, {{1, 3}, {1, 1}, {0, 0}});  // same column space
  CHECK(reduced_column_echelon(a) == reduced_column_echelon(b));
  Mat c = make(q, {{1, 0}, {0, 0}, {0, 1}});
  CHECK(!(reduced_column_echelon(a) == reduced_column_echelon(c)));
}

TEST_CASE("rank of random matrix equals rank of its transpose") {
  std::mt19937_64 rng(3);
  Field f = Field::prime(13);
  for (int trial = 0; trial < 30; ++trial) {
    Mat m(3, 5, f);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 5; ++j) m.at(i, j) = f.from_int(static_cast<long long>(rng() % 13));
    CHECK(rank(m) == rank(m.transpose()));
  }
}
