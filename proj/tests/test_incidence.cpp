#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/error.hpp"
#include "core/generators.hpp"
#include "core/incidence.hpp"
#include "testutil.hpp"

using namespace jointkit;

namespace {
const Field Q = Field::rationals();

Vec pt(std::vector<long long> cs, const Field& f = Q) {
  Vec v;
  for (long long c : cs) v.push_back(f.from_int(c));
  return v;
}

AffineSubspace line_through(std::vector<long long> base, std::vector<long long> dir,
                            const Field& f = Q) {
  return AffineSubspace(pt(std::move(base), f), {pt(std::move(dir), f)});
}

// exhaustive per-point scan over F_p^n; the independent oracle for find_joints
std::vector<JointRecord> brute_force_joints(const LineFamily& fam) {
  std::vector<JointRecord> out;
  const Field& f = fam.field;
  std::vector<Value> elems = f.enumerate();
  std::vector<std::size_t> idx(fam.n, 0);
  for (;;) {
    Vec x(fam.n, f.zero());
    for (std::size_t i = 0; i < fam.n; ++i) x[i] = elems[idx[i]];
    JointRecord rec;
    rec.point = x;
    std::vector<Vec> dirs;
    for (const Line& l : fam.lines)
      if (l.sub.contains(x)) {
        rec.incident_lines.push_back(l.id);
        dirs.push_back(l.direction());
      }
    rec.m = rec.incident_lines.size();
    if (rec.m >= fam.n && direction_rank(dirs, f, fam.n) == fam.n) out.push_back(rec);
    std::size_t i = 0;
    for (; i < fam.n; ++i) {
      if (++idx[i] < elems.size()) break;
      idx[i] = 0;
    }
    if (i == fam.n) return out;
  }
}
}  // namespace

TEST_CASE("line family rejects duplicates and dimension mismatches") {
  LineFamily fam(3, Q);
  fam.add(line_through({0, 0, 0}, {1, 0, 0}));
  // same line, different parameterization
  CHECK_THROWS_AS(fam.add(line_through({1, 0, 0}, {2, 0, 0})), Error);
  CHECK_THROWS_AS(fam.add(AffineSubspace(pt({0, 0}), {pt({1, 0})})), Error);
}

TEST_CASE("axis grid joints") {
  for (std::size_t N = 1; N <= 3; ++N) {
    LineFamily fam = axis_grid(3, N, Q);
    CHECK(fam.size() == 3 * N * N);
    auto joints = find_joints(fam);
    CHECK(joints.size() == N * N * N);
    for (const auto& j : joints) {
      CHECK(j.m == 3);
      CHECK(j.tuple_count == 6);  // 3! orderings of 3 independent lines
    }
  }
}

TEST_CASE("two lines give no joints in dimension 3") {
  LineFamily fam(3, Q);
  fam.add(line_through({0, 0, 0}, {1, 0, 0}));
  fam.add(line_through({0, 0, 0}, {0, 1, 0}));
  CHECK(find_joints(fam).empty());
}

TEST_CASE("bush multiplicities") {
  Vec center = pt({0, 0, 0});
  // 5 coplanar lines + transverse: one joint, m = 6, N = 3 * (5*4) = 60
  LineFamily fam = bush(5, center, true, true);
  auto joints = find_joints(fam);
  REQUIRE(joints.size() == 1);
  CHECK(joints[0].m == 6);
  CHECK(joints[0].tuple_count == 60);

  CHECK(find_joints(bush(5, center, true, false)).empty());

  auto j2 = find_joints(bush(2, center, false, true));
  REQUIRE(j2.size() == 1);
  CHECK(j2[0].m == 3);
  CHECK(j2[0].tuple_count == 6);
}

TEST_CASE("joints agree with the exhaustive oracle over F_5^3") {
  Field f5 = Field::prime(5);
  LineFamily fam(3, f5);
  std::mt19937_64 rng(99);
  fam = random_lines(3, 12, f5, 99);
  auto fast = find_joints(fam);
  auto slow = brute_force_joints(fam);
  auto by_point = [](const JointRecord& a, const JointRecord& b) {
    for (std::size_t i = 0; i < a.point.size(); ++i)
      if (a.point[i] != b.point[i]) return a.point[i] < b.point[i];
    return false;
  };
  std::sort(fast.begin(), fast.end(), by_point);
  std::sort(slow.begin(), slow.end(), by_point);
  REQUIRE(fast.size() == slow.size());
  for (std::size_t i = 0; i < fast.size(); ++i) {
    CHECK(fast[i].point == slow[i].point);
    CHECK(fast[i].incident_lines == slow[i].incident_lines);
  }
  (void)rng;
}

TEST_CASE("find_joints is invariant under permutation of the line list") {
  LineFamily fam = axis_grid(3, 2, Q);
  LineFamily permuted(3, Q);
  for (std::size_t i = fam.size(); i-- > 0;) permuted.add(fam.lines[i].sub);
  auto a = find_joints(fam);
  auto b = find_joints(permuted);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].point == b[i].point);
    CHECK(a[i].m == b[i].m);
  }
}

TEST_CASE("multijoints") {
  Field f = Q;
  // plane z=0 with the z-axis: one multijoint at the origin
  PlaneFamily planes;
  planes.n = 3;
  planes.k = 2;
  planes.field = f;
  planes.add(AffineSubspace(pt({0, 0, 0}), {pt({1, 0, 0}), pt({0, 1, 0})}));
  LineFamily zline(3, f);
  zline.add(line_through({0, 0, 0}, {0, 0, 1}));
  auto mj = find_multijoints(planes, {zline});
  REQUIRE(mj.size() == 1);
  CHECK(mj[0].point == pt({0, 0, 0}));
  CHECK(mj[0].tuple_count == 1);

  // a line contained in the plane contributes nothing
  LineFamily xline(3, f);
  xline.add(line_through({0, 0, 0}, {1, 0, 0}));
  CHECK(find_multijoints(planes, {xline}).empty());
}

TEST_CASE("multijoint over F_3 in dimension 4") {
  Field f3 = Field::prime(3);
  PlaneFamily planes;
  planes.n = 4;
  planes.k = 2;
  planes.field = f3;
  planes.add(AffineSubspace(pt({0, 0, 0, 0}, f3), {pt({1, 0, 0, 0}, f3), pt({0, 1, 0, 0}, f3)}));
  LineFamily l3(4, f3), l4(4, f3);
  l3.add(AffineSubspace(pt({0, 0, 0, 0}, f3), {pt({0, 0, 1, 0}, f3)}));
  l4.add(AffineSubspace(pt({0, 0, 0, 0}, f3), {pt({0, 0, 0, 1}, f3)}));
  auto mj = find_multijoints(planes, {l3, l4});
  REQUIRE(mj.size() == 1);
  CHECK(mj[0].tuple_count == 1);
}

TEST_CASE("kakeya sums") {
  LineFamily fam = axis_grid(3, 4, Q);
  auto joints = find_joints(fam);
  KakeyaSum ks = kakeya_sum(joints, mpq_class(3, 2), fam.size());
  // N^3 * 3^{3/2} / (3 N^2)^{3/2} = 1 exactly
  CHECK(std::abs(ks.ratio - 1.0) < 1e-9);
  CHECK(ks.multiset.at(3) == 64);

  // s = 1 equals the total incidence count
  KakeyaSum s1 = kakeya_sum(joints, mpq_class(1), fam.size());
  CHECK(std::abs(s1.sum - static_cast<double>(total_incidences(joints))) < 1e-9);

  CHECK(kakeya_sum({}, mpq_class(3, 2), 10).sum == 0.0);
  CHECK_THROWS_AS(kakeya_sum(joints, mpq_class(0), fam.size()), Error);
}

TEST_CASE("dyadic levels partition the joint set and classify") {
  LineFamily fam = axis_grid(3, 4, Q);  // L = 48, 64 joints with m = 3
  auto joints = find_joints(fam);
  LevelTable table = dyadic_levels(joints);
  REQUIRE(table.size() == 1);
  CHECK(table.count(2) == 1);  // 2 <= 3 < 4
  CHECK(table.at(2).size() == 64);

  std::size_t covered = 0;
  for (const auto& [k, members] : table) covered += members.size();
  CHECK(covered == joints.size());

  auto cls = classify_levels(table, joints, fam.size(), mpq_class(1, 4), mpq_class(10), mpq_class(1));
  // |J_2| 2^{2-1/8} = 64 * 2^{15/8} ~ 234.7 <= 10 * 48^{3/2} ~ 3325: good
  CHECK(cls.at(2).good);
  CHECK(!cls.at(2).large);  // 2 <= sqrt(48)

  // bush of 100 lines: single joint at level 64, large for c = 1
  LineFamily b = bush(100, pt({0, 0, 0}), true, true);  // m = 101
  auto bj = find_joints(b);
  LevelTable bt = dyadic_levels(bj);
  REQUIRE(bt.count(64) == 1);
  auto bc = classify_levels(bt, bj, b.size(), mpq_class(1, 4), mpq_class(10), mpq_class(1));
  CHECK(bc.at(64).large);  // 64 > sqrt(101)
  CHECK_THROWS_AS(classify_levels(bt, bj, b.size(), mpq_class(1), mpq_class(10), mpq_class(1)),
                  Error);
}

TEST_CASE("szemeredi-trotter exact counting") {
  Field f = Q;
  // single point on a single line
  std::vector<Vec> one_pt = {pt({0, 0})};
  std::vector<Line> one_line = {Line(AffineSubspace(pt({0, 0}), {pt({1, 0})}), 0)};
  CHECK(st_incidences(one_pt, one_line).incidences == 1);

  // disjoint
  std::vector<Vec> far = {pt({5, 7})};
  CHECK(st_incidences(far, one_line).incidences == 0);

  // 3x3 grid with the 6 axis lines: each point on 2 lines
  std::vector<Vec> grid;
  std::vector<Line> glines;
  for (long long a = 0; a < 3; ++a) {
    for (long long b = 0; b < 3; ++b) grid.push_back(pt({a, b}));
    glines.emplace_back(AffineSubspace(pt({a, 0}), {pt({0, 1})}), static_cast<unsigned>(a));
    glines.emplace_back(AffineSubspace(pt({0, a}), {pt({1, 0})}), static_cast<unsigned>(3 + a));
  }
  STReport rep = st_incidences(grid, glines);
  CHECK(rep.incidences == 18);
  CHECK(rep.level_counts.at(2) == 9);

  // mapping through a 3d plane agrees with direct 2d counting
  AffineSubspace plane(pt({0, 0, 1}), {pt({1, 0, 0}), pt({0, 1, 0})});
  std::vector<Vec> pts3;
  std::vector<Line> lines3;
  for (const Vec& x : grid) pts3.push_back(pt({0, 0, 1}) == x ? x : Vec{x[0], x[1], f.one()});
  unsigned id = 0;
  for (const Line& l : glines) {
    Vec base = {l.base_point()[0], l.base_point()[1], f.one()};
    Vec dir = {l.direction()[0], l.direction()[1], f.zero()};
    lines3.emplace_back(AffineSubspace(base, {dir}), id++);
  }
  STReport rep3 = st_incidences_in_plane(plane, pts3, lines3);
  CHECK(rep3.incidences == rep.incidences);

  // off-plane input errors
  pts3.push_back(pt({0, 0, 5}));
  CHECK_THROWS_AS(st_incidences_in_plane(plane, pts3, lines3), Error);
}
