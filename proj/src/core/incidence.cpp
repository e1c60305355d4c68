#include "incidence.hpp"

#include <algorithm>
#include <cmath>

#include "caps.hpp"
#include "error.hpp"

namespace jointkit {

namespace {

struct PointLess {
  bool operator()(const Vec& a, const Vec& b) const {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
  }
};

// Incremental exact rank tracker for direction vectors.
class RankTracker {
 public:
  explicit RankTracker(const Field& f) : field_(f) {}

  // Tries to add `v`; returns true (and keeps it) when the rank grows.
  bool push(Vec v) {
    for (const auto& [pivot, row] : rows_) {
      if (v[pivot].is_zero()) continue;
      Value factor = v[pivot];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= factor * row[i];
    }
    std::size_t pivot = 0;
    while (pivot < v.size() && v[pivot].is_zero()) ++pivot;
    if (pivot == v.size()) return false;
    Value inv = v[pivot].inv();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= inv;
    rows_.emplace_back(pivot, std::move(v));
    return true;
  }

  void pop() { rows_.pop_back(); }
  std::size_t rank() const { return rows_.size(); }

 private:
  Field field_;
  std::vector<std::pair<std::size_t, Vec>> rows_;
};

double mpq_to_double(const mpq_class& q) { return mpq_get_d(q.get_mpq_t()); }

}  // namespace

void LineFamily::add(AffineSubspace line_subspace) {
  if (line_subspace.dim() != 1) fail(errc::invalid_argument, "family member is not a line");
  if (line_subspace.ambient_dim() != n)
    fail(errc::invalid_argument, "line ambient dimension mismatch");
  if (line_subspace.field() != field) fail(errc::invalid_argument, "line field mismatch");
  for (const Line& l : lines)
    if (l.sub == line_subspace)
      fail(errc::invalid_argument, "duplicate line in family (id " + std::to_string(l.id) + ")");
  check_line_cap(lines.size() + 1);
  lines.emplace_back(std::move(line_subspace), static_cast<unsigned>(lines.size()));
}

void PlaneFamily::add(AffineSubspace plane) {
  if (plane.dim() != k) fail(errc::invalid_argument, "family member has wrong dimension");
  if (plane.ambient_dim() != n) fail(errc::invalid_argument, "plane ambient dimension mismatch");
  if (plane.field() != field) fail(errc::invalid_argument, "plane field mismatch");
  for (const AffineSubspace& p : planes)
    if (p == plane) fail(errc::invalid_argument, "duplicate plane in family");
  planes.push_back(std::move(plane));
}

std::vector<JointRecord> find_joints(const LineFamily& family) {
  const std::size_t n = family.n;
  if (n < 2) fail(errc::invalid_argument, "joints need ambient dimension >= 2");
  check_line_cap(family.size());

  std::map<Vec, char, PointLess> candidates;
  for (std::size_t i = 0; i < family.lines.size(); ++i)
    for (std::size_t j = i + 1; j < family.lines.size(); ++j) {
      LineIntersection inter = intersect_lines(family.lines[i], family.lines[j]);
      if (const Vec* pt = std::get_if<Vec>(&inter)) candidates.emplace(*pt, 0);
    }

  std::vector<JointRecord> joints;
  for (const auto& [point, unused] : candidates) {
    (void)unused;
    JointRecord rec;
    rec.point = point;
    std::vector<Vec> dirs;
    for (const Line& l : family.lines) {
      if (l.sub.contains(point)) {
        rec.incident_lines.push_back(l.id);
        dirs.push_back(l.direction());
      }
    }
    rec.m = rec.incident_lines.size();
    if (rec.m < n) continue;
    if (direction_rank(dirs, family.field, n) != n) continue;
    rec.tuple_count = joint_tuple_multiplicity(rec, family);
    joints.push_back(std::move(rec));
  }
  return joints;
}

namespace {
std::uint64_t count_tuples(const std::vector<const Line*>& incident, std::size_t depth,
                           std::size_t arity, RankTracker& tracker, std::int64_t& budget) {
  if (depth == arity) return 1;
  std::uint64_t total = 0;
  for (const Line* l : incident) {
    check_tuple_budget(++budget);
    if (!tracker.push(l->direction())) continue;
    total += count_tuples(incident, depth + 1, arity, tracker, budget);
    tracker.pop();
  }
  return total;
}
}  // namespace

std::uint64_t joint_tuple_multiplicity(const JointRecord& joint, const LineFamily& family) {
  std::vector<const Line*> incident;
  for (unsigned id : joint.incident_lines) incident.push_back(&family.lines.at(id));
  RankTracker tracker(family.field);
  std::int64_t budget = 0;
  return count_tuples(incident, 0, family.n, tracker, budget);
}

namespace {
std::uint64_t count_multijoint_tuples(const std::vector<std::vector<const Line*>>& per_family,
                                      std::size_t family_idx, RankTracker& tracker,
                                      std::int64_t& budget) {
  if (family_idx == per_family.size()) return 1;
  std::uint64_t total = 0;
  for (const Line* l : per_family[family_idx]) {
    check_tuple_budget(++budget);
    if (!tracker.push(l->direction())) continue;
    total += count_multijoint_tuples(per_family, family_idx + 1, tracker, budget);
    tracker.pop();
  }
  return total;
}
}  // namespace

std::vector<MultijointRecord> find_multijoints(const PlaneFamily& planes,
                                               const std::vector<LineFamily>& line_families) {
  const std::size_t n = planes.n;
  const std::size_t k = planes.k;
  if (k < 2 || n < 3 || k >= n)
    fail(errc::invalid_argument, "multijoints need k >= 2, n >= 3, k < n");
  if (line_families.size() != n - k)
    fail(errc::invalid_argument, "need exactly n-k line families");
  for (const LineFamily& lf : line_families) {
    if (lf.n != n || lf.field != planes.field)
      fail(errc::invalid_argument, "line family ambient mismatch");
  }

  // Candidate points: line-line intersections across all families plus
  // line-plane intersections.
  std::vector<const Line*> all_lines;
  for (const LineFamily& lf : line_families)
    for (const Line& l : lf.lines) all_lines.push_back(&l);

  std::map<Vec, char, PointLess> candidates;
  for (std::size_t i = 0; i < all_lines.size(); ++i)
    for (std::size_t j = i + 1; j < all_lines.size(); ++j) {
      LineIntersection inter = intersect_lines(*all_lines[i], *all_lines[j]);
      if (const Vec* pt = std::get_if<Vec>(&inter)) candidates.emplace(*pt, 0);
    }
  for (const Line* l : all_lines)
    for (const AffineSubspace& p : planes.planes) {
      LinePlaneIntersection inter = intersect_line_plane(*l, p);
      if (const Vec* pt = std::get_if<Vec>(&inter)) candidates.emplace(*pt, 0);
    }

  std::vector<MultijointRecord> out;
  for (const auto& [point, unused] : candidates) {
    (void)unused;
    MultijointRecord rec;
    rec.point = point;
    for (std::size_t pi = 0; pi < planes.planes.size(); ++pi)
      if (planes.planes[pi].contains(point)) rec.incident_planes.push_back(static_cast<unsigned>(pi));
    if (rec.incident_planes.empty()) continue;
    bool on_all_families = true;
    std::vector<std::vector<const Line*>> per_family;
    for (const LineFamily& lf : line_families) {
      std::vector<const Line*> here;
      std::vector<unsigned> ids;
      for (const Line& l : lf.lines)
        if (l.sub.contains(point)) {
          here.push_back(&l);
          ids.push_back(l.id);
        }
      if (here.empty()) {
        on_all_families = false;
        break;
      }
      per_family.push_back(std::move(here));
      rec.incident_lines.push_back(std::move(ids));
    }
    if (!on_all_families) continue;

    std::uint64_t tuples = 0;
    std::int64_t budget = 0;
    for (unsigned pi : rec.incident_planes) {
      const AffineSubspace& p = planes.planes[pi];
      RankTracker tracker(planes.field);
      bool plane_ok = true;
      for (std::size_t j = 0; j < p.dim(); ++j)
        if (!tracker.push(p.direction(j))) plane_ok = false;
      if (!plane_ok) fail(errc::internal, "canonical plane directions must be independent");
      tuples += count_multijoint_tuples(per_family, 0, tracker, budget);
    }
    if (tuples == 0) continue;
    rec.tuple_count = tuples;
    out.push_back(std::move(rec));
  }
  return out;
}

KakeyaSum kakeya_sum(const std::vector<JointRecord>& joints, const mpq_class& s, std::size_t L) {
  if (s <= 0) fail(errc::invalid_argument, "kakeya exponent must be positive");
  KakeyaSum out;
  double sd = mpq_to_double(s);
  for (const JointRecord& j : joints) {
    out.multiset[j.m] += 1;
    out.sum += std::pow(static_cast<double>(j.m), sd);
  }
  out.ratio = L == 0 ? 0.0 : out.sum / std::pow(static_cast<double>(L), sd);
  return out;
}

LevelTable dyadic_levels(const std::vector<JointRecord>& joints) {
  LevelTable table;
  for (std::size_t i = 0; i < joints.size(); ++i) {
    std::size_t m = joints[i].m;
    if (m == 0) continue;
    std::size_t k = 1;
    while (2 * k <= m) k *= 2;  // k <= m < 2k
    table[k].push_back(i);
  }
  return table;
}

std::map<std::size_t, LevelClass> classify_levels(const LevelTable& table,
                                                  const std::vector<JointRecord>& joints,
                                                  std::size_t L, const mpq_class& eps,
                                                  const mpq_class& C, const mpq_class& c) {
  (void)joints;
  if (!(eps > 0 && eps < mpq_class(1, 2)))
    fail(errc::invalid_argument, "epsilon must lie in (0, 1/2)");
  if (!(C > 0) || !(c > 0)) fail(errc::invalid_argument, "constants must be positive");

  mpq_class eps_c = eps;
  eps_c.canonicalize();
  // eps = a/b; goodness |J_k| k^{2-eps/2} <= C L^{3/2} raised to the power 2b:
  //   |J_k|^{2b} k^{4b-a} Cd^{2b} <= Cn^{2b} L^{3b}, all integers.
  mpz_class a = eps_c.get_num(), b = eps_c.get_den();
  unsigned long ul_a = mpz_get_ui(a.get_mpz_t());
  unsigned long ul_b = mpz_get_ui(b.get_mpz_t());
  mpq_class C_c = C;
  C_c.canonicalize();
  mpq_class c_c = c;
  c_c.canonicalize();

  std::map<std::size_t, LevelClass> out;
  for (const auto& [k, members] : table) {
    LevelClass cls;
    mpz_class lhs, rhs, t;
    mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(members.size()), 2 * ul_b);
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(k), 4 * ul_b - ul_a);
    lhs *= t;
    mpz_pow_ui(t.get_mpz_t(), C_c.get_den().get_mpz_t(), 2 * ul_b);
    lhs *= t;
    mpz_pow_ui(rhs.get_mpz_t(), C_c.get_num().get_mpz_t(), 2 * ul_b);
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(L), 3 * ul_b);
    rhs *= t;
    cls.good = lhs <= rhs;
    // large iff k > c sqrt(L): k^2 cd^2 > cn^2 L
    mpz_class lk = mpz_class(static_cast<unsigned long>(k)) * static_cast<unsigned long>(k) *
                   c_c.get_den() * c_c.get_den();
    mpz_class rk = c_c.get_num() * c_c.get_num() * static_cast<unsigned long>(L);
    cls.large = lk > rk;
    out[k] = cls;
  }
  return out;
}

STReport st_incidences(const std::vector<Vec>& points2d, const std::vector<Line>& lines2d) {
  for (const Vec& p : points2d)
    if (p.size() != 2) fail(errc::invalid_argument, "st_incidences expects planar points");
  for (const Line& l : lines2d)
    if (l.sub.ambient_dim() != 2)
      fail(errc::invalid_argument, "st_incidences expects planar lines");

  STReport rep;
  std::vector<std::size_t> per_point(points2d.size(), 0);
  for (std::size_t i = 0; i < points2d.size(); ++i)
    for (const Line& l : lines2d)
      if (l.sub.contains(points2d[i])) ++per_point[i];
  for (std::size_t c : per_point) rep.incidences += c;

  for (std::size_t c : per_point) {
    if (c < 2) continue;
    std::size_t k = 2;
    while (2 * k <= c) k *= 2;
    rep.level_counts[k] += 1;
  }

  double S = static_cast<double>(points2d.size());
  double L = static_cast<double>(lines2d.size());
  double bound = std::pow(S, 2.0 / 3.0) * std::pow(L, 2.0 / 3.0) + L + S;
  rep.st_ratio = bound == 0.0 ? 0.0 : static_cast<double>(rep.incidences) / bound;
  for (const auto& [k, count] : rep.level_counts) {
    double kd = static_cast<double>(k);
    double level_bound = L * L / (kd * kd * kd) + L / kd;
    rep.level_ratios[k] = level_bound == 0.0 ? 0.0 : static_cast<double>(count) / level_bound;
  }
  return rep;
}

STReport st_incidences_in_plane(const AffineSubspace& plane, const std::vector<Vec>& points,
                                const std::vector<Line>& lines) {
  if (plane.dim() != 2) fail(errc::invalid_argument, "expected a 2-plane");
  std::vector<Vec> pts2;
  pts2.reserve(points.size());
  for (const Vec& x : points) {
    if (!plane.contains(x)) fail(errc::invalid_argument, "point is off the plane");
    pts2.push_back(plane.parameters_of(x));
  }
  std::vector<Line> lines2;
  lines2.reserve(lines.size());
  for (const Line& l : lines) {
    if (!plane.contains_subspace(l.sub)) fail(errc::invalid_argument, "line is off the plane");
    Vec base = plane.parameters_of(l.base_point());
    auto dir = solve(plane.directions(), l.direction());
    if (!dir) fail(errc::internal, "contained line direction must lie in the plane");
    lines2.emplace_back(AffineSubspace(base, {*dir}), l.id);
  }
  return st_incidences(pts2, lines2);
}

std::size_t total_incidences(const std::vector<JointRecord>& joints) {
  std::size_t total = 0;
  for (const JointRecord& j : joints) total += j.m;
  return total;
}

}  // namespace jointkit
