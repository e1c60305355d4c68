#ifndef JOINTKIT_INCIDENCE_HPP
#define JOINTKIT_INCIDENCE_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "affine.hpp"

namespace jointkit {

// Finite family of pairwise distinct lines in F^n. Construction canonicalizes
// and rejects duplicates.
struct LineFamily {
  std::size_t n = 3;
  Field field = Field::rationals();
  std::vector<Line> lines;

  LineFamily() = default;
  LineFamily(std::size_t ambient, const Field& f) : n(ambient), field(f) {}

  // Appends with the next id; errors on duplicates (same subspace) and on the
  // central line cap.
  void add(AffineSubspace line_subspace);
  std::size_t size() const { return lines.size(); }
};

struct PlaneFamily {
  std::size_t n = 3;
  std::size_t k = 2;
  Field field = Field::rationals();
  std::vector<AffineSubspace> planes;

  void add(AffineSubspace plane);
};

// A point together with all incident lines of the family; kept only when the
// incident directions span F^n. N is the ordered n-tuple multiplicity.
struct JointRecord {
  Vec point;
  std::vector<unsigned> incident_lines;  // sorted line ids
  std::size_t m = 0;                     // incidence count = |incident_lines|
  std::uint64_t tuple_count = 0;         // N(x)
};

std::vector<JointRecord> find_joints(const LineFamily& family);

// N(x): ordered n-tuples of incident lines with linearly independent
// directions, counted by depth-first enumeration with prefix rank pruning.
std::uint64_t joint_tuple_multiplicity(const JointRecord& joint, const LineFamily& family);

struct MultijointRecord {
  Vec point;
  std::uint64_t tuple_count = 0;  // N'(x): tuples (plane, one line per family) spanning F^n
  std::vector<unsigned> incident_planes;                // plane indices
  std::vector<std::vector<unsigned>> incident_lines;    // per family, line ids
};

std::vector<MultijointRecord> find_multijoints(const PlaneFamily& planes,
                                               const std::vector<LineFamily>& line_families);

// Exact multiset of incidence counts plus floating-point power sums.
struct KakeyaSum {
  std::map<std::size_t, std::size_t> multiset;  // m -> number of joints with that m
  double sum = 0.0;                             // sum over joints of m^s
  double ratio = 0.0;                           // sum / L^s
};

// s > 0 rational (e.g. 3/2 or 2 - eps). Powers are double precision; the
// multiset is exact and carries all information needed to recompute.
KakeyaSum kakeya_sum(const std::vector<JointRecord>& joints, const mpq_class& s, std::size_t L);

// Dyadic level k (1,2,4,...) -> indices of joints with k <= m < 2k.
using LevelTable = std::map<std::size_t, std::vector<std::size_t>>;

LevelTable dyadic_levels(const std::vector<JointRecord>& joints);

struct LevelClass {
  bool good = false;   // |J_k| k^{2-eps/2} <= C L^{3/2}, compared exactly
  bool large = false;  // k > c L^{1/2}, compared exactly
};

// 0 < eps < 1/2, C > 0, c > 0, all rational; comparisons done on integers by
// clearing the fractional exponents.
std::map<std::size_t, LevelClass> classify_levels(const LevelTable& table,
                                                  const std::vector<JointRecord>& joints,
                                                  std::size_t L, const mpq_class& eps,
                                                  const mpq_class& C, const mpq_class& c);

// Szemeredi-Trotter style exact incidence counting for points and lines with
// planar (2-dimensional) coordinates.
struct STReport {
  std::size_t incidences = 0;
  std::map<std::size_t, std::size_t> level_counts;  // k -> |S_k| for dyadic k >= 2
  double st_ratio = 0.0;                            // I / (|S|^{2/3}|L|^{2/3} + |L| + |S|)
  std::map<std::size_t, double> level_ratios;       // |S_k| / (L^2/k^3 + L/k)
};

STReport st_incidences(const std::vector<Vec>& points2d, const std::vector<Line>& lines2d);

// Convenience wrapper: 3d points/lines inside a given plane are mapped to the
// plane's parameter space; errors when anything is off the plane.
STReport st_incidences_in_plane(const AffineSubspace& plane, const std::vector<Vec>& points,
                                const std::vector<Line>& lines);

// Exact check sum_x m(x) == sum over lines of points on them; used as the
// s = 1 cross-check of kakeya_sum.
std::size_t total_incidences(const std::vector<JointRecord>& joints);

}  // namespace jointkit

#endif
