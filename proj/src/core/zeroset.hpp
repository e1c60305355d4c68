#ifndef JOINTKIT_ZEROSET_HPP
#define JOINTKIT_ZEROSET_HPP

#include <string>
#include <vector>

#include "hasse.hpp"
#include "incidence.hpp"

namespace jointkit {

// Variety in F^3 given in factored form (no factorization is performed).
// Factors are normalized to leading coefficient 1 in graded-lex order and
// de-duplicated, so scalar multiples collide; p is the full product with
// multiplicities, p_sf the product of the distinct factors.
class FactoredVariety {
 public:
  explicit FactoredVariety(const std::vector<std::pair<MultiPoly, unsigned>>& factors);

  const std::vector<MultiPoly>& factors() const { return factors_; }  // distinct, normalized
  const MultiPoly& product() const { return product_; }
  const MultiPoly& square_free() const { return square_free_; }
  unsigned degree() const { return degree_; }  // deg p, multiplicities included
  const Field& field() const { return field_; }

  bool on_zero_set(const Vec& x) const;
  bool line_in_zero_set(const Line& l) const;
  // Planes contained in Z: zero sets of the degree-1 factors.
  bool line_in_plane_factor(const Line& l) const;

 private:
  std::vector<MultiPoly> factors_;
  MultiPoly product_;
  MultiPoly square_free_;
  unsigned degree_ = 0;
  Field field_;
};

// Normalized product of the distinct factors (same zero set as the product).
MultiPoly square_free_part(const FactoredVariety& v);

enum class PointClass { Critical, Regular, Flat };
enum class LineClass { CriticalLine, FlatLine, Generic };

std::string to_string(PointClass c);
std::string to_string(LineClass c);

// x must lie on Z and every supplied line must lie in Z (and pass through x).
// Critical: all first Hasse partials of p_sf vanish at x. Flat: regular with
// at least three coplanar supplied lines.
PointClass classify_point(const FactoredVariety& v, const Vec& x,
                          const std::vector<Line>& incident_lines);

// CriticalLine: every first partial of p_sf restricts to the zero polynomial
// on l. Otherwise FlatLine when at least 3d-3 witnesses are flat points
// (witnesses on a plane factor and regular count as flat: the plane supplies
// three coplanar lines of Z through them). Otherwise Generic.
LineClass classify_line(const FactoredVariety& v, const Line& l,
                        const std::vector<Vec>& flat_witnesses);

struct LineCensus {
  std::size_t critical = 0;
  std::size_t flat_in_plane = 0;
  std::size_t flat_not_in_plane = 0;
  std::size_t generic = 0;
  bool critical_bound_ok = true;       // critical <= d^2
  bool flat_not_in_plane_bound_ok = true;  // flat_not_in_plane <= max(3d^2-4d, 0)
};

LineCensus line_census(const FactoredVariety& v, const std::vector<Line>& candidates);

// ---- planar and nearly planar structure -----------------------------------

struct PlanarPartition {
  std::vector<AffineSubspace> planes;
  std::vector<std::vector<Vec>> joints_per_plane;  // assignment J_Pi; a partition of J
};

struct Violation {
  std::string kind;    // "joint-off-plane", "p1", "p2", "level-thinned", ...
  std::string detail;  // witnessing joint/line/level
};

struct StructureCertificate {
  PlanarPartition partition;
  std::vector<std::vector<unsigned>> lines_per_plane;  // computed L_Pi (line ids)
  mpq_class c1;
  std::vector<Violation> violations;
  bool accepted = false;
};

// Exact verifier of Definition "planar structure". The assignment must cover
// the joint set exactly (errors otherwise); violations of J_Pi within Pi, P1
// and P2 are listed in the certificate.
StructureCertificate planar_structure_verify(const std::vector<JointRecord>& joints,
                                             const LineFamily& lines,
                                             const PlanarPartition& partition,
                                             const mpq_class& c1);

struct SearchOutcome {
  bool success = false;
  StructureCertificate certificate;  // verified when success
  mpq_class best_c1 = 0;             // best P1 fraction achievable by one plane per joint
  std::vector<Violation> blocking;
};

// Greedy heuristic: per joint, planes spanned by pairs of incident lines,
// scored by in-plane incident count, best first; P2 conflicts repaired by
// demoting joints to their next candidate. Success is always re-verified.
SearchOutcome planar_structure_search(const std::vector<JointRecord>& joints,
                                      const LineFamily& lines, const mpq_class& c1);

struct NearlyPlanarVerdict {
  bool accepted = false;
  std::vector<Violation> violations;        // level-thinned etc.
  StructureCertificate planar_certificate;  // of the union of the subsets
};

// Per-level subsets J_k' (keyed by dyadic k, values are joint points) must
// sit inside their levels; checks |J_k'| >= c2 |J_k| for every level of J and
// planar structure of the union.
NearlyPlanarVerdict nearly_planar_verify(const std::vector<JointRecord>& joints,
                                         const LineFamily& lines,
                                         const std::map<std::size_t, std::vector<Vec>>& level_subsets,
                                         const PlanarPartition& partition, const mpq_class& c1,
                                         const mpq_class& c2);

struct PlaneKakeyaRow {
  std::size_t plane_index = 0;
  std::size_t l_pi = 0;                              // |L_Pi|
  std::map<std::size_t, std::size_t> level_counts;   // k -> |J_{k,Pi}|
  double sum = 0.0;                                  // sum_k |J_{k,Pi}| k^{3/2}
  double ratio = 0.0;                                // sum / (L_Pi sqrt(L))
};

struct PlaneKakeyaReport {
  std::vector<PlaneKakeyaRow> rows;
  std::size_t sum_l_pi = 0;
  bool aggregate_ok = false;  // sum over planes of L_Pi <= L, exact
};

PlaneKakeyaReport per_plane_kakeya_report(const StructureCertificate& cert,
                                          const std::vector<JointRecord>& joints,
                                          std::size_t L_total);

}  // namespace jointkit

#endif
