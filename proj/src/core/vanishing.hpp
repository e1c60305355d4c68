#ifndef JOINTKIT_VANISHING_HPP
#define JOINTKIT_VANISHING_HPP

#include <string>
#include <vector>

#include "generators.hpp"
#include "hasse.hpp"
#include "incidence.hpp"

namespace jointkit {

// All Hasse derivatives of order < order vanish at x.
struct PointOrderConstraint {
  Vec point;
  unsigned order = 1;
};

// For every |lambda| <= max_order, the derivative in the transverse
// directions of the outer plane, restricted to the inner plane, vanishes
// identically.
struct PlaneTransverseConstraint {
  AffineSubspace inner;            // Pi, (k-1)-dimensional, contained in outer
  AffineSubspace outer;            // P, k-dimensional
  std::vector<Vec> transverse;     // n-k directions transverse to P
  unsigned max_order = 0;          // A
};

struct VanishingSpec {
  std::size_t n = 0;
  Field field = Field::rationals();
  std::vector<PointOrderConstraint> points;
  std::vector<PlaneTransverseConstraint> planes;

  void validate() const;  // containment and transversality
};

// Rows are linear functionals on the coefficient vector of a degree <= D
// polynomial; columns follow the graded-lex monomial enumeration.
struct ConditionMatrix {
  Mat matrix = Mat(0, 0, Field::rationals());
  std::vector<Exponents> columns;
  unsigned degree_bound = 0;
};

// Point constraints contribute one row per |a| < order with entries
// binom(c,a) x^{c-a}. Plane constraints force the restricted derivative,
// a polynomial of total degree <= D in k-1 parameters, to vanish on a
// (D+1)^{k-1} evaluation grid; sufficient because the per-variable degree is
// <= D. Requires |F| > D.
ConditionMatrix build_conditions(const VanishingSpec& spec, unsigned degree_bound);

struct Annihilator {
  unsigned degree = 0;
  MultiPoly poly = MultiPoly(0, Field::rationals());
};

// Smallest D <= d_max with a nontrivial kernel; the returned polynomial is
// the deterministic kernel vector scaled so its first nonzero coefficient in
// the graded-lex column order is 1. Guaranteed to exist at any D where the
// row count is below binom(n+D, D).
Annihilator min_degree_annihilator(const VanishingSpec& spec, unsigned d_max);

struct VanishingReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

VanishingReport verify_vanishing(const MultiPoly& p, const VanishingSpec& spec);

struct MarkedRoot {
  Vec point;
  unsigned claimed_order = 1;
};

struct RootAccount {
  unsigned derivative_order = 0;   // order of D_l p
  unsigned q_degree = 0;           // deg of D_l p restricted to l
  std::vector<unsigned> actual;    // exact multiplicity of q at each marked parameter
  std::size_t total_actual = 0;
  bool bezout_ok = false;          // total <= deg q <= deg p
  std::vector<std::string> violations;  // claims exceeding the actual multiplicity
};

RootAccount line_root_accounting(const MultiPoly& p, const Line& l,
                                 const std::vector<MarkedRoot>& marked);

// True iff some |lambda| <= budget has a nonzero restricted transverse
// derivative on the plane; by order invariance this equals "minimal
// transverse order <= budget".
bool exceptional_plane_test(const MultiPoly& p, const AffineSubspace& plane,
                            const std::vector<Vec>& transverse, unsigned budget);

// ---- multijoint dichotomy harness ------------------------------------------

struct DichotomyPoint {
  Vec point;
  unsigned plane;                    // chosen plane index
  Exponents minimal_index;           // w.r.t. (plane dirs, chosen line dirs)
  unsigned tail = 0;                 // sum of the line-direction entries
  bool type1 = false;                // tail > budget
  bool line_mult_ok = false;         // type 1: mult(D_l p|_l, t_x) >= a_{k+i} >= 1
  bool exceptional_ok = false;       // type 2: chosen plane is exceptional
};

struct DichotomyResult {
  Annihilator annihilator;
  unsigned budget = 0;  // A
  std::size_t b_planes_per_point = 0;
  std::vector<DichotomyPoint> points;
  std::size_t type1 = 0;
  std::size_t type2 = 0;
  std::size_t unclassified = 0;  // points failing their side's check
  bool bezout_ok = true;         // type-1 accounting per line
};

// Realizes the counting scheme on a concrete configuration: constructs B
// distinct (k-1)-planes through each multijoint inside its chosen k-plane,
// builds the minimal-degree polynomial with transverse orders <= A vanishing
// on all of them, and classifies every multijoint as type 1 (counted along a
// line via its minimal derivative) or type 2 (its plane is exceptional).
DichotomyResult multijoint_dichotomy(const MultijointConfig& cfg, unsigned budget,
                                     std::size_t b_planes, unsigned d_max);

}  // namespace jointkit

#endif
