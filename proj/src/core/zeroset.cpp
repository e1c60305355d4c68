#include "zeroset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "error.hpp"

namespace jointkit {

namespace {

struct PointLess {
  bool operator()(const Vec& a, const Vec& b) const {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return a.size() < b.size();
  }
};

std::string point_str(const Vec& x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i].str();
  os << ")";
  return os.str();
}

MultiPoly normalize_leading(const MultiPoly& p) {
  // leading coefficient 1 in graded-lex order (largest term)
  const auto& terms = p.terms();
  Value lead = terms.rbegin()->second;
  return p.scaled(lead.inv());
}

Exponents unit_exp(std::size_t n, std::size_t i) {
  Exponents a(n, 0);
  a[i] = 1;
  return a;
}

}  // namespace

FactoredVariety::FactoredVariety(const std::vector<std::pair<MultiPoly, unsigned>>& factors)
    : product_(3, factors.empty() ? Field::rationals() : factors[0].first.field()),
      square_free_(3, factors.empty() ? Field::rationals() : factors[0].first.field()),
      field_(factors.empty() ? Field::rationals() : factors[0].first.field()) {
  if (factors.empty()) fail(errc::invalid_argument, "a variety needs at least one factor");
  product_ = MultiPoly::constant(3, field_.one());
  for (const auto& [f, mult] : factors) {
    if (f.nvars() != 3) fail(errc::invalid_argument, "variety factors live in 3 variables");
    if (f.field() != field_) fail(errc::invalid_argument, "variety factor field mismatch");
    if (f.is_constant()) fail(errc::invalid_argument, "scalar factor is not allowed");
    if (mult == 0) fail(errc::invalid_argument, "factor multiplicity must be >= 1");
    MultiPoly norm = normalize_leading(f);
    bool seen = false;
    for (const MultiPoly& g : factors_)
      if (g == norm) {
        seen = true;
        break;
      }
    if (!seen) factors_.push_back(norm);
    for (unsigned i = 0; i < mult; ++i) product_ = product_ * norm;
  }
  square_free_ = MultiPoly::constant(3, field_.one());
  for (const MultiPoly& g : factors_) square_free_ = square_free_ * g;
  degree_ = product_.degree().value_or(0);
}

bool FactoredVariety::on_zero_set(const Vec& x) const {
  return product_.evaluate(x).is_zero();
}

bool FactoredVariety::line_in_zero_set(const Line& l) const {
  return restrict_to_plane(product_, l.sub).is_zero();
}

bool FactoredVariety::line_in_plane_factor(const Line& l) const {
  for (const MultiPoly& f : factors_) {
    if (f.degree().value_or(0) != 1) continue;
    if (restrict_to_plane(f, l.sub).is_zero()) return true;
  }
  return false;
}

MultiPoly square_free_part(const FactoredVariety& v) { return v.square_free(); }

std::string to_string(PointClass c) {
  switch (c) {
    case PointClass::Critical: return "critical";
    case PointClass::Regular: return "regular";
    case PointClass::Flat: return "flat";
  }
  return "?";
}

std::string to_string(LineClass c) {
  switch (c) {
    case LineClass::CriticalLine: return "critical";
    case LineClass::FlatLine: return "flat";
    case LineClass::Generic: return "generic";
  }
  return "?";
}

namespace {
bool gradient_vanishes_at(const FactoredVariety& v, const Vec& x) {
  for (std::size_t i = 0; i < 3; ++i)
    if (!v.square_free().hasse_derivative(unit_exp(3, i)).evaluate(x).is_zero()) return false;
  return true;
}

// A regular point sitting on a plane factor is flat: the plane supplies at
// least three coplanar lines of Z through it.
bool on_plane_factor(const FactoredVariety& v, const Vec& x) {
  for (const MultiPoly& f : v.factors())
    if (f.degree().value_or(0) == 1 && f.evaluate(x).is_zero()) return true;
  return false;
}
}  // namespace

PointClass classify_point(const FactoredVariety& v, const Vec& x,
                          const std::vector<Line>& incident_lines) {
  if (!v.on_zero_set(x)) fail(errc::invalid_argument, "point is not on the zero set");
  for (const Line& l : incident_lines) {
    if (!l.sub.contains(x))
      fail(errc::invalid_argument, "supplied line does not pass through the point");
    if (!v.line_in_zero_set(l))
      fail(errc::invalid_argument, "supplied line does not lie in the zero set");
  }
  if (gradient_vanishes_at(v, x)) return PointClass::Critical;
  // flat: some plane contains >= 3 of the incident lines, i.e. a triple of
  // directions with rank <= 2 (all lines pass through x)
  std::size_t c = incident_lines.size();
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = a + 1; b < c; ++b)
      for (std::size_t d = b + 1; d < c; ++d) {
        std::vector<Vec> dirs = {incident_lines[a].direction(), incident_lines[b].direction(),
                                 incident_lines[d].direction()};
        if (direction_rank(dirs, v.field(), 3) <= 2) return PointClass::Flat;
      }
  return PointClass::Regular;
}

LineClass classify_line(const FactoredVariety& v, const Line& l,
                        const std::vector<Vec>& flat_witnesses) {
  if (!v.line_in_zero_set(l)) fail(errc::invalid_argument, "line does not lie in the zero set");
  bool critical = true;
  for (std::size_t i = 0; i < 3 && critical; ++i) {
    MultiPoly partial = v.square_free().hasse_derivative(unit_exp(3, i));
    if (!restrict_to_plane(partial, l.sub).is_zero()) critical = false;
  }
  if (critical) return LineClass::CriticalLine;

  std::size_t needed = v.degree() >= 1 ? 3 * v.degree() - 3 : 0;
  std::size_t flat = 0;
  for (const Vec& w : flat_witnesses) {
    if (!l.sub.contains(w)) fail(errc::invalid_argument, "witness is off the line");
    if (gradient_vanishes_at(v, w)) continue;  // critical, not flat
    if (on_plane_factor(v, w)) ++flat;
  }
  if (needed == 0 || flat >= needed) return LineClass::FlatLine;
  return LineClass::Generic;
}

LineCensus line_census(const FactoredVariety& v, const std::vector<Line>& candidates) {
  LineCensus census;
  unsigned d = v.degree();
  // witness parameters 0..4d on each candidate; plenty beyond the 3d-3 target
  std::size_t witness_count = 4 * d + 1;
  if (v.field().is_prime_field())
    witness_count = std::min<std::size_t>(witness_count, v.field().modulus());
  std::vector<Value> params = v.field().first_elements(witness_count);

  for (const Line& l : candidates) {
    std::vector<Vec> witnesses;
    witnesses.reserve(params.size());
    for (const Value& t : params) witnesses.push_back(l.sub.point_at({t}));
    switch (classify_line(v, l, witnesses)) {
      case LineClass::CriticalLine:
        ++census.critical;
        break;
      case LineClass::FlatLine:
        if (v.line_in_plane_factor(l)) ++census.flat_in_plane;
        else ++census.flat_not_in_plane;
        break;
      case LineClass::Generic:
        ++census.generic;
        break;
    }
  }
  census.critical_bound_ok = census.critical <= static_cast<std::size_t>(d) * d;
  std::size_t flat_bound = 3ull * d * d >= 4ull * d ? 3ull * d * d - 4ull * d : 0;
  census.flat_not_in_plane_bound_ok = census.flat_not_in_plane <= flat_bound;
  return census;
}

StructureCertificate planar_structure_verify(const std::vector<JointRecord>& joints,
                                             const LineFamily& lines,
                                             const PlanarPartition& partition,
                                             const mpq_class& c1) {
  if (!(c1 > 0) || c1 > 1) fail(errc::invalid_argument, "c1 must lie in (0, 1]");
  if (partition.planes.size() != partition.joints_per_plane.size())
    fail(errc::invalid_argument, "partition: one joint set per plane required");

  StructureCertificate cert;
  cert.partition = partition;
  cert.c1 = c1;
  cert.c1.canonicalize();

  std::map<Vec, std::size_t, PointLess> joint_index;
  for (std::size_t i = 0; i < joints.size(); ++i) joint_index.emplace(joints[i].point, i);

  // the assignment must be a partition of J
  std::vector<int> assigned(joints.size(), -1);
  for (std::size_t pi = 0; pi < partition.planes.size(); ++pi) {
    for (const Vec& x : partition.joints_per_plane[pi]) {
      auto it = joint_index.find(x);
      if (it == joint_index.end())
        fail(errc::invalid_argument, "partition assigns a point that is not a joint: " + point_str(x));
      if (assigned[it->second] >= 0)
        fail(errc::invalid_argument, "partition assigns joint twice: " + point_str(x));
      assigned[it->second] = static_cast<int>(pi);
    }
  }
  for (std::size_t i = 0; i < joints.size(); ++i)
    if (assigned[i] < 0)
      fail(errc::invalid_argument, "partition leaves a joint uncovered: " + point_str(joints[i].point));

  // J_Pi subset of Pi
  for (std::size_t pi = 0; pi < partition.planes.size(); ++pi)
    for (const Vec& x : partition.joints_per_plane[pi])
      if (!partition.planes[pi].contains(x))
        cert.violations.push_back({"joint-off-plane",
                                   "joint " + point_str(x) + " not on plane " + std::to_string(pi)});

  // L_Pi: lines inside Pi meeting J_Pi; computed from the exact incident sets
  cert.lines_per_plane.assign(partition.planes.size(), {});
  std::vector<std::set<unsigned>> l_pi_sets(partition.planes.size());
  for (std::size_t pi = 0; pi < partition.planes.size(); ++pi) {
    std::set<unsigned> touching;
    for (const Vec& x : partition.joints_per_plane[pi]) {
      auto it = joint_index.find(x);
      for (unsigned id : joints[it->second].incident_lines) touching.insert(id);
    }
    for (unsigned id : touching)
      if (partition.planes[pi].contains_subspace(lines.lines.at(id).sub)) l_pi_sets[pi].insert(id);
    cert.lines_per_plane[pi].assign(l_pi_sets[pi].begin(), l_pi_sets[pi].end());
  }

  // P1 with the exact fraction c1
  for (std::size_t pi = 0; pi < partition.planes.size(); ++pi) {
    for (const Vec& x : partition.joints_per_plane[pi]) {
      const JointRecord& rec = joints[joint_index[x]];
      std::size_t through = 0;
      for (unsigned id : rec.incident_lines)
        if (l_pi_sets[pi].count(id)) ++through;
      // through >= c1 * m  <=>  through * den >= num * m
      mpz_class lhs = mpz_class(static_cast<unsigned long>(through)) * cert.c1.get_den();
      mpz_class rhs = cert.c1.get_num() * static_cast<unsigned long>(rec.m);
      if (lhs < rhs)
        cert.violations.push_back(
            {"p1", "joint " + point_str(x) + " has " + std::to_string(through) + " of " +
                       std::to_string(rec.m) + " lines in its plane " + std::to_string(pi)});
    }
  }

  // P2: pairwise disjoint L_Pi
  std::map<unsigned, std::size_t> owner;
  for (std::size_t pi = 0; pi < partition.planes.size(); ++pi)
    for (unsigned id : l_pi_sets[pi]) {
      auto [it, inserted] = owner.emplace(id, pi);
      if (!inserted)
        cert.violations.push_back(
            {"p2", "line " + std::to_string(id) + " lies in L_Pi of planes " +
                       std::to_string(it->second) + " and " + std::to_string(pi)});
    }

  cert.accepted = cert.violations.empty();
  return cert;
}

SearchOutcome planar_structure_search(const std::vector<JointRecord>& joints,
                                      const LineFamily& lines, const mpq_class& c1) {
  if (lines.n != 3) fail(errc::invalid_argument, "structure search works in ambient dimension 3");
  SearchOutcome out;

  struct Candidate {
    AffineSubspace plane;
    std::size_t score;
  };
  // per joint: candidate planes spanned by pairs of incident lines, best first
  std::vector<std::vector<Candidate>> cands(joints.size());
  out.best_c1 = joints.empty() ? mpq_class(1) : mpq_class(1);
  for (std::size_t ji = 0; ji < joints.size(); ++ji) {
    const JointRecord& rec = joints[ji];
    std::map<AffineSubspace, std::size_t> seen;
    for (std::size_t a = 0; a < rec.incident_lines.size(); ++a)
      for (std::size_t b = a + 1; b < rec.incident_lines.size(); ++b) {
        Vec da = lines.lines.at(rec.incident_lines[a]).direction();
        Vec db = lines.lines.at(rec.incident_lines[b]).direction();
        if (direction_rank({da, db}, lines.field, 3) != 2) continue;
        AffineSubspace plane(rec.point, {da, db});
        if (seen.count(plane)) continue;
        std::size_t score = 0;
        for (unsigned id : rec.incident_lines)
          if (plane.contains_subspace(lines.lines.at(id).sub)) ++score;
        seen.emplace(std::move(plane), score);
      }
    for (const auto& [plane, score] : seen) cands[ji].push_back({plane, score});
    std::stable_sort(cands[ji].begin(), cands[ji].end(), [](const Candidate& x, const Candidate& y) {
      if (x.score != y.score) return x.score > y.score;
      return x.plane < y.plane;
    });
    if (cands[ji].empty()) {
      out.blocking.push_back({"no-plane", "joint " + point_str(rec.point) + " spans no plane"});
      return out;
    }
    mpq_class frac(static_cast<unsigned long>(cands[ji][0].score),
                   static_cast<unsigned long>(rec.m));
    frac.canonicalize();
    if (frac < out.best_c1) out.best_c1 = frac;
  }

  std::vector<std::size_t> choice(joints.size(), 0);
  auto build_partition = [&]() {
    std::map<AffineSubspace, std::vector<Vec>> acc;
    for (std::size_t ji = 0; ji < joints.size(); ++ji)
      acc[cands[ji][choice[ji]].plane].push_back(joints[ji].point);
    PlanarPartition part;
    for (auto& [plane, pts] : acc) {
      part.planes.push_back(plane);
      part.joints_per_plane.push_back(pts);
    }
    return part;
  };

  // a line is conflicted when two chosen planes both contain it and carry
  // assigned joints on it; demote one such joint to its next candidate
  auto find_demotion = [&]() -> std::optional<std::size_t> {
    std::map<unsigned, std::set<std::size_t>> claiming;  // line id -> plane-owning joints
    std::map<unsigned, std::set<const AffineSubspace*>> plane_of;
    for (std::size_t ji = 0; ji < joints.size(); ++ji) {
      const AffineSubspace& plane = cands[ji][choice[ji]].plane;
      for (unsigned id : joints[ji].incident_lines) {
        if (!plane.contains_subspace(lines.lines.at(id).sub)) continue;
        claiming[id].insert(ji);
        plane_of[id].insert(&plane);
      }
    }
    for (const auto& [id, owners] : plane_of) {
      bool distinct = false;
      const AffineSubspace* first = *owners.begin();
      for (const AffineSubspace* p : owners)
        if (!(*p == *first)) distinct = true;
      if (!distinct) continue;
      // deterministic: demote the lowest-index joint on the line that can
      // still advance
      for (std::size_t ji : claiming[id])
        if (choice[ji] + 1 < cands[ji].size()) return ji;
    }
    return std::nullopt;
  };

  for (std::size_t round = 0; round <= joints.size() * 4; ++round) {
    PlanarPartition part = build_partition();
    StructureCertificate cert = planar_structure_verify(joints, lines, part, c1);
    if (cert.accepted) {
      out.success = true;
      out.certificate = std::move(cert);
      return out;
    }
    auto demote = find_demotion();
    if (!demote) {
      out.blocking = cert.violations;
      return out;
    }
    ++choice[*demote];
  }
  PlanarPartition final_part = build_partition();
  StructureCertificate cert = planar_structure_verify(joints, lines, final_part, c1);
  if (cert.accepted) {
    out.success = true;
    out.certificate = std::move(cert);
  } else {
    out.blocking = cert.violations;
  }
  return out;
}

NearlyPlanarVerdict nearly_planar_verify(const std::vector<JointRecord>& joints,
                                         const LineFamily& lines,
                                         const std::map<std::size_t, std::vector<Vec>>& level_subsets,
                                         const PlanarPartition& partition, const mpq_class& c1,
                                         const mpq_class& c2) {
  if (!(c2 > 0) || c2 > 1) fail(errc::invalid_argument, "c2 must lie in (0, 1]");
  NearlyPlanarVerdict verdict;

  LevelTable levels = dyadic_levels(joints);
  std::map<std::size_t, std::set<Vec, PointLess>> level_points;
  for (const auto& [k, members] : levels)
    for (std::size_t i : members) level_points[k].insert(joints[i].point);

  // subsets must sit inside their levels
  std::map<Vec, char, PointLess> selected;
  for (const auto& [k, subset] : level_subsets) {
    auto it = level_points.find(k);
    for (const Vec& x : subset) {
      if (it == level_points.end() || !it->second.count(x))
        fail(errc::invalid_argument,
             "subset point " + point_str(x) + " is not in level " + std::to_string(k));
      selected.emplace(x, 0);
    }
  }

  mpq_class c2c = c2;
  c2c.canonicalize();
  for (const auto& [k, members] : levels) {
    std::size_t chosen = 0;
    auto it = level_subsets.find(k);
    if (it != level_subsets.end()) chosen = it->second.size();
    // chosen >= c2 |J_k|
    mpz_class lhs = mpz_class(static_cast<unsigned long>(chosen)) * c2c.get_den();
    mpz_class rhs = c2c.get_num() * static_cast<unsigned long>(members.size());
    if (lhs < rhs)
      verdict.violations.push_back(
          {"level-thinned", "level " + std::to_string(k) + " keeps " + std::to_string(chosen) +
                                " of " + std::to_string(members.size()) + " joints"});
  }

  std::vector<JointRecord> chosen_joints;
  for (const JointRecord& rec : joints)
    if (selected.count(rec.point)) chosen_joints.push_back(rec);
  verdict.planar_certificate = planar_structure_verify(chosen_joints, lines, partition, c1);
  verdict.accepted = verdict.violations.empty() && verdict.planar_certificate.accepted;
  return verdict;
}

PlaneKakeyaReport per_plane_kakeya_report(const StructureCertificate& cert,
                                          const std::vector<JointRecord>& joints,
                                          std::size_t L_total) {
  PlaneKakeyaReport rep;
  std::map<Vec, std::size_t, PointLess> joint_index;
  for (std::size_t i = 0; i < joints.size(); ++i) joint_index.emplace(joints[i].point, i);

  for (std::size_t pi = 0; pi < cert.partition.planes.size(); ++pi) {
    PlaneKakeyaRow row;
    row.plane_index = pi;
    row.l_pi = cert.lines_per_plane[pi].size();
    for (const Vec& x : cert.partition.joints_per_plane[pi]) {
      auto it = joint_index.find(x);
      if (it == joint_index.end()) continue;
      std::size_t m = joints[it->second].m;
      std::size_t k = 1;
      while (2 * k <= m) k *= 2;
      row.level_counts[k] += 1;
    }
    for (const auto& [k, count] : row.level_counts)
      row.sum += static_cast<double>(count) * std::pow(static_cast<double>(k), 1.5);
    double denom = static_cast<double>(row.l_pi) * std::sqrt(static_cast<double>(L_total));
    row.ratio = denom == 0.0 ? 0.0 : row.sum / denom;
    rep.sum_l_pi += row.l_pi;
    rep.rows.push_back(std::move(row));
  }
  rep.aggregate_ok = rep.sum_l_pi <= L_total;
  return rep;
}

}  // namespace jointkit
