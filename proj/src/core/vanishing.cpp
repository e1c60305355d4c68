#include "vanishing.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "caps.hpp"
#include "error.hpp"

namespace jointkit {

namespace {
std::string point_str(const Vec& x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i].str();
  os << ")";
  return os.str();
}
}  // namespace

void VanishingSpec::validate() const {
  for (const PointOrderConstraint& c : points) {
    if (c.point.size() != n) fail(errc::invalid_argument, "point constraint dimension mismatch");
    require_field(field, c.point, "point constraint");
    if (c.order == 0) fail(errc::invalid_argument, "point order must be >= 1");
  }
  for (const PlaneTransverseConstraint& c : planes) {
    if (c.outer.ambient_dim() != n || c.inner.ambient_dim() != n)
      fail(errc::invalid_argument, "plane constraint ambient mismatch");
    if (c.inner.dim() + 1 != c.outer.dim())
      fail(errc::invalid_argument, "inner plane must have dimension k-1");
    if (!c.outer.contains_subspace(c.inner))
      fail(errc::invalid_argument, "inner plane must be contained in its outer plane");
    if (c.transverse.size() != n - c.outer.dim())
      fail(errc::invalid_argument, "need n-k transverse directions");
    std::vector<Vec> all = c.transverse;
    for (std::size_t j = 0; j < c.outer.dim(); ++j) all.push_back(c.outer.direction(j));
    if (direction_rank(all, field, n) != n)
      fail(errc::invalid_argument, "directions are not transverse to the outer plane");
  }
}

ConditionMatrix build_conditions(const VanishingSpec& spec, unsigned degree_bound) {
  if (degree_bound < 1) fail(errc::invalid_argument, "degree bound must be >= 1");
  check_degree_cap(degree_bound);
  spec.validate();
  const Field& f = spec.field;

  if (!spec.planes.empty() && f.is_prime_field() && f.modulus() <= degree_bound)
    fail(errc::invalid_argument,
         "the evaluation-grid scheme needs |F| > D: " + f.name() + " has only " +
             std::to_string(f.modulus()) + " elements for D = " + std::to_string(degree_bound));

  ConditionMatrix cm;
  cm.degree_bound = degree_bound;
  cm.columns = exponents_up_to_degree(degree_bound, spec.n);

  std::vector<Vec> rows;

  // point constraints: D^a p(x) = sum_c coeff_c binom(c,a) x^{c-a}
  for (const PointOrderConstraint& c : spec.points) {
    for (unsigned order = 0; order < c.order; ++order) {
      for (const Exponents& a : exponents_of_degree(order, spec.n)) {
        Vec row;
        row.reserve(cm.columns.size());
        for (const Exponents& col : cm.columns) {
          Value factor = f.from_mpz(binom_mpz(col, a));
          if (factor.is_zero()) {
            row.push_back(f.zero());
            continue;
          }
          Value mono = f.one();
          for (std::size_t i = 0; i < spec.n; ++i)
            if (col[i] > a[i]) mono *= c.point[i].pow(col[i] - a[i]);
          row.push_back(factor * mono);
        }
        rows.push_back(std::move(row));
      }
    }
  }

  // plane constraints: evaluation grid on the inner plane per derivative index
  for (const PlaneTransverseConstraint& c : spec.planes) {
    std::size_t params = c.inner.dim();
    std::vector<Value> grid_values = f.first_elements(degree_bound + 1);
    std::vector<Vec> grid_points;
    std::vector<std::size_t> idx(params, 0);
    for (;;) {
      Vec t(params, f.zero());
      for (std::size_t i = 0; i < params; ++i) t[i] = grid_values[idx[i]];
      grid_points.push_back(c.inner.point_at(t));
      std::size_t i = 0;
      for (; i < params; ++i) {
        if (++idx[i] <= degree_bound) break;
        idx[i] = 0;
      }
      if (i == params) break;
    }

    for (unsigned order = 0; order <= c.max_order; ++order) {
      for (const Exponents& lambda : exponents_of_degree(order, c.transverse.size())) {
        auto weights = derivative_decomposition_weights(c.transverse, lambda, spec.n, f);
        for (const Vec& y : grid_points) {
          Vec row;
          row.reserve(cm.columns.size());
          for (const Exponents& col : cm.columns) {
            // ((nu.grad)^lambda x^col)(y) = sum_a w[a] binom(col,a) y^{col-a}
            Value entry = f.zero();
            for (const auto& [a, w] : weights) {
              Value factor = f.from_mpz(binom_mpz(col, a));
              if (factor.is_zero()) continue;
              Value mono = f.one();
              for (std::size_t i = 0; i < spec.n; ++i)
                if (col[i] > a[i]) mono *= y[i].pow(col[i] - a[i]);
              entry += w * factor * mono;
            }
            row.push_back(entry);
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }

  cm.matrix = rows.empty() ? Mat(0, cm.columns.size(), f) : Mat::from_rows(rows, f);
  return cm;
}

Annihilator min_degree_annihilator(const VanishingSpec& spec, unsigned d_max) {
  check_degree_cap(d_max);
  spec.validate();
  const Field& f = spec.field;

  // empty spec: the constant 1 annihilates vacuously at degree 0
  if (spec.points.empty() && spec.planes.empty())
    return Annihilator{0, MultiPoly::constant(spec.n, f.one())};

  for (unsigned d = 1; d <= d_max; ++d) {
    ConditionMatrix cm = build_conditions(spec, d);
    std::vector<Vec> kernel = kernel_basis(cm.matrix);
    if (kernel.empty()) {
      if (cm.matrix.rows() < cm.columns.size())
        fail(errc::internal, "parameter counting violated: fewer rows than columns");
      continue;
    }
    // degree 0 annihilators cannot exist under a nonempty spec (a nonzero
    // constant vanishes nowhere), so the linear search starts at 1; within a
    // degree, take the deterministic first kernel vector and normalize.
    Vec v = kernel.front();
    std::size_t lead = 0;
    while (lead < v.size() && v[lead].is_zero()) ++lead;
    if (lead == v.size()) fail(errc::internal, "zero kernel vector");
    Value inv = v[lead].inv();
    MultiPoly p(spec.n, f);
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) p.add_term(cm.columns[j], v[j] * inv);
    return Annihilator{d, std::move(p)};
  }
  fail(errc::degree_exhausted,
       "no annihilator up to degree " + std::to_string(d_max) + ": degree budget exhausted");
}

VanishingReport verify_vanishing(const MultiPoly& p, const VanishingSpec& spec) {
  if (p.is_zero()) fail(errc::invalid_argument, "verify_vanishing expects a nonzero polynomial");
  spec.validate();
  VanishingReport rep;
  for (const PointOrderConstraint& c : spec.points) {
    Multiplicity m = multiplicity(p, c.point);
    if (!m.at_least(c.order))
      rep.violations.push_back("point " + point_str(c.point) + ": multiplicity " + m.str() +
                               " < required " + std::to_string(c.order));
  }
  for (std::size_t ci = 0; ci < spec.planes.size(); ++ci) {
    const PlaneTransverseConstraint& c = spec.planes[ci];
    for (unsigned order = 0; order <= c.max_order; ++order) {
      for (const Exponents& lambda : exponents_of_degree(order, c.transverse.size())) {
        MultiPoly g = transverse_directional_derivative(p, c.transverse, lambda);
        if (!restrict_to_plane(g, c.inner).is_zero()) {
          std::ostringstream os;
          os << "plane constraint " << ci << ": order (";
          for (std::size_t i = 0; i < lambda.size(); ++i) os << (i ? "," : "") << lambda[i];
          os << ") does not vanish on the inner plane";
          rep.violations.push_back(os.str());
        }
      }
    }
  }
  return rep;
}

RootAccount line_root_accounting(const MultiPoly& p, const Line& l,
                                 const std::vector<MarkedRoot>& marked) {
  if (p.is_zero()) fail(errc::invalid_argument, "root accounting expects a nonzero polynomial");
  LineDerivative d = minimal_line_derivative(p, l);
  RootAccount account;
  account.derivative_order = d.order();
  account.q_degree = d.restricted.degree().value_or(0);

  std::vector<Value> seen_params;
  for (const MarkedRoot& mr : marked) {
    Value t = l.parameter_of(mr.point);  // errors when the point is off the line
    Multiplicity m = multiplicity(d.restricted, {t});
    unsigned actual = m.infinite ? 0 : m.value;  // q is nonzero, so finite
    account.actual.push_back(actual);
    if (actual < mr.claimed_order)
      account.violations.push_back("marked point " + point_str(mr.point) + " claims order >= " +
                                   std::to_string(mr.claimed_order) + " but q has multiplicity " +
                                   std::to_string(actual));
    bool dup = false;
    for (const Value& s : seen_params)
      if (s == t) dup = true;
    if (!dup) {
      seen_params.push_back(t);
      account.total_actual += actual;
    }
  }
  account.bezout_ok = account.total_actual <= account.q_degree &&
                      account.q_degree <= p.degree().value_or(0);
  return account;
}

bool exceptional_plane_test(const MultiPoly& p, const AffineSubspace& plane,
                            const std::vector<Vec>& transverse, unsigned budget) {
  if (p.is_zero()) fail(errc::invalid_argument, "exceptional test expects a nonzero polynomial");
  return minimal_transverse_derivative(p, plane, transverse).order() <= budget;
}

namespace {

// B distinct (k-1)-planes inside `outer` through x, each containing x and no
// other point of `others`. Normals in parameter space run through
// (1, s, s^2, ...), s = 0, 1, 2, ...
std::vector<AffineSubspace> planes_through(const AffineSubspace& outer, const Vec& x,
                                           const std::vector<Vec>& others, std::size_t count,
                                           const Field& f) {
  std::size_t k = outer.dim();
  Vec tx = outer.parameters_of(x);
  std::vector<Vec> other_params;
  for (const Vec& y : others)
    if (!(y == x) && outer.contains(y)) other_params.push_back(outer.parameters_of(y));

  std::vector<AffineSubspace> out;
  std::size_t limit = f.is_prime_field() ? f.modulus() : 64 + 4 * (count + other_params.size());
  for (std::size_t s = 0; s < limit && out.size() < count; ++s) {
    Vec normal(k, f.zero());
    Value sv = f.from_int(static_cast<long long>(s));
    Value acc = f.one();
    for (std::size_t i = 0; i < k; ++i) {
      normal[i] = acc;
      acc *= sv;
    }
    bool clean = true;
    for (const Vec& ty : other_params) {
      Value dot = f.zero();
      for (std::size_t i = 0; i < k; ++i) dot += normal[i] * (ty[i] - tx[i]);
      if (dot.is_zero()) {
        clean = false;
        break;
      }
    }
    if (!clean) continue;
    Mat normal_row(1, k, f);
    for (std::size_t i = 0; i < k; ++i) normal_row.at(0, i) = normal[i];
    std::vector<Vec> param_dirs = kernel_basis(normal_row);
    std::vector<Vec> ambient_dirs;
    for (const Vec& pd : param_dirs) ambient_dirs.push_back(mat_vec(outer.directions(), pd));
    out.emplace_back(x, ambient_dirs);
  }
  if (out.size() < count)
    fail(errc::invalid_argument, "cannot place " + std::to_string(count) +
                                     " clean (k-1)-planes through " + point_str(x) + " in " +
                                     f.name());
  return out;
}

}  // namespace

DichotomyResult multijoint_dichotomy(const MultijointConfig& cfg, unsigned budget,
                                     std::size_t b_planes, unsigned d_max) {
  if (b_planes < 1) fail(errc::invalid_argument, "need at least one plane per multijoint");
  const Field& f = cfg.planes.field;
  const std::size_t n = cfg.planes.n;
  const std::size_t k = cfg.planes.k;

  auto joints = find_multijoints(cfg.planes, cfg.line_families);

  DichotomyResult result;
  result.budget = budget;
  result.b_planes_per_point = b_planes;

  // each multijoint chooses the first spanning tuple (plane, one line per family)
  struct Choice {
    unsigned plane;
    std::vector<unsigned> lines;  // one id per family
  };
  std::vector<Choice> choices;
  std::vector<std::vector<Vec>> chosen_by_plane(cfg.planes.planes.size());
  for (const MultijointRecord& rec : joints) {
    bool done = false;
    Choice ch{0, {}};
    for (unsigned pi : rec.incident_planes) {
      std::vector<Vec> dirs;
      for (std::size_t j = 0; j < k; ++j) dirs.push_back(cfg.planes.planes[pi].direction(j));
      std::vector<unsigned> picked;
      std::function<bool(std::size_t)> pick = [&](std::size_t family) -> bool {
        if (family == cfg.line_families.size()) return true;
        for (unsigned id : rec.incident_lines[family]) {
          Vec d = cfg.line_families[family].lines.at(id).direction();
          dirs.push_back(d);
          if (direction_rank(dirs, f, n) == dirs.size()) {
            picked.push_back(id);
            if (pick(family + 1)) return true;
            picked.pop_back();
          }
          dirs.pop_back();
        }
        return false;
      };
      if (pick(0)) {
        ch = Choice{pi, picked};
        done = true;
        break;
      }
    }
    if (!done) fail(errc::internal, "a multijoint must admit a spanning tuple");
    chosen_by_plane[ch.plane].push_back(rec.point);
    choices.push_back(std::move(ch));
  }

  // vanishing spec: B clean (k-1)-planes through each multijoint inside its
  // chosen plane, transverse orders up to the budget
  VanishingSpec spec;
  spec.n = n;
  spec.field = f;
  for (std::size_t ji = 0; ji < joints.size(); ++ji) {
    const AffineSubspace& outer = cfg.planes.planes[choices[ji].plane];
    std::vector<Vec> transverse = outer.complete_transverse();
    for (AffineSubspace& inner :
         planes_through(outer, joints[ji].point, chosen_by_plane[choices[ji].plane], b_planes, f))
      spec.planes.push_back({std::move(inner), outer, transverse, budget});
  }
  result.annihilator = min_degree_annihilator(spec, d_max);
  const MultiPoly& p = result.annihilator.poly;

  // type-1 marks per line, for the Bezout accounting
  std::map<std::pair<std::size_t, unsigned>, std::vector<MarkedRoot>> marks;

  for (std::size_t ji = 0; ji < joints.size(); ++ji) {
    const MultijointRecord& rec = joints[ji];
    const Choice& ch = choices[ji];
    DichotomyPoint dp;
    dp.point = rec.point;
    dp.plane = ch.plane;

    // mixed basis: plane directions then chosen line directions
    std::vector<Vec> mixed;
    for (std::size_t j = 0; j < k; ++j) mixed.push_back(cfg.planes.planes[ch.plane].direction(j));
    for (std::size_t fam = 0; fam < ch.lines.size(); ++fam)
      mixed.push_back(cfg.line_families[fam].lines.at(ch.lines[fam]).direction());

    Multiplicity mult = multiplicity(p, rec.point);
    if (mult.infinite) fail(errc::internal, "annihilator is nonzero");
    MultiPoly shifted = p.taylor_shift(rec.point);
    bool found = false;
    for (const Exponents& a : exponents_of_degree(mult.value, n)) {
      auto weights = derivative_decomposition_weights(mixed, a, n, f);
      Value v = f.zero();
      for (const auto& [idx, w] : weights) v += w * shifted.coefficient(idx);
      if (!v.is_zero()) {
        dp.minimal_index = a;
        found = true;
        break;
      }
    }
    if (!found) fail(errc::internal, "multiplicity invariance: some index of that order is nonzero");

    for (std::size_t i = k; i < n; ++i) dp.tail += dp.minimal_index[i];
    dp.type1 = dp.tail > budget;
    if (dp.type1) {
      // the family with the largest index entry carries the point
      std::size_t best_fam = 0;
      unsigned best = 0;
      for (std::size_t fam = 0; fam < n - k; ++fam)
        if (dp.minimal_index[k + fam] > best) {
          best = dp.minimal_index[k + fam];
          best_fam = fam;
        }
      const Line& l = cfg.line_families[best_fam].lines.at(ch.lines[best_fam]);
      LineDerivative d = minimal_line_derivative(p, l);
      Value t = l.parameter_of(rec.point);
      dp.line_mult_ok = multiplicity(d.restricted, {t}).at_least(best) && best >= 1;
      marks[{best_fam, l.id}].push_back({rec.point, best});
      ++result.type1;
      if (!dp.line_mult_ok) ++result.unclassified;
    } else {
      const AffineSubspace& outer = cfg.planes.planes[ch.plane];
      dp.exceptional_ok = exceptional_plane_test(p, outer, outer.complete_transverse(), budget);
      ++result.type2;
      if (!dp.exceptional_ok) ++result.unclassified;
    }
    result.points.push_back(std::move(dp));
  }

  for (const auto& [key, marked] : marks) {
    const Line& l = cfg.line_families[key.first].lines.at(key.second);
    RootAccount account = line_root_accounting(p, l, marked);
    if (!account.bezout_ok || !account.violations.empty()) result.bezout_ok = false;
  }
  return result;
}

}  // namespace jointkit
