#include "hasse.hpp"

#include <atomic>

#include "error.hpp"

namespace jointkit {

namespace {
std::atomic<bool> crosscheck_enabled{false};

void require_same_field(const MultiPoly& p, const Field& f, const char* what) {
  if (p.field() != f) fail(errc::invalid_argument, std::string(what) + ": field mismatch");
}

// scalar omega^alpha = prod_j omega_j^{alpha_j}
Value vector_power(const Vec& omega, const Exponents& alpha, const Field& f) {
  Value acc = f.one();
  for (std::size_t j = 0; j < omega.size(); ++j)
    if (alpha[j]) acc *= omega[j].pow(alpha[j]);
  return acc;
}

// Accumulates, over all decompositions a~ = alpha_1 + ... + alpha_m with
// |alpha_i| = lambda_i, the scalar
//   [prod_j binom(a~_j; (alpha_1)_j, ..., (alpha_m)_j)] * dirs_1^{alpha_1}...dirs_m^{alpha_m}
// into weights[a~]. The multinomial factor counts the ordered expansions of
// (omega . t)^{a~_j} and is required for agreement with the definitional
// route D^a(p o L)(L^-1 x); it is computed exactly in mpz and mapped into the
// field.
void decomposition_weights(const std::vector<Vec>& dirs, const Exponents& lambda,
                           std::size_t ambient, const Field& f, std::size_t i, Exponents& acc,
                           const Value& scalar,
                           std::map<Exponents, Value, GrLexLess>& weights) {
  if (scalar.is_zero()) return;
  if (i == dirs.size()) {
    auto [it, inserted] = weights.emplace(acc, scalar);
    if (!inserted) it->second += scalar;
    return;
  }
  for (const Exponents& alpha : exponents_of_degree(lambda[i], ambient)) {
    Value s = scalar * vector_power(dirs[i], alpha, f);
    if (s.is_zero()) continue;
    // telescoped multinomial: binom(acc_j + alpha_j, alpha_j) per coordinate
    Exponents merged(ambient);
    for (std::size_t j = 0; j < ambient; ++j) merged[j] = acc[j] + alpha[j];
    s *= f.from_mpz(binom_mpz(merged, alpha));
    if (s.is_zero()) continue;
    acc.swap(merged);
    decomposition_weights(dirs, lambda, ambient, f, i + 1, acc, s, weights);
    acc.swap(merged);
  }
}

MultiPoly weighted_derivative_sum(const MultiPoly& p, const std::vector<Vec>& dirs,
                                  const Exponents& lambda) {
  const Field f = p.field();
  std::size_t n = p.nvars();
  MultiPoly out(n, f);
  for (const auto& [a, w] : derivative_decomposition_weights(dirs, lambda, n, f)) {
    if (total_degree(a) > p.degree().value_or(0) && !p.is_zero()) continue;
    out = out + p.hasse_derivative(a).scaled(w);
  }
  return out;
}
}  // namespace

std::map<Exponents, Value, GrLexLess> derivative_decomposition_weights(
    const std::vector<Vec>& dirs, const Exponents& lambda, std::size_t ambient, const Field& f) {
  std::map<Exponents, Value, GrLexLess> weights;
  Exponents acc(ambient, 0);
  decomposition_weights(dirs, lambda, ambient, f, 0, acc, f.one(), weights);
  return weights;
}

Multiplicity multiplicity(const MultiPoly& p, const Vec& x0) {
  if (p.is_zero()) return Multiplicity::inf();
  auto m = p.taylor_shift(x0).min_total_degree();
  return Multiplicity::finite(*m);
}

MultiPoly directional_hasse_by_composition(const MultiPoly& p, const Mat& basis,
                                           const Exponents& a) {
  if (basis.rows() != p.nvars() || basis.cols() != p.nvars())
    fail(errc::invalid_argument, "basis must be square of the ambient dimension");
  require_same_field(p, basis.field(), "directional derivative");
  if (rank(basis) != basis.cols()) fail(errc::invalid_argument, "rank-deficient basis");
  Vec zero(p.nvars(), p.field().zero());
  MultiPoly composed = p.compose_affine(basis, zero);
  MultiPoly derived = composed.hasse_derivative(a);
  return derived.compose_affine(inverse(basis), zero);
}

MultiPoly directional_hasse_by_expansion(const MultiPoly& p, const Mat& basis,
                                         const Exponents& a) {
  if (basis.rows() != p.nvars() || basis.cols() != p.nvars())
    fail(errc::invalid_argument, "basis must be square of the ambient dimension");
  require_same_field(p, basis.field(), "directional derivative");
  if (rank(basis) != basis.cols()) fail(errc::invalid_argument, "rank-deficient basis");
  std::vector<Vec> dirs;
  for (std::size_t j = 0; j < basis.cols(); ++j) dirs.push_back(basis.column(j));
  return weighted_derivative_sum(p, dirs, a);
}

MultiPoly directional_hasse(const MultiPoly& p, const Mat& basis, const Exponents& a) {
  MultiPoly r = directional_hasse_by_expansion(p, basis, a);
  if (route_crosscheck()) {
    MultiPoly alt = directional_hasse_by_composition(p, basis, a);
    if (!(r == alt))
      fail(errc::internal, "directional derivative routes disagree (expansion vs composition)");
  }
  return r;
}

void set_route_crosscheck(bool enabled) { crosscheck_enabled = enabled; }
bool route_crosscheck() { return crosscheck_enabled; }

MultiPoly transverse_directional_derivative(const MultiPoly& p, const std::vector<Vec>& dirs,
                                            const Exponents& lambda) {
  if (lambda.size() != dirs.size())
    fail(errc::invalid_argument, "one index entry per direction required");
  for (const Vec& d : dirs) {
    if (d.size() != p.nvars()) fail(errc::invalid_argument, "direction dimension mismatch");
    require_field(p.field(), d, "direction");
  }
  if (direction_rank(dirs, p.field(), p.nvars()) != dirs.size())
    fail(errc::invalid_argument, "directions are linearly dependent");
  return weighted_derivative_sum(p, dirs, lambda);
}

MultiPoly restrict_to_plane(const MultiPoly& p, const AffineSubspace& plane) {
  if (plane.ambient_dim() != p.nvars())
    fail(errc::invalid_argument, "plane ambient dimension mismatch");
  require_same_field(p, plane.field(), "restriction");
  return p.compose_affine(plane.directions(), plane.base_point());
}

MultiPoly restricted_transverse_derivative(const MultiPoly& p, const AffineSubspace& plane,
                                           const std::vector<Vec>& dirs,
                                           const Exponents& lambda) {
  std::size_t n = p.nvars();
  if (plane.ambient_dim() != n) fail(errc::invalid_argument, "plane ambient dimension mismatch");
  if (dirs.size() != n - plane.dim())
    fail(errc::invalid_argument, "need exactly n-k transverse directions");
  std::vector<Vec> all;
  for (std::size_t j = 0; j < plane.dim(); ++j) all.push_back(plane.direction(j));
  all.insert(all.end(), dirs.begin(), dirs.end());
  if (direction_rank(all, p.field(), n) != n)
    fail(errc::invalid_argument, "directions are not transverse to the plane");
  return restrict_to_plane(transverse_directional_derivative(p, dirs, lambda), plane);
}

MinimalTransverse minimal_transverse_derivative(const MultiPoly& p, const AffineSubspace& plane,
                                                const std::vector<Vec>& dirs) {
  if (p.is_zero())
    fail(errc::invalid_argument, "minimal transverse derivative of the zero polynomial");
  unsigned deg = *p.degree();
  for (unsigned order = 0; order <= deg; ++order) {
    for (const Exponents& lambda : exponents_of_degree(order, dirs.size())) {
      MultiPoly g = restricted_transverse_derivative(p, plane, dirs, lambda);
      if (!g.is_zero()) return MinimalTransverse{lambda, std::move(g)};
    }
  }
  fail(errc::internal, "no nonzero transverse derivative up to deg p (impossible)");
}

LineDerivative minimal_line_derivative(const MultiPoly& p, const Line& l) {
  MinimalTransverse mt = minimal_transverse_derivative(p, l.sub, l.sub.complete_transverse());
  return LineDerivative{std::move(mt.lambda), std::move(mt.restricted)};
}

}  // namespace jointkit
