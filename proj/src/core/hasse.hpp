#ifndef JOINTKIT_HASSE_HPP
#define JOINTKIT_HASSE_HPP

#include "affine.hpp"
#include "mpoly.hpp"

namespace jointkit {

// Order of vanishing of a polynomial at a point; infinite for the zero
// polynomial.
struct Multiplicity {
  bool infinite = false;
  unsigned value = 0;

  static Multiplicity inf() { return {true, 0}; }
  static Multiplicity finite(unsigned m) { return {false, m}; }
  bool at_least(unsigned m) const { return infinite || value >= m; }
  bool operator==(const Multiplicity& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
  std::string str() const { return infinite ? "inf" : std::to_string(value); }
};

Multiplicity multiplicity(const MultiPoly& p, const Vec& x0);

// Directional Hasse derivative (omega_1.grad)^{a_1}...(omega_n.grad)^{a_n} p
// for a full-rank basis given as the columns of `basis`. Two routes:
// composition with the basis change L (the definition), and the expansion
// into standard Hasse derivatives. They agree as polynomials; when route
// cross-checking is enabled, directional_hasse computes both and verifies.
MultiPoly directional_hasse_by_composition(const MultiPoly& p, const Mat& basis,
                                           const Exponents& a);
MultiPoly directional_hasse_by_expansion(const MultiPoly& p, const Mat& basis,
                                         const Exponents& a);
MultiPoly directional_hasse(const MultiPoly& p, const Mat& basis, const Exponents& a);

void set_route_crosscheck(bool enabled);
bool route_crosscheck();

// Derivative in m independent directions only (the completion-independent
// transverse form): sum over decompositions a = alpha_1+...+alpha_m with
// |alpha_i| = lambda_i of D^a p * dirs_1^{alpha_1} ... dirs_m^{alpha_m}.
MultiPoly transverse_directional_derivative(const MultiPoly& p, const std::vector<Vec>& dirs,
                                            const Exponents& lambda);

// The weights w with (dirs.grad)^lambda p = sum_a w[a] D^a p, independent of
// p; every key has |a| = |lambda|.
std::map<Exponents, Value, GrLexLess> derivative_decomposition_weights(
    const std::vector<Vec>& dirs, const Exponents& lambda, std::size_t ambient, const Field& f);

// p restricted to the plane P(x0, Omega): p(x0 + Omega t) in F[t_1..t_k].
MultiPoly restrict_to_plane(const MultiPoly& p, const AffineSubspace& plane);

// ((nu_1.grad)^{l_1}...(nu_{n-k}.grad)^{l_{n-k}} p)|_P. The dirs must be
// transverse to P (they complete its directions to a basis of F^n).
MultiPoly restricted_transverse_derivative(const MultiPoly& p, const AffineSubspace& plane,
                                           const std::vector<Vec>& dirs,
                                           const Exponents& lambda);

struct MinimalTransverse {
  Exponents lambda;      // minimal-order index (order-canonical; index by fixed rule)
  MultiPoly restricted;  // nonzero polynomial in the plane parameters
  unsigned order() const { return total_degree(lambda); }
};

// Lowest |lambda| whose restricted transverse derivative is a nonzero
// polynomial; enumeration by increasing total order, lexicographic within an
// order. Errors when p is the zero polynomial.
MinimalTransverse minimal_transverse_derivative(const MultiPoly& p, const AffineSubspace& plane,
                                                const std::vector<Vec>& dirs);

struct LineDerivative {
  Exponents lambda;
  MultiPoly restricted;  // univariate in the line parameter
  unsigned order() const { return total_degree(lambda); }
};

// Specialization to k = 1 with the greedy standard-basis transversal.
LineDerivative minimal_line_derivative(const MultiPoly& p, const Line& l);

}  // namespace jointkit

#endif
