#ifndef JOINTKIT_MPOLY_HPP
#define JOINTKIT_MPOLY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace jointkit {

// Exponent vector a in N^n; |a| is its total degree.
using Exponents = std::vector<unsigned>;

unsigned total_degree(const Exponents& a);

// Graded lexicographic: compare total degree first, then lexicographically
// (first coordinate most significant).
struct GrLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// All exponent vectors with |a| == total (resp. |a| <= max_total), in
// graded-lex ascending order; the fixed enumeration used everywhere.
std::vector<Exponents> exponents_of_degree(unsigned total, std::size_t parts);
std::vector<Exponents> exponents_up_to_degree(unsigned max_total, std::size_t parts);

// Product of per-coordinate binomials binom(c_i, a_i), exact in mpz.
mpz_class binom_mpz(const Exponents& c, const Exponents& a);

// Sparse multivariate polynomial over one exact field, canonical form: no
// stored coefficient is zero. Immutable in spirit; operations return new
// values.
class MultiPoly {
 public:
  MultiPoly(std::size_t nvars, const Field& f);  // zero polynomial
  static MultiPoly constant(std::size_t nvars, const Value& c);
  static MultiPoly variable(std::size_t nvars, std::size_t index, const Field& f);
  static MultiPoly monomial(Exponents a, const Value& c);

  std::size_t nvars() const { return nvars_; }
  const Field& field() const { return field_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t term_count() const { return terms_.size(); }

  // Degree of the zero polynomial is a sentinel below all naturals (nullopt).
  std::optional<unsigned> degree() const;
  std::optional<unsigned> min_total_degree() const;

  const std::map<Exponents, Value, GrLexLess>& terms() const { return terms_; }
  Value coefficient(const Exponents& a) const;  // zero when absent

  void add_term(const Exponents& a, const Value& c);  // accumulates, keeps canonical form

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly scaled(const Value& c) const;
  MultiPoly pow(unsigned e) const;
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  Value evaluate(const Vec& x) const;

  // Hasse derivative D^a, computed termwise: D^a(x^c) = binom(c,a) x^{c-a}.
  MultiPoly hasse_derivative(const Exponents& a) const;

  // q(t) = p(M t + b) with M an n x m matrix, b in F^n; result in m variables.
  MultiPoly compose_affine(const Mat& m, const Vec& b) const;
  // p(x + x0); D^a p(x0) is the coefficient of x^a in the result.
  MultiPoly taylor_shift(const Vec& x0) const;

  // Text form: terms "coeff * x1^a1 x2^a2" joined by " + ", graded-lex
  // descending; the zero polynomial prints "0".
  std::string str() const;
  static MultiPoly parse(const std::string& text, std::size_t nvars, const Field& f);

 private:
  void check_compatible(const MultiPoly& o) const;
  std::size_t nvars_;
  Field field_;
  std::map<Exponents, Value, GrLexLess> terms_;
};

}  // namespace jointkit

#endif
