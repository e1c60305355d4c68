#ifndef JOINTKIT_AFFINE_HPP
#define JOINTKIT_AFFINE_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "linalg.hpp"

namespace jointkit {

// Affine k-dimensional subspace of F^n, stored canonically: the direction
// matrix in reduced column echelon form and the base point reduced modulo the
// column space. Two descriptions of the same subspace compare equal.
class AffineSubspace {
 public:
  // `dirs` are direction vectors (must be linearly independent).
  AffineSubspace(Vec base_point, std::vector<Vec> dirs);

  std::size_t ambient_dim() const { return x0_.size(); }
  std::size_t dim() const { return omega_.cols(); }
  const Vec& base_point() const { return x0_; }
  const Mat& directions() const { return omega_; }
  Vec direction(std::size_t j) const { return omega_.column(j); }
  Field field() const { return field_; }

  bool contains(const Vec& x) const;
  bool contains_subspace(const AffineSubspace& s) const;

  // Coordinates t with x = x0 + Omega t; errors when x is off the subspace.
  Vec parameters_of(const Vec& x) const;
  Vec point_at(const Vec& t) const;

  // Greedy standard-basis completion of the directions to a basis of F^n.
  std::vector<Vec> complete_transverse() const;

  bool operator==(const AffineSubspace& o) const;
  bool operator!=(const AffineSubspace& o) const { return !(*this == o); }
  bool operator<(const AffineSubspace& o) const;  // deterministic total order

  std::string str() const;

 private:
  Vec x0_;
  Mat omega_;
  Field field_;
};

struct Line {
  AffineSubspace sub;
  unsigned id = 0;

  Line(AffineSubspace s, unsigned line_id);
  const Vec& base_point() const { return sub.base_point(); }
  Vec direction() const { return sub.direction(0); }
  // Parameter t with x = base + t * dir; errors when x is off the line.
  Value parameter_of(const Vec& x) const;
};

struct Disjoint {};
struct Identical {};
struct Contained {};
using LineIntersection = std::variant<Vec, Disjoint, Identical>;
using LinePlaneIntersection = std::variant<Vec, Contained, Disjoint>;

LineIntersection intersect_lines(const Line& a, const Line& b);
LinePlaneIntersection intersect_line_plane(const Line& l, const AffineSubspace& p);

// Rank of the concatenation of all direction matrices. Empty list -> 0.
std::size_t direction_rank(const std::vector<const AffineSubspace*>& objects);
std::size_t direction_rank(const std::vector<Vec>& dirs, const Field& f, std::size_t n);

}  // namespace jointkit

#endif
