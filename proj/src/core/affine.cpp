#include "affine.hpp"

#include <sstream>

#include "error.hpp"

namespace jointkit {

AffineSubspace::AffineSubspace(Vec base_point, std::vector<Vec> dirs)
    : x0_(std::move(base_point)),
      omega_(0, 0, Field::rationals()),
      field_(x0_.empty() ? Field::rationals() : x0_[0].field()) {
  std::size_t n = x0_.size();
  if (n == 0) fail(errc::invalid_argument, "empty base point");
  if (dirs.empty() || dirs.size() > n)
    fail(errc::invalid_argument, "subspace dimension must satisfy 1 <= k <= n");
  require_field(field_, x0_, "base point");
  for (const Vec& d : dirs) {
    if (d.size() != n) fail(errc::invalid_argument, "direction length mismatch");
    require_field(field_, d, "direction");
  }
  Mat raw = Mat::from_columns(n, dirs, field_);
  if (rank(raw) != dirs.size())
    fail(errc::invalid_argument, "direction vectors are linearly dependent");
  omega_ = reduced_column_echelon(raw);
  // Pivot rows of the echelon columns; zero the base point there so equal
  // subspaces get identical base points.
  for (std::size_t j = 0; j < omega_.cols(); ++j) {
    std::size_t pivot_row = 0;
    while (pivot_row < n && omega_.at(pivot_row, j).is_zero()) ++pivot_row;
    Value c = x0_[pivot_row];
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < n; ++i) x0_[i] -= c * omega_.at(i, j);
  }
}

bool AffineSubspace::contains(const Vec& x) const {
  if (x.size() != ambient_dim()) fail(errc::invalid_argument, "point dimension mismatch");
  require_field(field_, x, "point");
  Vec diff(x.size(), field_.zero());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - x0_[i];
  return solve(omega_, diff).has_value();
}

bool AffineSubspace::contains_subspace(const AffineSubspace& s) const {
  if (s.ambient_dim() != ambient_dim()) fail(errc::invalid_argument, "ambient dimension mismatch");
  if (s.dim() > dim()) return false;
  if (!contains(s.base_point())) return false;
  for (std::size_t j = 0; j < s.dim(); ++j) {
    if (!solve(omega_, s.omega_.column(j)).has_value()) return false;
  }
  return true;
}

Vec AffineSubspace::parameters_of(const Vec& x) const {
  if (x.size() != ambient_dim()) fail(errc::invalid_argument, "point dimension mismatch");
  Vec diff(x.size(), field_.zero());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - x0_[i];
  auto t = solve(omega_, diff);
  if (!t) fail(errc::invalid_argument, "point is not on the subspace");
  return *t;
}

Vec AffineSubspace::point_at(const Vec& t) const {
  Vec delta = mat_vec(omega_, t);
  Vec x(x0_);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += delta[i];
  return x;
}

std::vector<Vec> AffineSubspace::complete_transverse() const {
  std::size_t n = ambient_dim();
  std::vector<Vec> cols;
  cols.reserve(n);
  for (std::size_t j = 0; j < dim(); ++j) cols.push_back(omega_.column(j));
  std::vector<Vec> picked;
  std::size_t r = dim();
  for (std::size_t i = 0; i < n && r < n; ++i) {
    Vec e(n, field_.zero());
    e[i] = field_.one();
    cols.push_back(e);
    std::size_t nr = rank(Mat::from_columns(n, cols, field_));
    if (nr > r) {
      r = nr;
      picked.push_back(std::move(e));
    } else {
      cols.pop_back();
    }
  }
  return picked;
}

bool AffineSubspace::operator==(const AffineSubspace& o) const {
  return field_ == o.field_ && x0_ == o.x0_ && omega_ == o.omega_;
}

bool AffineSubspace::operator<(const AffineSubspace& o) const {
  if (ambient_dim() != o.ambient_dim()) return ambient_dim() < o.ambient_dim();
  if (dim() != o.dim()) return dim() < o.dim();
  for (std::size_t i = 0; i < x0_.size(); ++i) {
    if (x0_[i] != o.x0_[i]) return x0_[i] < o.x0_[i];
  }
  for (std::size_t i = 0; i < omega_.rows(); ++i)
    for (std::size_t j = 0; j < omega_.cols(); ++j) {
      if (omega_.at(i, j) != o.omega_.at(i, j)) return omega_.at(i, j) < o.omega_.at(i, j);
    }
  return false;
}

std::string AffineSubspace::str() const {
  std::ostringstream os;
  os << "{x0=(";
  for (std::size_t i = 0; i < x0_.size(); ++i) os << (i ? "," : "") << x0_[i].str();
  os << "), dirs=";
  for (std::size_t j = 0; j < omega_.cols(); ++j) {
    os << (j ? ",(" : "(");
    for (std::size_t i = 0; i < omega_.rows(); ++i)
      os << (i ? "," : "") << omega_.at(i, j).str();
    os << ")";
  }
  os << "}";
  return os.str();
}

Line::Line(AffineSubspace s, unsigned line_id) : sub(std::move(s)), id(line_id) {
  if (sub.dim() != 1) fail(errc::invalid_argument, "a line must have dimension 1");
}

Value Line::parameter_of(const Vec& x) const { return sub.parameters_of(x)[0]; }

LineIntersection intersect_lines(const Line& a, const Line& b) {
  if (a.sub.ambient_dim() != b.sub.ambient_dim())
    fail(errc::invalid_argument, "ambient dimension mismatch");
  if (a.sub.field() != b.sub.field()) fail(errc::invalid_argument, "mixed-field lines");
  if (a.sub == b.sub) return Identical{};
  const Field f = a.sub.field();
  std::size_t n = a.sub.ambient_dim();
  // a.base + t*da = b.base + s*db  ->  [da | -db] (t,s)^T = b.base - a.base
  Vec da = a.direction(), db = b.direction();
  Mat sys(n, 2, f);
  Vec rhs(n, f.zero());
  for (std::size_t i = 0; i < n; ++i) {
    sys.at(i, 0) = da[i];
    sys.at(i, 1) = -db[i];
    rhs[i] = b.base_point()[i] - a.base_point()[i];
  }
  auto ts = solve(sys, rhs);
  if (!ts) return Disjoint{};
  if (rank(sys) < 2) return Disjoint{};  // parallel distinct lines
  Vec point(a.base_point());
  for (std::size_t i = 0; i < n; ++i) point[i] += (*ts)[0] * da[i];
  return point;
}

LinePlaneIntersection intersect_line_plane(const Line& l, const AffineSubspace& p) {
  if (l.sub.ambient_dim() != p.ambient_dim())
    fail(errc::invalid_argument, "ambient dimension mismatch");
  if (l.sub.field() != p.field()) fail(errc::invalid_argument, "mixed-field objects");
  if (p.contains_subspace(l.sub)) return Contained{};
  const Field f = p.field();
  std::size_t n = p.ambient_dim(), k = p.dim();
  // p.x0 + Omega s = l.base + t*d  ->  [Omega | -d] (s,t)^T = l.base - p.x0
  Vec d = l.direction();
  Mat sys(n, k + 1, f);
  Vec rhs(n, f.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) sys.at(i, j) = p.directions().at(i, j);
    sys.at(i, k) = -d[i];
    rhs[i] = l.base_point()[i] - p.base_point()[i];
  }
  auto st = solve(sys, rhs);
  if (!st) return Disjoint{};
  if (rank(sys) < k + 1) return Disjoint{};  // line parallel to the plane, off it
  Vec point(l.base_point());
  for (std::size_t i = 0; i < n; ++i) point[i] += (*st)[k] * d[i];
  return point;
}

std::size_t direction_rank(const std::vector<const AffineSubspace*>& objects) {
  if (objects.empty()) return 0;
  std::vector<Vec> dirs;
  for (const AffineSubspace* s : objects)
    for (std::size_t j = 0; j < s->dim(); ++j) dirs.push_back(s->direction(j));
  return direction_rank(dirs, objects[0]->field(), objects[0]->ambient_dim());
}

std::size_t direction_rank(const std::vector<Vec>& dirs, const Field& f, std::size_t n) {
  if (dirs.empty()) return 0;
  return rank(Mat::from_columns(n, dirs, f));
}

}  // namespace jointkit
