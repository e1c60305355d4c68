#include "linalg.hpp"

#include <algorithm>

#include "error.hpp"

namespace jointkit {

Mat::Mat(std::size_t rows, std::size_t cols, const Field& f)
    : rows_(rows), cols_(cols), field_(f), a_(rows * cols, f.zero()) {}

Mat Mat::identity(std::size_t n, const Field& f) {
  Mat m(n, n, f);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

Mat Mat::from_columns(std::size_t n, const std::vector<Vec>& cols, const Field& f) {
  Mat m(n, cols.size(), f);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != n) fail(errc::invalid_argument, "column length mismatch");
    require_field(f, cols[j], "matrix column");
    for (std::size_t i = 0; i < n; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, const Field& f) {
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  Mat m(rows.size(), cols, f);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) fail(errc::invalid_argument, "row length mismatch");
    require_field(f, rows[i], "matrix row");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Vec Mat::column(std::size_t j) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
  return v;
}

Vec Mat::row(std::size_t i) const {
  Vec v;
  v.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v.push_back(at(i, j));
  return v;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

bool Mat::operator==(const Mat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Echelon rref(Mat m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot_row = m.rows();
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (!m.at(i, c).is_zero()) {
        pivot_row = i;
        break;
      }
    }
    if (pivot_row == m.rows()) continue;
    if (pivot_row != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(pivot_row, j));
    Value inv = m.at(r, c).inv();
    for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Value factor = m.at(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= factor * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return Echelon{std::move(m), std::move(pivots), r};
}

std::size_t rank(const Mat& m) { return rref(m).rank; }

std::vector<Vec> kernel_basis(const Mat& a) {
  Echelon e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  const Field& f = a.field();
  for (std::size_t free_c = 0; free_c < a.cols(); ++free_c) {
    if (is_pivot[free_c]) continue;
    Vec v(a.cols(), f.zero());
    v[free_c] = f.one();
    for (std::size_t pr = 0; pr < e.pivots.size(); ++pr)
      v[e.pivots[pr]] = -e.reduced.at(pr, free_c);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  if (b.size() != a.rows()) fail(errc::invalid_argument, "solve: rhs length mismatch");
  Mat aug(a.rows(), a.cols() + 1, a.field());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  Echelon e = rref(std::move(aug));
  for (std::size_t c : e.pivots)
    if (c == a.cols()) return std::nullopt;  // pivot in rhs column: inconsistent
  Vec x(a.cols(), a.field().zero());
  for (std::size_t pr = 0; pr < e.pivots.size(); ++pr) x[e.pivots[pr]] = e.reduced.at(pr, a.cols());
  return x;
}

Mat inverse(const Mat& a) {
  if (a.rows() != a.cols()) fail(errc::invalid_argument, "inverse of non-square matrix");
  std::size_t n = a.rows();
  Mat aug(n, 2 * n, a.field());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = a.field().one();
  }
  Echelon e = rref(std::move(aug));
  // invertible iff all pivots land in the left block
  if (e.rank < n || e.pivots[n - 1] >= n) fail(errc::invalid_argument, "matrix is singular");
  Mat inv(n, n, a.field());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = e.reduced.at(i, n + j);
  return inv;
}

Mat reduced_column_echelon(const Mat& a) {
  Echelon e = rref(a.transpose());
  Mat out(a.rows(), e.rank, a.field());
  for (std::size_t i = 0; i < e.rank; ++i)
    for (std::size_t j = 0; j < a.rows(); ++j) out.at(j, i) = e.reduced.at(i, j);
  return out;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) fail(errc::invalid_argument, "mat_mul shape mismatch");
  Mat c(a.rows(), b.cols(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

Vec mat_vec(const Mat& a, const Vec& x) {
  if (x.size() != a.cols()) fail(errc::invalid_argument, "mat_vec shape mismatch");
  Vec y(a.rows(), a.field().zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a.at(i, j).is_zero()) y[i] += a.at(i, j) * x[j];
  return y;
}

}  // namespace jointkit
