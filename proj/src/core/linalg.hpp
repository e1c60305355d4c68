#ifndef JOINTKIT_LINALG_HPP
#define JOINTKIT_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "field.hpp"

namespace jointkit {

// Dense exact matrix over one field. Desk-scale: plain Gaussian elimination
// with deterministic pivoting (first nonzero entry in the current column).
class Mat {
 public:
  Mat(std::size_t rows, std::size_t cols, const Field& f);
  static Mat identity(std::size_t n, const Field& f);
  static Mat from_columns(std::size_t n, const std::vector<Vec>& cols, const Field& f);
  static Mat from_rows(const std::vector<Vec>& rows, const Field& f);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  Value& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Value& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec column(std::size_t j) const;
  Vec row(std::size_t i) const;
  Mat transpose() const;

  bool operator==(const Mat& o) const;

 private:
  std::size_t rows_, cols_;
  Field field_;
  std::vector<Value> a_;
};

struct Echelon {
  Mat reduced;                      // RREF
  std::vector<std::size_t> pivots;  // pivot column per pivot row
  std::size_t rank;
};

Echelon rref(Mat m);
std::size_t rank(const Mat& m);

// Basis of { x : A x = 0 }, one vector per free column in ascending column
// order; deterministic.
std::vector<Vec> kernel_basis(const Mat& a);

// One solution of A x = b, or nullopt when inconsistent.
std::optional<Vec> solve(const Mat& a, const Vec& b);

Mat inverse(const Mat& a);  // errors when singular

// Reduced column echelon form (RREF of the transpose, transposed back);
// zero columns dropped. Canonical basis of the column space.
Mat reduced_column_echelon(const Mat& a);

Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_vec(const Mat& a, const Vec& x);

}  // namespace jointkit

#endif
