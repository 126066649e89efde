#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace contracta {

using Vector = std::vector<double>;

/// Row-major dense real matrix. Entries are always finite.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> d);
  static DenseMatrix from_rows(const std::vector<Vector>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  Vector col(std::size_t c) const;
  std::span<const double> entries() const noexcept { return data_; }

  DenseMatrix transpose() const;
  /// Copies the block of `count` columns starting at `first`.
  DenseMatrix columns(std::size_t first, std::size_t count) const;

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator*(double s, const DenseMatrix& a);
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Vector operator*(const DenseMatrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// Horizontal concatenation [a b].
DenseMatrix hstack(const DenseMatrix& a, const DenseMatrix& b);
/// Vertical concatenation [a; b].
DenseMatrix vstack(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix matrix_power(const DenseMatrix& a, unsigned j);

/// Largest singular value.
double spectral_norm(const DenseMatrix& m);

struct SingularExtremes {
  double sigma_min;
  double sigma_max;
};

/// Extreme singular values of an r x c matrix via the eigenvalues of M*M^T.
/// sigma_min is the r-th singular value, so it is zero for rank-deficient
/// wide matrices.
SingularExtremes singular_extremes(const DenseMatrix& m);

struct SymmetricEigen {
  Vector values;        // ascending
  DenseMatrix vectors;  // column i belongs to values[i]
};

/// Cyclic Jacobi eigen-decomposition of a symmetric matrix.
SymmetricEigen symmetric_eigen(const DenseMatrix& s);
double symmetric_eigen_min(const DenseMatrix& s);

/// Gaussian elimination with partial pivoting; nullopt when the pivot
/// magnitude drops below `singular_tol`.
std::optional<Vector> solve_linear(DenseMatrix a, Vector b, double singular_tol = 1e-12);

}  // namespace contracta
