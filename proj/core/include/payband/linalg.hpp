#pragma once

// Small dense linear algebra for the per-arm estimators. Dimensions are tiny
// (d <= 64), so everything is a straightforward O(d^3) loop over contiguous
// row-major storage.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace payband {

inline constexpr std::size_t kMaxDim = 64;

class SingularMatrix : public std::runtime_error {
 public:
  explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim, double fill = 0.0) : data_(dim, fill) {}
  Vector(std::initializer_list<double> values) : data_(values) {}
  explicit Vector(std::vector<double> values) : data_(std::move(values)) {}

  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator[](std::size_t i) noexcept { return data_[i]; }
  double operator[](std::size_t i) const noexcept { return data_[i]; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }
  const std::vector<double>& raw() const noexcept { return data_; }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double scale) noexcept;

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> data_;
};

Vector operator+(Vector lhs, const Vector& rhs);
Vector operator-(Vector lhs, const Vector& rhs);
Vector operator*(double scale, Vector v);

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
double norm_inf(const Vector& v);
bool all_finite(const Vector& v) noexcept;

/// Scales v onto the unit sphere when its Euclidean norm exceeds one.
Vector project_unit_ball(Vector v);

/// Square d x d matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim, double fill = 0.0) : dim_(dim), data_(dim * dim, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t dim, double scale = 1.0);

  std::size_t dim() const noexcept { return dim_; }

  double& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * dim_ + col]; }
  double operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * dim_ + col];
  }

  std::span<const double> row(std::size_t r) const noexcept {
    return std::span<const double>(data_).subspan(r * dim_, dim_);
  }

  Matrix& operator+=(const Matrix& other);

  /// this += scale * x x^T
  void add_outer(const Vector& x, double scale = 1.0);

  /// this += shift * I
  void add_diagonal(double shift) noexcept;

  bool is_symmetric(double tol = 1e-12) const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

Vector operator*(const Matrix& a, const Vector& x);

/// Pivot floor for the Cholesky factorization. A diagonal pivot below this
/// means the caller needs a ridge term or more observations.
inline constexpr double kPivotTolerance = 1e-12;

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
class Cholesky {
 public:
  explicit Cholesky(const Matrix& a);

  std::size_t dim() const noexcept { return lower_.dim(); }
  const Matrix& lower() const noexcept { return lower_; }

  /// Solves L y = b.
  Vector forward(const Vector& b) const;
  /// Solves L^T x = y.
  Vector backward(const Vector& y) const;
  Vector solve(const Vector& b) const { return backward(forward(b)); }

 private:
  Matrix lower_;
};

/// Solves A x = b for symmetric positive definite A. Throws SingularMatrix
/// when a Cholesky pivot falls below kPivotTolerance.
Vector solve_spd(const Matrix& a, const Vector& b);

/// sqrt(x^T A^{-1} x) for positive definite A.
double quad_norm_inv(const Matrix& a, const Vector& x);

/// Smallest eigenvalue of a symmetric matrix (cyclic Jacobi rotations).
double min_eig_sym(const Matrix& a);

/// All eigenvalues of a symmetric matrix in ascending order.
std::vector<double> eig_sym(const Matrix& a);

}  // namespace payband
