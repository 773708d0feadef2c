#include "payband/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace payband {

namespace {

void require_same(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    throw DimensionMismatch(std::string(where) + ": dimension " + std::to_string(a) +
                            " vs " + std::to_string(b));
  }
}

}  // namespace

Vector& Vector::operator+=(const Vector& other) {
  require_same(size(), other.size(), "Vector::operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_same(size(), other.size(), "Vector::operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Vector& Vector::operator*=(double scale) noexcept {
  for (double& v : data_) v *= scale;
  return *this;
}

Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
Vector operator*(double scale, Vector v) { return v *= scale; }

double dot(const Vector& a, const Vector& b) {
  require_same(a.size(), b.size(), "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(const Vector& v) { return std::sqrt(dot(v, v)); }

double norm_inf(const Vector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const Vector& v) noexcept {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

Vector project_unit_ball(Vector v) {
  const double n = norm2(v);
  if (n > 1.0) v *= 1.0 / n;
  return v;
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : dim_(rows.size()), data_() {
  data_.reserve(dim_ * dim_);
  for (const auto& r : rows) {
    require_same(r.size(), dim_, "Matrix(rows)");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t dim, double scale) {
  Matrix m(dim);
  m.add_diagonal(scale);
  return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same(dim_, other.dim_, "Matrix::operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

void Matrix::add_outer(const Vector& x, double scale) {
  require_same(dim_, x.size(), "Matrix::add_outer");
  for (std::size_t r = 0; r < dim_; ++r) {
    const double xr = scale * x[r];
    for (std::size_t c = 0; c < dim_; ++c) data_[r * dim_ + c] += xr * x[c];
  }
}

void Matrix::add_diagonal(double shift) noexcept {
  for (std::size_t i = 0; i < dim_; ++i) data_[i * dim_ + i] += shift;
}

bool Matrix::is_symmetric(double tol) const noexcept {
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r + 1; c < dim_; ++c) {
      if (std::abs((*this)(r, c) - (*this)(c, r)) > tol) return false;
    }
  }
  return true;
}

Vector operator*(const Matrix& a, const Vector& x) {
  require_same(a.dim(), x.size(), "Matrix*Vector");
  Vector out(a.dim());
  for (std::size_t r = 0; r < a.dim(); ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < a.dim(); ++c) acc += a(r, c) * x[c];
    out[r] = acc;
  }
  return out;
}

Cholesky::Cholesky(const Matrix& a) : lower_(a.dim()) {
  const std::size_t n = a.dim();
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= lower_(j, k) * lower_(j, k);
    if (!(diag >= kPivotTolerance)) {
      throw SingularMatrix("Cholesky pivot " + std::to_string(j) + " is " + std::to_string(diag));
    }
    const double ljj = std::sqrt(diag);
    lower_(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= lower_(i, k) * lower_(j, k);
      lower_(i, j) = s / ljj;
    }
  }
}

Vector Cholesky::forward(const Vector& b) const {
  require_same(dim(), b.size(), "Cholesky::forward");
  const std::size_t n = dim();
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= lower_(i, k) * y[k];
    y[i] = s / lower_(i, i);
  }
  return y;
}

Vector Cholesky::backward(const Vector& y) const {
  require_same(dim(), y.size(), "Cholesky::backward");
  const std::size_t n = dim();
  Vector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= lower_(k, ii) * x[k];
    x[ii] = s / lower_(ii, ii);
  }
  return x;
}

Vector solve_spd(const Matrix& a, const Vector& b) { return Cholesky(a).solve(b); }

double quad_norm_inv(const Matrix& a, const Vector& x) {
  // x^T A^{-1} x = |L^{-1} x|^2
  return norm2(Cholesky(a).forward(x));
}

std::vector<double> eig_sym(const Matrix& a) {
  const std::size_t n = a.dim();
  Matrix m = a;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    double scale = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        scale += m(r, c) * m(r, c);
        if (r != c) off += m(r, c) * m(r, c);
      }
    }
    if (off <= 1e-30 * std::max(scale, 1e-300)) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (apq == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = m(k, p);
          const double akq = m(k, q);
          m(k, p) = cs * akp - sn * akq;
          m(k, q) = sn * akp + cs * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = m(p, k);
          const double aqk = m(q, k);
          m(p, k) = cs * apk - sn * aqk;
          m(q, k) = sn * apk + cs * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = m(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

double min_eig_sym(const Matrix& a) {
  if (a.dim() == 0) return 0.0;
  return eig_sym(a).front();
}

}  // namespace payband
