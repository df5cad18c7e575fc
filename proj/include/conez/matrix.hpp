#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "conez/errors.hpp"

namespace conez {

using Vector = std::vector<double>;

/// Relative tolerances used by every verdict in the library.  A tolerance
/// eps is always applied as eps * max(1, ||input||_F), so verdicts behave
/// uniformly across input scales.
struct Tolerances {
  double eps_psd = 1e-9;   // definiteness dead band
  double eps_sym = 1e-9;   // symmetry / skewness defect
  double eps_zero = 1e-9;  // zero tests (trace, inner products, cone boundary)
};

/// Dense real n-by-n matrix, row-major.  Immutable-by-convention value type:
/// operations return fresh matrices.  Constructors and file readers reject
/// non-finite entries; arithmetic preserves finiteness for inputs in range.
class Matrix {
 public:
  explicit Matrix(int n) : n_(checked_dim(n)), a_(static_cast<std::size_t>(n) * n, 0.0) {}

  static Matrix identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n)
        throw DimensionMismatch("from_rows: row " + std::to_string(i) + " has length " +
                                std::to_string(rows[i].size()) + ", expected " + std::to_string(n));
      for (int j = 0; j < n; ++j) {
        if (!std::isfinite(rows[i][j]))
          throw NonFinite("from_rows: non-finite entry at (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
        m(i, j) = rows[i][j];
      }
    }
    return m;
  }

  int dim() const { return n_; }

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  const double* data() const { return a_.data(); }
  double* data() { return a_.data(); }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  bool is_finite() const {
    for (double v : a_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  Matrix transposed() const {
    Matrix t(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  static int checked_dim(int n) {
    if (n < 1) throw DimensionMismatch("matrix dimension must be >= 1, got " + std::to_string(n));
    return n;
  }

  int n_;
  std::vector<double> a_;
};

inline void require_same_dim(const Matrix& a, const Matrix& b, const char* op) {
  if (a.dim() != b.dim())
    throw DimensionMismatch(std::string(op) + ": dimensions " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "operator+");
  Matrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "operator-");
  Matrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

inline Matrix operator*(double s, const Matrix& a) {
  Matrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = s * a(i, j);
  return r;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "operator*");
  const int n = a.dim();
  Matrix r(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

inline Vector operator*(const Matrix& a, const Vector& x) {
  if (static_cast<int>(x.size()) != a.dim())
    throw DimensionMismatch("matrix-vector product: " + std::to_string(a.dim()) + " vs " +
                            std::to_string(x.size()));
  const int n = a.dim();
  Vector y(x.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

/// Trace inner product sum_ij A_ij * B_ij, i.e. tr(A^T B).
inline double trace_inner(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "trace_inner");
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) s += a(i, j) * b(i, j);
  return s;
}

struct SymSkewParts {
  Matrix sym;
  Matrix skew;
};

/// Split into symmetric part (M+M^T)/2 and skew part (M-M^T)/2.  The halves
/// are exactly symmetric resp. skew-symmetric; the entrywise sum reconstructs
/// M up to one rounding of each entry.
inline SymSkewParts sym_skew_split(const Matrix& m) {
  const int n = m.dim();
  SymSkewParts p{Matrix(n), Matrix(n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      p.sym(i, j) = (m(i, j) + m(j, i)) / 2.0;
      p.skew(i, j) = (m(i, j) - m(j, i)) / 2.0;
    }
  }
  return p;
}

// Vector helpers.

inline double norm(const Vector& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

inline double inner(const Vector& x, const Vector& y) {
  if (x.size() != y.size())
    throw DimensionMismatch("inner: lengths " + std::to_string(x.size()) + " vs " +
                            std::to_string(y.size()));
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline bool is_finite(const Vector& x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace conez
