#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "orbitkit/scalar.hpp"

namespace orbitkit {

/// Dense row-major matrix over a scalar field S.
template <class S>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), d_(static_cast<size_t>(rows) * cols, S{}) {}
  Matrix(int rows, int cols, std::vector<S> data)
      : rows_(rows), cols_(cols), d_(std::move(data)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = scalar_traits<S>::one();
    return m;
  }
  static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  S& operator()(int r, int c) { return d_[static_cast<size_t>(r) * cols_ + c]; }
  const S& operator()(int r, int c) const {
    return d_[static_cast<size_t>(r) * cols_ + c];
  }

  const std::vector<S>& data() const { return d_; }
  std::vector<S>& data() { return d_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix conjugate() const {
    Matrix t(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(i, j) = scalar_traits<S>::conj((*this)(i, j));
    return t;
  }

  Matrix conjugate_transpose() const { return conjugate().transpose(); }

  Matrix block(int r0, int c0, int h, int w) const {
    Matrix b(h, w);
    for (int i = 0; i < h; ++i)
      for (int j = 0; j < w; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(int r0, int c0, const Matrix& b) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.d_.size(); ++k) r.d_[k] = a.d_[k] + b.d_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.d_.size(); ++k) r.d_[k] = a.d_[k] - b.d_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.d_.size(); ++k) r.d_[k] = -a.d_[k];
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::logic_error("matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (scalar_traits<S>::is_zero(aik)) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend Matrix operator*(const S& s, const Matrix& a) {
    Matrix r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.d_.size(); ++k) r.d_[k] = s * a.d_[k];
    return r;
  }
  Matrix& operator+=(const Matrix& o) { return *this = *this + o; }
  Matrix& operator-=(const Matrix& o) { return *this = *this - o; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::logic_error("matrix shape mismatch");
  }

  int rows_, cols_;
  std::vector<S> d_;
};

template <class S>
Matrix<S> commutator(const Matrix<S>& a, const Matrix<S>& b) {
  return a * b - b * a;
}

template <class S>
S trace(const Matrix<S>& a) {
  S t{};
  for (int i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

/// Largest |entry| (approximate magnitude for exact scalars).
template <class S>
double max_abs(const Matrix<S>& a) {
  double m = 0.0;
  for (const S& v : a.data()) m = std::max(m, scalar_traits<S>::abs_approx(v));
  return m;
}

template <class S>
double max_abs_diff(const Matrix<S>& a, const Matrix<S>& b) {
  return max_abs(a - b);
}

template <class S>
bool is_symmetric_exact(const Matrix<S>& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j)
      if (!(a(i, j) == a(j, i))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Scalar-kind conversions
// ---------------------------------------------------------------------------

inline Matrix<double> to_double(const Matrix<Rational>& a) {
  Matrix<double> r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).get_d();
  return r;
}

/// Exact embedding of float entries as dyadic rationals.
inline Matrix<Rational> to_rational(const Matrix<double>& a) {
  Matrix<Rational> r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = rational_from_double(a(i, j));
  return r;
}

inline Matrix<GaussianRational> complexify(const Matrix<Rational>& a) {
  Matrix<GaussianRational> r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = GaussianRational(a(i, j));
  return r;
}

inline Matrix<Complex> to_complex(const Matrix<double>& a) {
  Matrix<Complex> r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = Complex(a(i, j), 0.0);
  return r;
}

inline Matrix<Complex> to_complex(const Matrix<GaussianRational>& a) {
  Matrix<Complex> r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = to_complex(a(i, j));
  return r;
}

inline Matrix<double> real_part(const Matrix<Complex>& a) {
  Matrix<double> r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).real();
  return r;
}

inline Matrix<double> imag_part(const Matrix<Complex>& a) {
  Matrix<double> r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).imag();
  return r;
}

inline Matrix<Complex> make_complex(const Matrix<double>& re, const Matrix<double>& im) {
  Matrix<Complex> r(re.rows(), re.cols());
  for (int i = 0; i < re.rows(); ++i)
    for (int j = 0; j < re.cols(); ++j) r(i, j) = Complex(re(i, j), im(i, j));
  return r;
}

// ---------------------------------------------------------------------------
// Exact linear algebra (field scalars: Rational, GaussianRational)
// ---------------------------------------------------------------------------

/// In-place reduced row echelon form. Returns the pivot column list.
template <class S>
std::vector<int> rref_in_place(Matrix<S>& a) {
  static_assert(scalar_traits<S>::exact, "rref requires an exact field");
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int p = -1;
    for (int r = row; r < a.rows(); ++r)
      if (!scalar_traits<S>::is_zero(a(r, col))) { p = r; break; }
    if (p < 0) continue;
    if (p != row)
      for (int c = 0; c < a.cols(); ++c) std::swap(a(p, c), a(row, c));
    S inv = scalar_traits<S>::one() / a(row, col);
    for (int c = col; c < a.cols(); ++c) a(row, c) = inv * a(row, c);
    for (int r = 0; r < a.rows(); ++r) {
      if (r == row || scalar_traits<S>::is_zero(a(r, col))) continue;
      S f = a(r, col);
      for (int c = col; c < a.cols(); ++c) a(r, c) = a(r, c) - f * a(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class S>
int rank_exact(Matrix<S> a) {
  return static_cast<int>(rref_in_place(a).size());
}

/// Columns form a basis of the right null space of a.
template <class S>
Matrix<S> nullspace_exact(Matrix<S> a) {
  std::vector<int> pivots = rref_in_place(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<int> freecols;
  for (int c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) freecols.push_back(c);
  Matrix<S> ns(a.cols(), static_cast<int>(freecols.size()));
  for (size_t k = 0; k < freecols.size(); ++k) {
    int fc = freecols[k];
    ns(fc, static_cast<int>(k)) = scalar_traits<S>::one();
    for (size_t r = 0; r < pivots.size(); ++r)
      ns(pivots[r], static_cast<int>(k)) = -a(static_cast<int>(r), fc);
  }
  return ns;
}

/// One solution of a x = b, or nullopt when the system is inconsistent.
template <class S>
std::optional<Matrix<S>> solve_exact(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> aug(a.rows(), a.cols() + b.cols());
  aug.set_block(0, 0, a);
  aug.set_block(0, a.cols(), b);
  std::vector<int> pivots = rref_in_place(aug);
  for (int c : pivots)
    if (c >= a.cols()) return std::nullopt;
  Matrix<S> x(a.cols(), b.cols());
  for (size_t r = 0; r < pivots.size(); ++r)
    for (int j = 0; j < b.cols(); ++j)
      x(pivots[r], j) = aug(static_cast<int>(r), a.cols() + j);
  return x;
}

template <class S>
Matrix<S> inverse_exact(const Matrix<S>& a) {
  std::optional<Matrix<S>> x = solve_exact(a, Matrix<S>::identity(a.rows()));
  if (!x || rank_exact(a) != a.rows()) throw DomainError("matrix is singular");
  return *x;
}

template <class S>
S determinant_exact(Matrix<S> a) {
  static_assert(scalar_traits<S>::exact, "exact determinant requires a field");
  S det = scalar_traits<S>::one();
  int n = a.rows();
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int r = col; r < n; ++r)
      if (!scalar_traits<S>::is_zero(a(r, col))) { p = r; break; }
    if (p < 0) return S{};
    if (p != col) {
      for (int c = 0; c < n; ++c) std::swap(a(p, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    S inv = scalar_traits<S>::one() / a(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (scalar_traits<S>::is_zero(a(r, col))) continue;
      S f = inv * a(r, col);
      for (int c = col; c < n; ++c) a(r, c) = a(r, c) - f * a(col, c);
    }
  }
  return det;
}

/// Flattens column-by-column stacking of the matrix (column-major vec).
template <class S>
Matrix<S> vectorize(const Matrix<S>& a) {
  Matrix<S> v(a.rows() * a.cols(), 1);
  int k = 0;
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) v(k++, 0) = a(i, j);
  return v;
}

/// Minimum-euclidean-norm solution of a x = b over an exact field,
/// or nullopt when inconsistent.
template <class S>
std::optional<Matrix<S>> solve_min_norm_exact(const Matrix<S>& a, const Matrix<S>& b) {
  std::optional<Matrix<S>> x0 = solve_exact(a, b);
  if (!x0) return std::nullopt;
  Matrix<S> ns = nullspace_exact(a);
  if (ns.cols() == 0) return x0;
  // Project the particular solution onto the orthogonal complement of the
  // null space: x* = x0 - N (N^T N)^{-1} N^T x0.
  Matrix<S> nt = ns.transpose();
  Matrix<S> gram = nt * ns;
  Matrix<S> rhs = nt * *x0;
  std::optional<Matrix<S>> alpha = solve_exact(gram, rhs);
  if (!alpha) return x0;  // cannot happen for a full-rank basis
  return *x0 - ns * *alpha;
}

}  // namespace orbitkit
