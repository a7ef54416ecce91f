#include "orbitkit/symplectic.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "orbitkit/linalg.hpp"

namespace orbitkit {

Matrix<double> inverse_transpose(const Matrix<double>& a) {
  return inverse_lu(a).transpose();
}

Matrix<Rational> inverse_transpose(const Matrix<Rational>& a) {
  return inverse_exact(a).transpose();
}

double symplectic_residual(const Matrix<double>& m) {
  int n = m.rows() / 2;
  Matrix<double> j = standard_skew_form<double>(n);
  return max_abs(m.transpose() * j * m - j);
}

SymplecticElement make_symplectic(const Matrix<double>& m, double tol) {
  if (!m.is_square() || m.rows() % 2 != 0)
    throw DomainError("symplectic matrices have even square shape");
  if (symplectic_residual(m) > tol)
    throw DomainError("matrix does not preserve the standard skew form");
  return {m.rows() / 2, m};
}

SymplecticT<Rational> make_symplectic_exact(const Matrix<Rational>& m) {
  if (!m.is_square() || m.rows() % 2 != 0)
    throw DomainError("symplectic matrices have even square shape");
  int n = m.rows() / 2;
  Matrix<Rational> j = standard_skew_form<Rational>(n);
  if (!(m.transpose() * j * m == j))
    throw DomainError("matrix does not preserve the standard skew form");
  return {n, m};
}

SiegelPoint make_siegel_point(const Matrix<Complex>& z, double tol) {
  if (!z.is_square()) throw DomainError("point matrices must be square");
  if (max_abs_diff(z, z.transpose()) > tol)
    throw DomainError("point matrix is not symmetric");
  std::vector<double> ev = symmetric_eigenvalues(imag_part(z));
  if (ev.empty() || ev.front() <= 0.0)
    throw DomainError("imaginary part is not positive definite");
  return {z.rows(), z};
}

SiegelPoint siegel_base_point(int n) {
  Matrix<Complex> z(n, n);
  for (int i = 0; i < n; ++i) z(i, i) = Complex(0.0, 1.0);
  return {n, z};
}

SymplecticElement cartan_involution(const SymplecticElement& g) {
  return {g.n, inverse_transpose(g.M)};
}

CartanFactors cartan_decompose(const SymplecticElement& g) {
  // tg g is symmetric positive definite; its principal square root gives the
  // positive factor, the remainder is compact.
  Matrix<double> gram = g.M.transpose() * g.M;
  Matrix<double> x = 0.5 * matrix_log_spd(gram);
  Matrix<double> p_inv = matrix_exp(-x);
  Matrix<double> k = g.M * p_inv;
  return {make_symplectic(k, 1e-6), x};
}

SiegelPoint moebius_action(const SymplecticElement& g, const SiegelPoint& z) {
  int n = g.n;
  if (z.n != n) throw DomainError("rank mismatch between element and point");
  Matrix<Complex> mc = to_complex(g.M);
  Matrix<Complex> a = mc.block(0, 0, n, n);
  Matrix<Complex> b = mc.block(0, n, n, n);
  Matrix<Complex> c = mc.block(n, 0, n, n);
  Matrix<Complex> d = mc.block(n, n, n, n);
  Matrix<Complex> den = c * z.Z + d;
  if (std::abs(determinant_lu(den)) < 1e-12)
    throw DomainError("denominator matrix is singular at this point");
  Matrix<Complex> num = a * z.Z + b;
  Matrix<Complex> w = num * inverse_lu(den);
  // Symmetrize rounding noise away before validation.
  w = Complex(0.5, 0.0) * (w + w.transpose());
  return make_siegel_point(w, 1e-8);
}

namespace {

/// Upper-triangular U with positive diagonal such that Y = U tU
/// (elimination from the bottom-right corner).
Matrix<double> upper_cholesky(const Matrix<double>& y) {
  int n = y.rows();
  Matrix<double> u(n, n);
  for (int i = n - 1; i >= 0; --i) {
    double s = y(i, i);
    for (int k = i + 1; k < n; ++k) s -= u(i, k) * u(i, k);
    if (s <= 0.0) throw DomainError("matrix is not positive definite");
    u(i, i) = std::sqrt(s);
    for (int j = i - 1; j >= 0; --j) {
      double t = y(j, i);
      for (int k = i + 1; k < n; ++k) t -= u(j, k) * u(i, k);
      u(j, i) = t / u(i, i);
    }
  }
  return u;
}

}  // namespace

IwasawaFactors iwasawa_decompose(const SymplecticElement& g) {
  int n = g.n;
  SiegelPoint zp = moebius_action(g, siegel_base_point(n));
  Matrix<double> x = real_part(zp.Z);
  Matrix<double> y = imag_part(zp.Z);
  Matrix<double> u = upper_cholesky(y);
  Matrix<double> h(n, n);
  for (int i = 0; i < n; ++i) h(i, i) = u(i, i);
  Matrix<double> hinv(n, n);
  for (int i = 0; i < n; ++i) hinv(i, i) = 1.0 / u(i, i);
  Matrix<double> a = u * hinv;  // unit upper triangular
  Matrix<double> b = x * inverse_transpose(a);
  Matrix<double> na = upper_generator(a, b) * diagonal_generator(h);
  Matrix<double> k = symplectic_inverse(na) * g.M;
  return {a, b, h, make_symplectic(k, 1e-6)};
}

Matrix<double> iwasawa_reconstruct(const IwasawaFactors& f) {
  return upper_generator(f.A, f.B) * diagonal_generator(f.H) * f.k.M;
}

SymplecticElement renormalize(const Matrix<double>& m) {
  if (!m.is_square() || m.rows() % 2 != 0)
    throw DomainError("symplectic matrices have even square shape");
  int n = m.rows() / 2;
  Matrix<double> x = 0.5 * matrix_log_spd(m.transpose() * m);
  // Project the symmetric factor onto the fixed space of X -> J X J.
  Matrix<double> j = standard_skew_form<double>(n);
  x = 0.5 * (x + j * x * j);
  Matrix<double> k = m * matrix_exp(-x);
  // Project the residual compact factor onto the unitary group in its
  // complex form k ~ U = P + iQ.
  Matrix<double> p = k.block(0, 0, n, n);
  Matrix<double> q = k.block(n, 0, n, n);
  Matrix<Complex> uc = make_complex(p, -q);
  // Polar projection of U.
  Eigen::MatrixXcd eu(n, n);
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj) eu(i, jj) = uc(i, jj);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(eu, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXcd unit = svd.matrixU() * svd.matrixV().adjoint();
  Matrix<double> kp(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj) {
      double re = unit(i, jj).real();
      double im = unit(i, jj).imag();
      kp(i, jj) = re;
      kp(i, n + jj) = im;
      kp(n + i, jj) = -im;
      kp(n + i, n + jj) = re;
    }
  Matrix<double> result = kp * matrix_exp(x);
  return make_symplectic(result, 1e-7);
}

bool is_unit_upper_triangular(const Matrix<double>& a, double tol) {
  for (int i = 0; i < a.rows(); ++i) {
    if (std::fabs(a(i, i) - 1.0) > tol) return false;
    for (int j = 0; j < i; ++j)
      if (std::fabs(a(i, j)) > tol) return false;
  }
  return true;
}

bool is_positive_diagonal(const Matrix<double>& h, double tol) {
  for (int i = 0; i < h.rows(); ++i) {
    if (h(i, i) <= 0.0) return false;
    for (int j = 0; j < h.cols(); ++j)
      if (i != j && std::fabs(h(i, j)) > tol) return false;
  }
  return true;
}

bool is_orthogonal(const Matrix<double>& k, double tol) {
  return max_abs_diff(k.transpose() * k, Matrix<double>::identity(k.rows())) <= tol;
}

}  // namespace orbitkit
