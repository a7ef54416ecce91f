#pragma once

#include "orbitkit/matrix.hpp"

namespace orbitkit {

/// Standard skew form J = [[0, E], [-E, 0]] in n-blocks.
template <class S>
Matrix<S> standard_skew_form(int n) {
  Matrix<S> j(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    j(i, n + i) = scalar_traits<S>::one();
    j(n + i, i) = -scalar_traits<S>::one();
  }
  return j;
}

Matrix<double> inverse_transpose(const Matrix<double>& a);
Matrix<Rational> inverse_transpose(const Matrix<Rational>& a);

/// Upper-triangular generator [[A, B], [0, tA^{-1}]].
template <class S>
Matrix<S> upper_generator(const Matrix<S>& a, const Matrix<S>& b) {
  int n = a.rows();
  Matrix<S> m(2 * n, 2 * n);
  m.set_block(0, 0, a);
  m.set_block(0, n, b);
  m.set_block(n, n, inverse_transpose(a));
  return m;
}

/// Diagonal generator [[H, 0], [0, H^{-1}]].
template <class S>
Matrix<S> diagonal_generator(const Matrix<S>& h) {
  int n = h.rows();
  Matrix<S> m(2 * n, 2 * n);
  m.set_block(0, 0, h);
  Matrix<S> inv(n, n);
  for (int i = 0; i < n; ++i) inv(i, i) = scalar_traits<S>::one() / h(i, i);
  m.set_block(n, n, inv);
  return m;
}

/// Group element of the real symplectic group of rank n (2n-by-2n matrix
/// preserving the standard skew form).
template <class S>
struct SymplecticT {
  int n = 0;
  Matrix<S> M;
};

using SymplecticElement = SymplecticT<double>;

/// Residual of the defining identity tM J M = J.
double symplectic_residual(const Matrix<double>& m);

/// Validates and wraps; tolerance 1e-10 on the defining identity.
SymplecticElement make_symplectic(const Matrix<double>& m, double tol = 1e-10);

/// Exact validation for rational matrices.
SymplecticT<Rational> make_symplectic_exact(const Matrix<Rational>& m);

/// Closed-form inverse -J tM J (exact for exact scalars, stable for floats).
template <class S>
Matrix<S> symplectic_inverse(const Matrix<S>& m) {
  int n = m.rows() / 2;
  Matrix<S> j = standard_skew_form<S>(n);
  return -(j * m.transpose() * j);
}

/// Point of the space of symmetric complex matrices with positive definite
/// imaginary part.
struct SiegelPoint {
  int n = 0;
  Matrix<Complex> Z;
};

SiegelPoint make_siegel_point(const Matrix<Complex>& z, double tol = 1e-10);

/// The base point i*E_n.
SiegelPoint siegel_base_point(int n);

/// g -> tg^{-1}; the fixed points form the maximal compact subgroup.
SymplecticElement cartan_involution(const SymplecticElement& g);

/// g = k exp(X) with k in the maximal compact subgroup,
/// X symmetric and anti-fixed by the involution.
struct CartanFactors {
  SymplecticElement k;
  Matrix<double> X;
};

CartanFactors cartan_decompose(const SymplecticElement& g);

/// Fractional-linear action (AZ + B)(CZ + D)^{-1}.
/// Throws DomainError when |det(CZ + D)| < 1e-12.
SiegelPoint moebius_action(const SymplecticElement& g, const SiegelPoint& z);

/// g = n(A,B) t(H) k with A unit upper triangular, A tB = B tA,
/// H positive diagonal, k in the maximal compact subgroup.
struct IwasawaFactors {
  Matrix<double> A;
  Matrix<double> B;
  Matrix<double> H;
  SymplecticElement k;
};

IwasawaFactors iwasawa_decompose(const SymplecticElement& g);

Matrix<double> iwasawa_reconstruct(const IwasawaFactors& f);

/// Re-projects a drifted matrix onto the group via the polar/compact
/// factorization. Residual stays within 1e-9 for drifts below that scale.
SymplecticElement renormalize(const Matrix<double>& m);

/// Predicate helpers used by validity checks and tests.
bool is_unit_upper_triangular(const Matrix<double>& a, double tol);
bool is_positive_diagonal(const Matrix<double>& h, double tol);
bool is_orthogonal(const Matrix<double>& k, double tol);

}  // namespace orbitkit
