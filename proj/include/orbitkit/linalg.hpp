#pragma once

#include <string>

#include "orbitkit/matrix.hpp"

namespace orbitkit {

/// Pfaffian of an even-dimensional skew-symmetric rational matrix.
/// Sign convention: pf([[0,a],[-a,0]]) = a.
/// Throws DomainError for odd dimension or a non-skew input.
Rational pfaffian(const Matrix<Rational>& a);

/// Matrix exponential (scaling and squaring with a Taylor core).
Matrix<double> matrix_exp(const Matrix<double>& a);
Matrix<Complex> matrix_exp(const Matrix<Complex>& a);

/// Principal logarithm of a symmetric positive definite matrix.
/// Throws DomainError naming the offending eigenvalue when not SPD.
Matrix<double> matrix_log_spd(const Matrix<double>& a);

/// Additive splitting X = h + e + n into commuting parts with real spectrum,
/// purely imaginary spectrum, and nilpotent remainder.
struct JordanParts {
  Matrix<double> hyperbolic;
  Matrix<double> elliptic;
  Matrix<double> nilpotent;
};

/// Throws DomainError("ill-conditioned decomposition") when the eigenvalue
/// geometry is too ambiguous to split reliably.
JordanParts jordan_decompose(const Matrix<double>& a);

enum class ElementClass { Nilpotent, Hyperbolic, Elliptic, SemisimpleMixed, General };

const char* to_string(ElementClass c);

/// Coarse spectral classification with the given tolerance.
ElementClass classify_element(const Matrix<double>& a, double tol = 1e-9);

/// Eigenvalues of a real matrix (via a dense solver), unordered.
std::vector<Complex> eigenvalues(const Matrix<double>& a);

/// Eigenvalues of a symmetric matrix, ascending.
std::vector<double> symmetric_eigenvalues(const Matrix<double>& a);

/// Largest singular value.
double operator_norm(const Matrix<double>& a);
double operator_norm(const Matrix<Complex>& a);

/// Solves a x = b for float matrices (LU with partial pivoting).
Matrix<double> solve_lu(const Matrix<double>& a, const Matrix<double>& b);
Matrix<Complex> solve_lu(const Matrix<Complex>& a, const Matrix<Complex>& b);

Matrix<double> inverse_lu(const Matrix<double>& a);
Matrix<Complex> inverse_lu(const Matrix<Complex>& a);

double determinant_lu(const Matrix<double>& a);
Complex determinant_lu(const Matrix<Complex>& a);

/// Numerical rank with an absolute singular-value threshold.
int rank_numeric(const Matrix<double>& a, double tol);
int rank_numeric(const Matrix<Complex>& a, double tol);

}  // namespace orbitkit
