#pragma once

#include "orbitkit/matrix.hpp"
#include "orbitkit/scalar.hpp"

namespace orbitkit {

/// Finite-cyclic-grid unitary representation data: functions on the grid
/// (Z/N)^{h×g} with an integer central form c that is invertible mod N.
/// N must be odd so that the factor 2 in the phase is invertible.
struct GridRep {
  int N = 0;
  int g = 0, h = 0;
  Matrix<long> c;  // h×h symmetric, entries reduced to [0, N)
};

/// Group element over Z/N; entries reduced to [0, N).
struct GridHeisElement {
  Matrix<long> lambda, mu, kappa;  // h×g, h×g, h×h
};

GridRep make_grid_rep(int N, int g, int h, const Matrix<long>& c);

GridHeisElement make_grid_element(const GridRep& rep,
                                  const Matrix<long>& lambda,
                                  const Matrix<long>& mu,
                                  const Matrix<long>& kappa);

/// Group law (λ+λ', µ+µ', κ+κ'+λᵗµ'−µᵗλ') with entries reduced mod N.
GridHeisElement grid_mul(const GridRep& rep, const GridHeisElement& x,
                         const GridHeisElement& y);

GridHeisElement grid_inv(const GridRep& rep, const GridHeisElement& x);

/// Number of grid points N^{hg}; the matrix dimension of the model.
long grid_dimension(const GridRep& rep);

/// The operator (π(x)f)(ξ) = ω^{σ(c(κ+µᵗλ+2ξᵗµ))} f(ξ+λ) with
/// ω = e^{2πi/N}, in the row-major lexicographic basis of grid points.
/// Permutation-times-diagonal, hence unitary.
Matrix<Complex> rep_matrix(const GridRep& rep, const GridHeisElement& x);

/// Dimension of the joint commutant of the operators π(x) over the unit
/// translation generators; 1 certifies irreducibility of the model.
int commutant_dimension(const GridRep& rep);

/// Trace of rep_matrix: N^{hg}·ω^{σ(cκ)} when λ = µ = 0 and exactly 0
/// otherwise.
Complex rep_trace(const GridRep& rep, const GridHeisElement& x);

}  // namespace orbitkit
