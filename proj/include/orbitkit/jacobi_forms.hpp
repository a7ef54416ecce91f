#pragma once

#include <functional>

#include "orbitkit/jacobi.hpp"
#include "orbitkit/matrix.hpp"
#include "orbitkit/scalar.hpp"

namespace orbitkit {

/// Weight/index data for the scalar slash action on functions of a point
/// (Z, W).  The representation acting on the symplectic factor is the k-th
/// power of the determinant; `index` is the m x m symmetric half-integral
/// positive semidefinite matrix twisting the translation part.
struct SlashContext {
  int n = 0;
  int m = 0;
  int k = 0;
  Matrix<Rational> index;
};

/// Validates the index matrix: symmetric, twice-integral with integral
/// diagonal, positive semidefinite.
SlashContext make_slash_context(int n, int m, int k,
                                const Matrix<Rational>& index);

/// A scalar-valued function of a point, used as the argument of the slash
/// action and of Fourier-coefficient extraction.
using PointFunction = std::function<Complex(const JacobiPoint&)>;

/// The scalar cocycle factor j(g, (Z,W)): the product of the two
/// exponential twists and det(CZ+D)^{-k}.  Satisfies
/// j(g1 g2, pt) = j(g2, pt) * j(g1, g2 . pt).
Complex automorphy_factor(const SlashContext& ctx, const JacobiElement& g,
                          const JacobiPoint& pt);

/// Evaluates (f | g)(pt) = j(g, pt) * f(g . pt).
Complex slash_apply(const SlashContext& ctx, const PointFunction& f,
                    const JacobiElement& g, const JacobiPoint& pt);

/// Data of a lattice theta series: an even positive-definite integral
/// quadratic form S of even rank 2k, an integral pairing block c with one
/// column per translation dimension, and an sup-norm truncation radius.
struct ThetaSpec {
  Matrix<Rational> S;
  Matrix<Rational> c;
  int radius = 0;
};

ThetaSpec make_theta_spec(const Matrix<Rational>& S, const Matrix<Rational>& c,
                          int radius);

/// The induced index matrix (1/2) t(c) S c.
Matrix<Rational> theta_index(const ThetaSpec& spec);

/// The scalar weight attached to the series: half the rank of S.
int theta_weight(const ThetaSpec& spec);

/// Truncated lattice sum together with an a-priori bound on the omitted
/// mass.  `tail_ok` records whether the bound meets the requested
/// tolerance; a failing bound is reported, never thrown.
struct ThetaResult {
  Complex value;
  double tail_bound = 0.0;
  bool tail_ok = false;
};

/// Terms whose magnitude is provably below this threshold are skipped
/// during enumeration; the skipped mass is folded into the tail bound.
inline constexpr double kThetaPruneMagnitude = 1e-40;

/// Evaluates the truncated theta sum at the given point.  Enumeration is
/// lexicographic over the flattened integer matrix with compensated
/// sequential accumulation, so the output bits depend only on the inputs.
ThetaResult theta_eval(const ThetaSpec& spec, const JacobiPoint& pt,
                       double tol = 1e-9);

/// Residual report for the slash-invariance of a theta series under one
/// group element, sampled on a fixed five-point grid.
struct InvarianceReport {
  double residual = 0.0;
  double tail_bound = 0.0;
  double tolerance = 0.0;
  int points = 0;
  bool tail_ok = false;
  bool pass = false;
};

/// Compares (theta | g) with theta on the grid.  Requires the scalar case
/// n = m = 1; a generator with a nonzero lower-left block additionally
/// requires the form to be unimodular.
InvarianceReport theta_slash_invariance(const ThetaSpec& spec,
                                        const JacobiElement& g,
                                        double tol = 1e-6);

/// Extracts the (T, R) expansion coefficient of a doubly periodic scalar
/// function of one variable pair by trapezoid quadrature on a grid x grid
/// mesh at heights Y and V, with the exponential decay factors removed.
/// Requires 2T integral and T >= 0.
Complex fourier_coefficient(const PointFunction& f, const Rational& T, long R,
                            double Y = 1.0, double V = 1.0, int grid = 128);

}  // namespace orbitkit
