#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orbitkit/heisenberg.hpp"
#include "orbitkit/matrix.hpp"
#include "orbitkit/scalar.hpp"
#include "orbitkit/symplectic.hpp"

namespace orbitkit {

// ---------------------------------------------------------------------------
// Group elements
// ---------------------------------------------------------------------------

/// Element (M, (λ, µ, κ)) of the semidirect product of the rank-n symplectic
/// group acting on the two-index Heisenberg group with λ, µ ∈ S^{m×n} and
/// κ ∈ S^{m×m}.  The pair (λ, µ) is stored in the coordinates in which the
/// product transports the left pair by the right symplectic factor.
template <class S>
struct JacobiT {
  SymplecticT<S> M;
  HeisT<S> heis;

  int n() const { return M.n; }
  int m() const { return heis.h; }
};

using JacobiElement = JacobiT<double>;
using JacobiElementQ = JacobiT<Rational>;

namespace detail {

template <class S>
void require_jacobi_dims(const JacobiT<S>& x, const JacobiT<S>& y) {
  if (x.n() != y.n() || x.m() != y.m())
    throw DomainError("dimension mismatch between operands");
}

}  // namespace detail

/// Wraps validated components; the Heisenberg block shapes must be m×n.
template <class S>
JacobiT<S> make_jacobi(const SymplecticT<S>& M, const HeisT<S>& h) {
  if (h.g != M.n) throw DomainError(
      "Heisenberg blocks do not match the symplectic rank");
  return {M, h};
}

/// Full validation from raw blocks (tolerance on the defining identities).
JacobiElement make_jacobi_element(int n, int m, const Matrix<double>& M,
                                  const Matrix<double>& lambda,
                                  const Matrix<double>& mu,
                                  const Matrix<double>& kappa,
                                  double tol = 1e-10);

/// Exact validation from rational blocks.
JacobiT<Rational> make_jacobi_exact(int n, int m, const Matrix<Rational>& M,
                                    const Matrix<Rational>& lambda,
                                    const Matrix<Rational>& mu,
                                    const Matrix<Rational>& kappa);

template <class S>
JacobiT<S> jacobi_identity_element(int n, int m) {
  return {SymplecticT<S>{n, Matrix<S>::identity(2 * n)},
          heis_identity<S>(n, m)};
}

/// Transports a row pair (λ, µ) by a 2n-by-2n matrix: the m×2n matrix
/// [λ µ] is multiplied on the right and split back into halves.
template <class S>
std::pair<Matrix<S>, Matrix<S>> transport_pair(const Matrix<S>& lambda,
                                               const Matrix<S>& mu,
                                               const Matrix<S>& M) {
  int m = lambda.rows(), n = lambda.cols();
  Matrix<S> row(m, 2 * n);
  row.set_block(0, 0, lambda);
  row.set_block(0, n, mu);
  Matrix<S> moved = row * M;
  Matrix<S> l(m, n), u(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      l(i, j) = moved(i, j);
      u(i, j) = moved(i, n + j);
    }
  return {l, u};
}

/// Product: the symplectic parts multiply, the left Heisenberg pair is
/// transported by the right symplectic part before the Heisenberg product.
template <class S>
JacobiT<S> jacobi_mul(const JacobiT<S>& x, const JacobiT<S>& y) {
  detail::require_jacobi_dims(x, y);
  auto [lt, mt] = transport_pair(x.heis.lambda, x.heis.mu, y.M.M);
  HeisT<S> moved{x.heis.g, x.heis.h, lt, mt, x.heis.kappa};
  return {SymplecticT<S>{x.M.n, x.M.M * y.M.M}, heis_mul(moved, y.heis)};
}

template <class S>
JacobiT<S> jacobi_inverse(const JacobiT<S>& x) {
  Matrix<S> minv = symplectic_inverse(x.M.M);
  auto [u, v] = transport_pair(x.heis.lambda, x.heis.mu, minv);
  return {SymplecticT<S>{x.M.n, minv},
          heis_inv(HeisT<S>{x.heis.g, x.heis.h, u, v, x.heis.kappa})};
}

/// Antisymmetric m×m form λ ᵗµ' − µ ᵗλ' governing the central coordinate;
/// invariant under simultaneous right transport of both pairs.
template <class S>
Matrix<S> q_form(const Matrix<S>& lambda, const Matrix<S>& mu,
                 const Matrix<S>& lambda2, const Matrix<S>& mu2) {
  return lambda * mu2.transpose() - mu * lambda2.transpose();
}

/// Faithful symplectic realization of size 2(n+m) with block rows and
/// columns ordered (n, m, n, m).  It is a homomorphism: the image of a
/// product is the product of the images.
template <class S>
SymplecticT<S> jacobi_embed(const JacobiT<S>& g) {
  int n = g.n(), m = g.m();
  const Matrix<S>& M = g.M.M;
  Matrix<S> a(n, n), b(n, n), c(n, n), d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a(i, j) = M(i, j);
      b(i, j) = M(i, n + j);
      c(i, j) = M(n + i, j);
      d(i, j) = M(n + i, n + j);
    }
  const Matrix<S>& l = g.heis.lambda;
  const Matrix<S>& u = g.heis.mu;
  int r2 = n, r3 = n + m, r4 = 2 * n + m;
  Matrix<S> out(2 * (n + m), 2 * (n + m));
  out.set_block(0, 0, a);
  out.set_block(0, r3, b);
  out.set_block(0, r4, a * u.transpose() - b * l.transpose());
  out.set_block(r2, 0, l);
  out.set_block(r2, r2, Matrix<S>::identity(m));
  out.set_block(r2, r3, u);
  out.set_block(r2, r4, g.heis.kappa);
  out.set_block(r3, 0, c);
  out.set_block(r3, r3, d);
  out.set_block(r3, r4, c * u.transpose() - d * l.transpose());
  out.set_block(r4, r4, Matrix<S>::identity(m));
  return {n + m, out};
}

// ---------------------------------------------------------------------------
// Acted-on space: pairs (Z, W) with Z in the Siegel space and W ∈ C^{m×n}
// ---------------------------------------------------------------------------

struct JacobiPoint {
  SiegelPoint Z;
  Matrix<Complex> W;

  int n() const { return Z.n; }
  int m() const { return W.rows(); }
};

JacobiPoint make_jacobi_point(const SiegelPoint& z, const Matrix<Complex>& w);

/// The distinguished point (iE, 0).
JacobiPoint jacobi_base_point(int n, int m);

/// (Z, W) -> ((AZ+B)(CZ+D)^{-1}, (W + λZ + µ)(CZ+D)^{-1}).
/// Throws DomainError when the denominator is near-singular.
JacobiPoint jacobi_action(const JacobiElement& g, const JacobiPoint& pt);

/// Derivative of the action of g at the distinguished point (iE, 0),
/// applied to a tangent pair (v, w) with v symmetric n×n and w m×n:
///   v ↦ ᵗ(iC+D)^{-1} v (iC+D)^{-1}
///   w ↦ w (iC+D)^{-1} + λ₀ ᵗ(iC+D)^{-1} v (iC+D)^{-1}
/// where λ₀ is the λ-part of the pair transported by the inverse
/// symplectic factor.
std::pair<Matrix<Complex>, Matrix<Complex>> jacobi_differential(
    const JacobiElement& g, const Matrix<Complex>& v,
    const Matrix<Complex>& w);

// ---------------------------------------------------------------------------
// Triangular-times-diagonal-times-compact factorization
// ---------------------------------------------------------------------------

/// g = nil · diag · compact where the symplectic parts are the unipotent
/// upper factor n(A,B), the diagonal factor t(H) and a compact factor k.
/// The Heisenberg data concentrates into a transported pair
///   λ* = λ₀ A,   µ* = µ₀ + λ₀ B ᵗA,   κ* = κ + µ* ᵗλ₀,
/// with (λ₀, µ₀) the pair moved by M^{-1}.  The central block κ* sits
/// inside the nil factor by default; the alternative mode moves it into
/// the compact factor (it is central, so the product is unchanged).
struct JacobiIwasawa {
  Matrix<double> A, B, H;
  Matrix<double> k;
  Matrix<double> lambda_star, mu_star, kappa_star;
  JacobiElement nil, diag, compact;
  bool central_in_compact = false;
};

JacobiIwasawa jacobi_iwasawa(const JacobiElement& g,
                             bool central_in_compact = false);

// ---------------------------------------------------------------------------
// Lie algebra
// ---------------------------------------------------------------------------

/// Algebra element (X, (P, Q, R)) with X in the rank-n symplectic algebra,
/// P, Q ∈ S^{m×n} and R ∈ S^{m×m} symmetric.
template <class S>
struct JacobiLieT {
  int n = 0, m = 0;
  Matrix<S> X, P, Q, R;
};

using JacobiLieElement = JacobiLieT<double>;
using JacobiLieElementQ = JacobiLieT<Rational>;

JacobiLieElement make_jacobi_lie(int n, int m, const Matrix<double>& X,
                                 const Matrix<double>& P,
                                 const Matrix<double>& Q,
                                 const Matrix<double>& R, double tol = 1e-10);

JacobiLieT<Rational> make_jacobi_lie_exact(int n, int m,
                                           const Matrix<Rational>& X,
                                           const Matrix<Rational>& P,
                                           const Matrix<Rational>& Q,
                                           const Matrix<Rational>& R);

/// Realization of size 2(n+m) matching the group embedding: with
/// X = [[a,b],[c,−ᵗa]] the image is
///   [[a,0,b,ᵗQ],[P,0,Q,R],[c,0,−ᵗa,−ᵗP],[0,0,0,0]].
template <class S>
Matrix<S> jacobi_lie_matrix(const JacobiLieT<S>& x) {
  int n = x.n, m = x.m;
  Matrix<S> a(n, n), b(n, n), c(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a(i, j) = x.X(i, j);
      b(i, j) = x.X(i, n + j);
      c(i, j) = x.X(n + i, j);
    }
  int r2 = n, r3 = n + m, r4 = 2 * n + m;
  Matrix<S> out(2 * (n + m), 2 * (n + m));
  out.set_block(0, 0, a);
  out.set_block(0, r3, b);
  out.set_block(0, r4, x.Q.transpose());
  out.set_block(r2, 0, x.P);
  out.set_block(r2, r3, x.Q);
  out.set_block(r2, r4, x.R);
  out.set_block(r3, 0, c);
  out.set_block(r3, r3, -a.transpose());
  out.set_block(r3, r4, -x.P.transpose());
  return out;
}

/// Closed-form bracket; agrees with the matrix commutator of the
/// realizations.
template <class S>
JacobiLieT<S> jacobi_lie_bracket(const JacobiLieT<S>& x,
                                 const JacobiLieT<S>& y) {
  if (x.n != y.n || x.m != y.m)
    throw DomainError("dimension mismatch between operands");
  int n = x.n;
  auto split = [n](const Matrix<S>& X, Matrix<S>& a, Matrix<S>& b,
                   Matrix<S>& c) {
    a = Matrix<S>(n, n);
    b = Matrix<S>(n, n);
    c = Matrix<S>(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        a(i, j) = X(i, j);
        b(i, j) = X(i, n + j);
        c(i, j) = X(n + i, j);
      }
  };
  Matrix<S> a1, b1, c1, a2, b2, c2;
  split(x.X, a1, b1, c1);
  split(y.X, a2, b2, c2);
  JacobiLieT<S> out;
  out.n = x.n;
  out.m = x.m;
  out.X = commutator(x.X, y.X);
  out.P = x.P * a2 + x.Q * c2 - y.P * a1 - y.Q * c1;
  out.Q = x.P * b2 - x.Q * a2.transpose() - y.P * b1 + y.Q * a1.transpose();
  out.R = x.P * y.Q.transpose() - x.Q * y.P.transpose() -
          y.P * x.Q.transpose() + y.Q * x.P.transpose();
  return out;
}

// ---------------------------------------------------------------------------
// Dual space
// ---------------------------------------------------------------------------

/// Functional with blocks (x, p, y, z, q, r): x ∈ S^{n×n}, p, q ∈ S^{n×m},
/// y, z ∈ S^{n×n} symmetric, r ∈ S^{m×m} symmetric.  Matrix form:
///   [[x,p,y,0],[0,0,0,0],[z,q,−ᵗx,0],[ᵗq,r,−ᵗp,0]].
template <class S>
struct JacobiDualT {
  int n = 0, m = 0;
  Matrix<S> x, p, y, z, q, r;
};

using JacobiDual = JacobiDualT<double>;
using JacobiDualQ = JacobiDualT<Rational>;

JacobiDual make_jacobi_dual(int n, int m, const Matrix<double>& x,
                            const Matrix<double>& p, const Matrix<double>& y,
                            const Matrix<double>& z, const Matrix<double>& q,
                            const Matrix<double>& r, double tol = 1e-10);

JacobiDualT<Rational> make_jacobi_dual_exact(int n, int m,
                                             const Matrix<Rational>& x,
                                             const Matrix<Rational>& p,
                                             const Matrix<Rational>& y,
                                             const Matrix<Rational>& z,
                                             const Matrix<Rational>& q,
                                             const Matrix<Rational>& r);

template <class S>
Matrix<S> jacobi_dual_matrix(const JacobiDualT<S>& f) {
  int n = f.n, m = f.m;
  int r2 = n, r3 = n + m, r4 = 2 * n + m;
  Matrix<S> out(2 * (n + m), 2 * (n + m));
  out.set_block(0, 0, f.x);
  out.set_block(0, r2, f.p);
  out.set_block(0, r3, f.y);
  out.set_block(r3, 0, f.z);
  out.set_block(r3, r2, f.q);
  out.set_block(r3, r3, -f.x.transpose());
  out.set_block(r4, 0, f.q.transpose());
  out.set_block(r4, r2, f.r);
  out.set_block(r4, r3, -f.p.transpose());
  return out;
}

/// Natural pairing trace(F · X) of a functional with an algebra element.
template <class S>
S jacobi_pairing(const JacobiDualT<S>& f, const JacobiLieT<S>& x) {
  if (f.n != x.n || f.m != x.m)
    throw DomainError("dimension mismatch between operands");
  return trace(jacobi_dual_matrix(f) * jacobi_lie_matrix(x));
}

/// Pairing-preserving projection of an arbitrary matrix of size 2(n+m)
/// onto the dual block shape: the unique shaped functional with the same
/// pairing against every algebra element.
template <class S>
JacobiDualT<S> project_dual(const Matrix<S>& phi, int n, int m) {
  auto blk = [&phi](int r0, int c0, int rows, int cols) {
    Matrix<S> out(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) out(i, j) = phi(r0 + i, c0 + j);
    return out;
  };
  int r2 = n, r3 = n + m, r4 = 2 * n + m;
  S half = scalar_traits<S>::one() / (scalar_traits<S>::one() +
                                      scalar_traits<S>::one());
  JacobiDualT<S> f;
  f.n = n;
  f.m = m;
  f.x = half * (blk(0, 0, n, n) - blk(r3, r3, n, n).transpose());
  f.p = half * (blk(0, r2, n, m) - blk(r4, r3, m, n).transpose());
  f.y = half * (blk(0, r3, n, n) + blk(0, r3, n, n).transpose());
  f.z = half * (blk(r3, 0, n, n) + blk(r3, 0, n, n).transpose());
  f.q = half * (blk(r3, r2, n, m) + blk(r4, 0, m, n).transpose());
  f.r = half * (blk(r4, r2, m, m) + blk(r4, r2, m, m).transpose());
  return f;
}

/// Coadjoint action: conjugates the dual matrix by the embedded group
/// element and projects back onto the dual shape.
template <class S>
JacobiDualT<S> jacobi_coadjoint(const JacobiT<S>& g, const JacobiDualT<S>& f) {
  if (f.n != g.n() || f.m != g.m())
    throw DomainError("dimension mismatch between operands");
  Matrix<S> e = jacobi_embed(g).M;
  Matrix<S> einv = jacobi_embed(jacobi_inverse(g)).M;
  return project_dual(e * jacobi_dual_matrix(f) * einv, f.n, f.m);
}

/// Flattened linear coordinates (x, p, y, z, q, r row-major) as a column.
template <class S>
Matrix<S> dual_coordinate_vector(const JacobiDualT<S>& f) {
  int n = f.n, m = f.m;
  int total = 3 * n * n + 2 * n * m + m * m;
  Matrix<S> out(total, 1);
  int at = 0;
  auto push = [&](const Matrix<S>& mat) {
    for (int i = 0; i < mat.rows(); ++i)
      for (int j = 0; j < mat.cols(); ++j) out(at++, 0) = mat(i, j);
  };
  push(f.x);
  push(f.p);
  push(f.y);
  push(f.z);
  push(f.q);
  push(f.r);
  return out;
}

// ---------------------------------------------------------------------------
// Distinguished generators and exact structure-constant verification
// ---------------------------------------------------------------------------

/// Real generator families, stored on full index grids so that the
/// built-in index symmetries (A_ij = A_ji, S_ij = −S_ji, ...) hold by
/// construction.  Sizes: A, B, S, T over n×n; D0 over m×m; D, Dhat over
/// m×n.  All matrices have size 2(n+m).
struct RealBasis {
  int n = 0, m = 0;
  std::vector<std::vector<Matrix<Rational>>> A, B, S, T, D0, D, Dhat;
};

RealBasis real_basis(int n, int m);

/// Complex combinations: Z0 = −i D0, Y± = (D ± i Dhat)/2, Z+ = −S,
/// Z− = −i T, X± = (A ± i B)/2.
struct ComplexBasis {
  int n = 0, m = 0;
  std::vector<std::vector<Matrix<GaussianRational>>> Z0, Yp, Ym, Zp, Zm, Xp,
      Xm;
};

ComplexBasis complex_basis(int n, int m);

struct LabeledGenerator {
  std::string name;
  Matrix<GaussianRational> mat;
};

/// Subalgebra annihilating the distinguished point: S (i<j), T (k≤l),
/// D0 (a≤b).
std::vector<LabeledGenerator> stabilizer_basis(const RealBasis& basis);
/// Complement moving the point: A (i≤j), B (i≤j), D, Dhat (all).
std::vector<LabeledGenerator> transverse_basis(const RealBasis& basis);
/// Translation ideal: D0 (a≤b), D, Dhat (all).
std::vector<LabeledGenerator> translation_basis(const RealBasis& basis);
/// Complexified stabilizer: Z0 (a≤b), Z+ (i<j), Z− (k≤l).
std::vector<LabeledGenerator> stabilizer_complex_basis(
    const ComplexBasis& basis);
/// +i eigendirections of the complex structure: X+ (i≤j), Y+ (all).
std::vector<LabeledGenerator> holomorphic_basis(const ComplexBasis& basis);
/// −i eigendirections: X− (i≤j), Y− (all).
std::vector<LabeledGenerator> antiholomorphic_basis(const ComplexBasis& basis);

struct BracketTerm {
  GaussianRational coef;
  std::string gen;
};

struct TableIdentity {
  std::string lhs1, lhs2;
  std::vector<BracketTerm> rhs;
  bool pass = false;
};

/// Exact verification of the closed-form structure constants of both the
/// real and complexified generator families, plus the structural
/// certificates: subalgebra closures, the translation ideal, the abelian
/// eigendirection pair, and the witness element that escapes the
/// stabilizer span.
struct CommutationReport {
  int n = 0, m = 0;
  std::vector<TableIdentity> real_identities, complex_identities;
  int real_failed = 0, complex_failed = 0;
  bool stabilizer_closed = false;
  bool stabilizer_moves_transverse = false;
  bool translation_ideal = false;
  bool translation_closed = false;
  bool witness_outside_stabilizer = false;
  bool holomorphic_abelian = false;
  bool antiholomorphic_abelian = false;
  bool stabilizer_preserves_holomorphic = false;
  bool stabilizer_preserves_antiholomorphic = false;
  bool squares_vanish = false;

  bool all_pass() const {
    return real_failed == 0 && complex_failed == 0 && stabilizer_closed &&
           stabilizer_moves_transverse && translation_ideal &&
           translation_closed && witness_outside_stabilizer &&
           holomorphic_abelian && antiholomorphic_abelian &&
           stabilizer_preserves_holomorphic &&
           stabilizer_preserves_antiholomorphic && squares_vanish;
  }
};

CommutationReport verify_commutation_table(int n, int m);

/// Exact check that the trace form of the adjoint representation of the
/// rank-n symplectic algebra equals 2(n+1) times the trace form of the
/// defining representation, over every pair of basis elements.
struct KillingReport {
  int n = 0;
  int pairs = 0;
  bool all_match = false;
  Rational neutral_pairing;  // value on the first diagonal generator pair
};

KillingReport killing_check(int n);

// ---------------------------------------------------------------------------
// Complex structure on the tangent space at the distinguished point
// ---------------------------------------------------------------------------

/// Tangent datum: symplectic part [[Y,X],[X,−Y]] (X, Y symmetric n×n)
/// plus translation part (P, Q) with P, Q ∈ S^{m×n}.
template <class S>
struct TangentVector {
  int n = 0, m = 0;
  Matrix<S> Y, X, P, Q;
};

/// The square-root-of-minus-one operator (Y, X, P, Q) ↦ (X, −Y, Q, −P).
template <class S>
TangentVector<S> complex_structure(const TangentVector<S>& v) {
  return {v.n, v.m, v.X, -v.Y, v.Q, -v.P};
}

TangentVector<double> make_tangent_vector(int n, int m,
                                          const Matrix<double>& Y,
                                          const Matrix<double>& X,
                                          const Matrix<double>& P,
                                          const Matrix<double>& Q,
                                          double tol = 1e-10);

// ---------------------------------------------------------------------------
// Coadjoint orbit families (scalar case n = m = 1)
// ---------------------------------------------------------------------------

/// Coefficients of a scalar-case functional in the six-generator dual
/// basis; the off-diagonal blocks of the matrix form are y+z and y−z.
struct OrbitCoefficients {
  double x = 0, y = 0, z = 0, p = 0, q = 0, r = 0;
};

OrbitCoefficients orbit_coefficients(const JacobiDual& f);

JacobiDual coefficients_to_dual(const OrbitCoefficients& c);

/// Named scalar-case orbit family with its parameters:
///   "X", "Y"          one-sheet quadric, translation part zero
///   "Z"               two-sheet quadric minus its apex neighbourhood
///   "S", "T"          forward / backward cone
///   "P", "Q"          incidence plane, nonzero translation pair
///   "R"               parabolic family, parameter h ≠ 0
///   "mR+alphaX", "mR+alphaY", "mR+kZ"
///                     mixed families, parameters mass and alpha / k
struct OrbitFamilySpec {
  std::string family;
  double h = 0;
  double mass = 0;
  double alpha = 0;
  double k = 0;
};

struct OrbitMembership {
  double residual = 0;   // largest absolute defining-equation violation
  bool side_ok = false;  // strict sign / nondegeneracy conditions
  bool member = false;
  std::string note;
};

OrbitMembership check_orbit_membership(const OrbitCoefficients& c,
                                       const OrbitFamilySpec& fam,
                                       double tol = 1e-9);

/// Residual of the closed-form description of the lowest-dimensional
/// orbits through r = delta: with X = [[x,y],[z,−ᵗx]] and J the standard
/// skew form, X J must equal (p;q) delta^{-1} ᵗ(p;q) and r must equal
/// delta.  Throws DomainError for singular delta.
double minimal_orbit_residual(const JacobiDual& f, const Matrix<double>& delta);

}  // namespace orbitkit
