#include "orbitkit/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <tuple>
#include <utility>

#include "orbitkit/linalg.hpp"
#include "orbitkit/sl2.hpp"

namespace orbitkit {

namespace {

bool nearly_symmetric(const Matrix<double>& a, double tol) {
  return max_abs_diff(a, a.transpose()) <= tol;
}

void require_shape(const Matrix<double>& a, int rows, int cols,
                   const char* what) {
  if (a.rows() != rows || a.cols() != cols) throw DomainError(what);
}

void require_shape(const Matrix<Rational>& a, int rows, int cols,
                   const char* what) {
  if (a.rows() != rows || a.cols() != cols) throw DomainError(what);
}

constexpr const char* kShapeMsg =
    "block shapes do not match the declared dimensions";

}  // namespace

// ---------------------------------------------------------------------------
// Validating constructors
// ---------------------------------------------------------------------------

JacobiElement make_jacobi_element(int n, int m, const Matrix<double>& M,
                                  const Matrix<double>& lambda,
                                  const Matrix<double>& mu,
                                  const Matrix<double>& kappa, double tol) {
  if (n <= 0 || m <= 0) throw DomainError("dimensions must be positive");
  if (M.rows() != 2 * n || M.cols() != 2 * n) throw DomainError(kShapeMsg);
  SymplecticElement sym = make_symplectic(M, tol);
  if (sym.n != n) throw DomainError(kShapeMsg);
  return {sym, make_heis(n, m, lambda, mu, kappa, tol)};
}

JacobiT<Rational> make_jacobi_exact(int n, int m, const Matrix<Rational>& M,
                                    const Matrix<Rational>& lambda,
                                    const Matrix<Rational>& mu,
                                    const Matrix<Rational>& kappa) {
  if (n <= 0 || m <= 0) throw DomainError("dimensions must be positive");
  if (M.rows() != 2 * n || M.cols() != 2 * n) throw DomainError(kShapeMsg);
  SymplecticT<Rational> sym = make_symplectic_exact(M);
  return {sym, make_heis(n, m, lambda, mu, kappa)};
}

JacobiLieElement make_jacobi_lie(int n, int m, const Matrix<double>& X,
                                 const Matrix<double>& P,
                                 const Matrix<double>& Q,
                                 const Matrix<double>& R, double tol) {
  if (n <= 0 || m <= 0) throw DomainError("dimensions must be positive");
  require_shape(X, 2 * n, 2 * n, kShapeMsg);
  require_shape(P, m, n, kShapeMsg);
  require_shape(Q, m, n, kShapeMsg);
  require_shape(R, m, m, kShapeMsg);
  Matrix<double> j = standard_skew_form<double>(n);
  if (max_abs(X.transpose() * j + j * X) > tol)
    throw DomainError("matrix is outside the rank-n symplectic algebra");
  if (!nearly_symmetric(R, tol))
    throw DomainError("central block must be symmetric");
  return {n, m, X, P, Q, R};
}

JacobiLieT<Rational> make_jacobi_lie_exact(int n, int m,
                                           const Matrix<Rational>& X,
                                           const Matrix<Rational>& P,
                                           const Matrix<Rational>& Q,
                                           const Matrix<Rational>& R) {
  if (n <= 0 || m <= 0) throw DomainError("dimensions must be positive");
  require_shape(X, 2 * n, 2 * n, kShapeMsg);
  require_shape(P, m, n, kShapeMsg);
  require_shape(Q, m, n, kShapeMsg);
  require_shape(R, m, m, kShapeMsg);
  Matrix<Rational> j = standard_skew_form<Rational>(n);
  if (!((X.transpose() * j + j * X) == Matrix<Rational>(2 * n, 2 * n)))
    throw DomainError("matrix is outside the rank-n symplectic algebra");
  if (!(R == R.transpose()))
    throw DomainError("central block must be symmetric");
  return {n, m, X, P, Q, R};
}

JacobiDual make_jacobi_dual(int n, int m, const Matrix<double>& x,
                            const Matrix<double>& p, const Matrix<double>& y,
                            const Matrix<double>& z, const Matrix<double>& q,
                            const Matrix<double>& r, double tol) {
  if (n <= 0 || m <= 0) throw DomainError("dimensions must be positive");
  require_shape(x, n, n, kShapeMsg);
  require_shape(p, n, m, kShapeMsg);
  require_shape(y, n, n, kShapeMsg);
  require_shape(z, n, n, kShapeMsg);
  require_shape(q, n, m, kShapeMsg);
  require_shape(r, m, m, kShapeMsg);
  if (!nearly_symmetric(y, tol) || !nearly_symmetric(z, tol) ||
      !nearly_symmetric(r, tol))
    throw DomainError("symmetric blocks of a functional must be symmetric");
  return {n, m, x, p, y, z, q, r};
}

JacobiDualT<Rational> make_jacobi_dual_exact(int n, int m,
                                             const Matrix<Rational>& x,
                                             const Matrix<Rational>& p,
                                             const Matrix<Rational>& y,
                                             const Matrix<Rational>& z,
                                             const Matrix<Rational>& q,
                                             const Matrix<Rational>& r) {
  if (n <= 0 || m <= 0) throw DomainError("dimensions must be positive");
  require_shape(x, n, n, kShapeMsg);
  require_shape(p, n, m, kShapeMsg);
  require_shape(y, n, n, kShapeMsg);
  require_shape(z, n, n, kShapeMsg);
  require_shape(q, n, m, kShapeMsg);
  require_shape(r, m, m, kShapeMsg);
  if (!(y == y.transpose()) || !(z == z.transpose()) ||
      !(r == r.transpose()))
    throw DomainError("symmetric blocks of a functional must be symmetric");
  return {n, m, x, p, y, z, q, r};
}

// ---------------------------------------------------------------------------
// Acted-on space
// ---------------------------------------------------------------------------

JacobiPoint make_jacobi_point(const SiegelPoint& z, const Matrix<Complex>& w) {
  if (w.rows() <= 0 || w.cols() != z.n)
    throw DomainError("block shapes do not match the declared dimensions");
  return {z, w};
}

JacobiPoint jacobi_base_point(int n, int m) {
  if (n <= 0 || m <= 0) throw DomainError("dimensions must be positive");
  return {siegel_base_point(n), Matrix<Complex>(m, n)};
}

namespace {

/// Lower half blocks C, D of a 2n-by-2n matrix, complexified.
std::pair<Matrix<Complex>, Matrix<Complex>> lower_blocks(
    const Matrix<double>& M, int n) {
  Matrix<Complex> c(n, n), d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      c(i, j) = M(n + i, j);
      d(i, j) = M(n + i, n + j);
    }
  return {c, d};
}

}  // namespace

JacobiPoint jacobi_action(const JacobiElement& g, const JacobiPoint& pt) {
  if (g.n() != pt.n() || g.m() != pt.m())
    throw DomainError("dimension mismatch between operands");
  int n = g.n();
  auto [c, d] = lower_blocks(g.M.M, n);
  Matrix<Complex> den = c * pt.Z.Z + d;
  if (std::abs(determinant_lu(den)) < 1e-12)
    throw DomainError("action denominator is singular");
  SiegelPoint z2 = moebius_action(g.M, pt.Z);
  Matrix<Complex> num = pt.W + to_complex(g.heis.lambda) * pt.Z.Z +
                        to_complex(g.heis.mu);
  return {z2, num * inverse_lu(den)};
}

std::pair<Matrix<Complex>, Matrix<Complex>> jacobi_differential(
    const JacobiElement& g, const Matrix<Complex>& v,
    const Matrix<Complex>& w) {
  int n = g.n(), m = g.m();
  if (v.rows() != n || v.cols() != n || w.rows() != m || w.cols() != n)
    throw DomainError("block shapes do not match the declared dimensions");
  if (max_abs_diff(v, v.transpose()) > 1e-9)
    throw DomainError("tangent block must be symmetric");
  auto [c, d] = lower_blocks(g.M.M, n);
  Matrix<Complex> den = Complex(0, 1) * c + d;
  if (std::abs(determinant_lu(den)) < 1e-12)
    throw DomainError("action denominator is singular");
  Matrix<Complex> den_inv = inverse_lu(den);
  auto [l0, u0] =
      transport_pair(g.heis.lambda, g.heis.mu, symplectic_inverse(g.M.M));
  (void)u0;
  Matrix<Complex> v2 = den_inv.transpose() * v * den_inv;
  Matrix<Complex> w2 = w * den_inv + to_complex(l0) * v2;
  return {v2, w2};
}

TangentVector<double> make_tangent_vector(int n, int m,
                                          const Matrix<double>& Y,
                                          const Matrix<double>& X,
                                          const Matrix<double>& P,
                                          const Matrix<double>& Q,
                                          double tol) {
  if (n <= 0 || m <= 0) throw DomainError("dimensions must be positive");
  require_shape(Y, n, n, kShapeMsg);
  require_shape(X, n, n, kShapeMsg);
  require_shape(P, m, n, kShapeMsg);
  require_shape(Q, m, n, kShapeMsg);
  if (!nearly_symmetric(Y, tol) || !nearly_symmetric(X, tol))
    throw DomainError("tangent block must be symmetric");
  return {n, m, Y, X, P, Q};
}

// ---------------------------------------------------------------------------
// Triangular-times-diagonal-times-compact factorization
// ---------------------------------------------------------------------------

JacobiIwasawa jacobi_iwasawa(const JacobiElement& g, bool central_in_compact) {
  int n = g.n(), m = g.m();
  IwasawaFactors f = iwasawa_decompose(g.M);

  auto [l0, u0] =
      transport_pair(g.heis.lambda, g.heis.mu, symplectic_inverse(g.M.M));
  Matrix<double> ls = l0 * f.A;
  Matrix<double> ms = u0 + l0 * f.B * f.A.transpose();
  Matrix<double> ks = g.heis.kappa + ms * l0.transpose();

  Matrix<double> zmn(m, n), zmm(m, m);
  JacobiIwasawa out;
  out.A = f.A;
  out.B = f.B;
  out.H = f.H;
  out.k = f.k.M;
  out.lambda_star = ls;
  out.mu_star = ms;
  out.kappa_star = ks;
  out.central_in_compact = central_in_compact;

  Matrix<double> mu_nil = ms * inverse_transpose(f.A);
  out.nil = {SymplecticElement{n, upper_generator(f.A, f.B)},
             HeisElement{n, m, zmn, mu_nil, central_in_compact ? zmm : ks}};
  out.diag = {SymplecticElement{n, diagonal_generator(f.H)},
              HeisElement{n, m, ls * f.H, zmn, zmm}};
  out.compact = {f.k,
                 HeisElement{n, m, zmn, zmn, central_in_compact ? ks : zmm}};
  return out;
}

// ---------------------------------------------------------------------------
// Distinguished generators
// ---------------------------------------------------------------------------

namespace {

using QMat = Matrix<Rational>;
using CMat = Matrix<GaussianRational>;

using Grid = std::vector<std::vector<QMat>>;
using CGrid = std::vector<std::vector<CMat>>;

Grid make_grid(int rows, int cols, int d) {
  return Grid(rows, std::vector<QMat>(cols, QMat(d, d)));
}

}  // namespace

RealBasis real_basis(int n, int m) {
  if (n <= 0 || m <= 0) throw DomainError("dimensions must be positive");
  int d = 2 * (n + m);
  int r2 = n, r3 = n + m, r4 = 2 * n + m;
  RealBasis t;
  t.n = n;
  t.m = m;
  t.A = make_grid(n, n, d);
  t.B = make_grid(n, n, d);
  t.S = make_grid(n, n, d);
  t.T = make_grid(n, n, d);
  t.D0 = make_grid(m, m, d);
  t.D = make_grid(m, n, d);
  t.Dhat = make_grid(m, n, d);
  Rational half = make_rational(1, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      QMat& a = t.A[i][j];
      a(i, j) += 1;
      a(j, i) += 1;
      a(r3 + i, r3 + j) -= 1;
      a(r3 + j, r3 + i) -= 1;
      QMat& b = t.B[i][j];
      b(i, r3 + j) += 1;
      b(j, r3 + i) += 1;
      b(r3 + i, j) += 1;
      b(r3 + j, i) += 1;
      QMat& s = t.S[i][j];
      s(i, j) += 1;
      s(j, i) -= 1;
      s(r3 + i, r3 + j) += 1;
      s(r3 + j, r3 + i) -= 1;
      QMat& tt = t.T[i][j];
      tt(i, r3 + j) += 1;
      tt(j, r3 + i) += 1;
      tt(r3 + i, j) -= 1;
      tt(r3 + j, i) -= 1;
    }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      QMat& d0 = t.D0[a][b];
      d0(r2 + a, r4 + b) += half;
      d0(r2 + b, r4 + a) += half;
    }
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < n; ++q) {
      QMat& dd = t.D[p][q];
      dd(r2 + p, q) = 1;
      dd(r3 + q, r4 + p) = -1;
      QMat& dh = t.Dhat[p][q];
      dh(q, r4 + p) = 1;
      dh(r2 + p, r3 + q) = 1;
    }
  return t;
}

ComplexBasis complex_basis(int n, int m) {
  RealBasis re = real_basis(n, m);
  int d = 2 * (n + m);
  ComplexBasis t;
  t.n = n;
  t.m = m;
  auto cgrid = [d](int rows, int cols) {
    return CGrid(rows, std::vector<CMat>(cols, CMat(d, d)));
  };
  t.Z0 = cgrid(m, m);
  t.Yp = cgrid(m, n);
  t.Ym = cgrid(m, n);
  t.Zp = cgrid(n, n);
  t.Zm = cgrid(n, n);
  t.Xp = cgrid(n, n);
  t.Xm = cgrid(n, n);
  GaussianRational i = gauss_i();
  GaussianRational half{make_rational(1, 2)};
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t.Z0[a][b] = -i * complexify(re.D0[a][b]);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < n; ++q) {
      CMat dd = complexify(re.D[p][q]);
      CMat dh = complexify(re.Dhat[p][q]);
      t.Yp[p][q] = half * (dd + i * dh);
      t.Ym[p][q] = half * (dd - i * dh);
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      t.Zp[a][b] = -complexify(re.S[a][b]);
      t.Zm[a][b] = -i * complexify(re.T[a][b]);
      CMat aa = complexify(re.A[a][b]);
      CMat bb = complexify(re.B[a][b]);
      t.Xp[a][b] = half * (aa + i * bb);
      t.Xm[a][b] = half * (aa - i * bb);
    }
  return t;
}

namespace {

std::string gen_name(const char* fam, int i, int j) {
  return std::string(fam) + "_" + std::to_string(i + 1) + std::to_string(j + 1);
}

}  // namespace

std::vector<LabeledGenerator> stabilizer_basis(const RealBasis& basis) {
  std::vector<LabeledGenerator> out;
  for (int i = 0; i < basis.n; ++i)
    for (int j = i + 1; j < basis.n; ++j)
      out.push_back({gen_name("S", i, j), complexify(basis.S[i][j])});
  for (int i = 0; i < basis.n; ++i)
    for (int j = i; j < basis.n; ++j)
      out.push_back({gen_name("T", i, j), complexify(basis.T[i][j])});
  for (int a = 0; a < basis.m; ++a)
    for (int b = a; b < basis.m; ++b)
      out.push_back({gen_name("D0", a, b), complexify(basis.D0[a][b])});
  return out;
}

std::vector<LabeledGenerator> transverse_basis(const RealBasis& basis) {
  std::vector<LabeledGenerator> out;
  for (int i = 0; i < basis.n; ++i)
    for (int j = i; j < basis.n; ++j)
      out.push_back({gen_name("A", i, j), complexify(basis.A[i][j])});
  for (int i = 0; i < basis.n; ++i)
    for (int j = i; j < basis.n; ++j)
      out.push_back({gen_name("B", i, j), complexify(basis.B[i][j])});
  for (int p = 0; p < basis.m; ++p)
    for (int q = 0; q < basis.n; ++q)
      out.push_back({gen_name("D", p, q), complexify(basis.D[p][q])});
  for (int p = 0; p < basis.m; ++p)
    for (int q = 0; q < basis.n; ++q)
      out.push_back({gen_name("Dhat", p, q), complexify(basis.Dhat[p][q])});
  return out;
}

std::vector<LabeledGenerator> translation_basis(const RealBasis& basis) {
  std::vector<LabeledGenerator> out;
  for (int a = 0; a < basis.m; ++a)
    for (int b = a; b < basis.m; ++b)
      out.push_back({gen_name("D0", a, b), complexify(basis.D0[a][b])});
  for (int p = 0; p < basis.m; ++p)
    for (int q = 0; q < basis.n; ++q)
      out.push_back({gen_name("D", p, q), complexify(basis.D[p][q])});
  for (int p = 0; p < basis.m; ++p)
    for (int q = 0; q < basis.n; ++q)
      out.push_back({gen_name("Dhat", p, q), complexify(basis.Dhat[p][q])});
  return out;
}

std::vector<LabeledGenerator> stabilizer_complex_basis(
    const ComplexBasis& basis) {
  std::vector<LabeledGenerator> out;
  for (int a = 0; a < basis.m; ++a)
    for (int b = a; b < basis.m; ++b)
      out.push_back({gen_name("Z0", a, b), basis.Z0[a][b]});
  for (int i = 0; i < basis.n; ++i)
    for (int j = i + 1; j < basis.n; ++j)
      out.push_back({gen_name("Z+", i, j), basis.Zp[i][j]});
  for (int i = 0; i < basis.n; ++i)
    for (int j = i; j < basis.n; ++j)
      out.push_back({gen_name("Z-", i, j), basis.Zm[i][j]});
  return out;
}

std::vector<LabeledGenerator> holomorphic_basis(const ComplexBasis& basis) {
  std::vector<LabeledGenerator> out;
  for (int i = 0; i < basis.n; ++i)
    for (int j = i; j < basis.n; ++j)
      out.push_back({gen_name("X+", i, j), basis.Xp[i][j]});
  for (int p = 0; p < basis.m; ++p)
    for (int q = 0; q < basis.n; ++q)
      out.push_back({gen_name("Y+", p, q), basis.Yp[p][q]});
  return out;
}

std::vector<LabeledGenerator> antiholomorphic_basis(const ComplexBasis& basis) {
  std::vector<LabeledGenerator> out;
  for (int i = 0; i < basis.n; ++i)
    for (int j = i; j < basis.n; ++j)
      out.push_back({gen_name("X-", i, j), basis.Xm[i][j]});
  for (int p = 0; p < basis.m; ++p)
    for (int q = 0; q < basis.n; ++q)
      out.push_back({gen_name("Y-", p, q), basis.Ym[p][q]});
  return out;
}

// ---------------------------------------------------------------------------
// Structure-constant verification
// ---------------------------------------------------------------------------

namespace {

enum class Fam { A, B, S, T, D0, D, Dh, Z0, Yp, Ym, Zp, Zm, Xp, Xm };

const char* fam_name(Fam f) {
  switch (f) {
    case Fam::A: return "A";
    case Fam::B: return "B";
    case Fam::S: return "S";
    case Fam::T: return "T";
    case Fam::D0: return "D0";
    case Fam::D: return "D";
    case Fam::Dh: return "Dhat";
    case Fam::Z0: return "Z0";
    case Fam::Yp: return "Y+";
    case Fam::Ym: return "Y-";
    case Fam::Zp: return "Z+";
    case Fam::Zm: return "Z-";
    case Fam::Xp: return "X+";
    case Fam::Xm: return "X-";
  }
  return "?";
}

/// Index symmetry of a family: +1 symmetric, -1 antisymmetric, 0 none.
int fam_symmetry(Fam f) {
  switch (f) {
    case Fam::A:
    case Fam::B:
    case Fam::T:
    case Fam::D0:
    case Fam::Z0:
    case Fam::Zm:
    case Fam::Xp:
    case Fam::Xm: return 1;
    case Fam::S:
    case Fam::Zp: return -1;
    default: return 0;
  }
}

struct TermI {
  GaussianRational coef;
  Fam fam;
  int i, j;
};

/// Canonicalize indices by the family symmetry, merge duplicates, drop
/// zeros; deterministic order by (family, i, j).
std::vector<TermI> normalize_terms(std::vector<TermI> terms) {
  std::map<std::tuple<int, int, int>, GaussianRational> acc;
  for (TermI& t : terms) {
    int sym = fam_symmetry(t.fam);
    GaussianRational c = t.coef;
    int i = t.i, j = t.j;
    if (sym != 0 && i > j) {
      std::swap(i, j);
      if (sym < 0) c = -c;
    }
    if (sym < 0 && i == j) continue;
    acc[{static_cast<int>(t.fam), i, j}] += c;
  }
  std::vector<TermI> out;
  for (auto& [key, c] : acc) {
    if (c == GaussianRational()) continue;
    out.push_back({c, static_cast<Fam>(std::get<0>(key)), std::get<1>(key),
                   std::get<2>(key)});
  }
  return out;
}

class TableContext {
 public:
  TableContext(int n, int m) : n_(n), m_(m), real_(real_basis(n, m)),
                               cplx_(complex_basis(n, m)) {
    auto lift = [](const Grid& g) {
      CGrid out(g.size());
      for (size_t i = 0; i < g.size(); ++i)
        for (const QMat& q : g[i]) out[i].push_back(complexify(q));
      return out;
    };
    Ac_ = lift(real_.A);
    Bc_ = lift(real_.B);
    Sc_ = lift(real_.S);
    Tc_ = lift(real_.T);
    D0c_ = lift(real_.D0);
    Dc_ = lift(real_.D);
    Dhc_ = lift(real_.Dhat);
  }

  const RealBasis& real() const { return real_; }
  const ComplexBasis& cplx() const { return cplx_; }
  int n() const { return n_; }
  int m() const { return m_; }

  const CMat& gen(Fam f, int i, int j) const {
    switch (f) {
      case Fam::A: return Ac_[i][j];
      case Fam::B: return Bc_[i][j];
      case Fam::S: return Sc_[i][j];
      case Fam::T: return Tc_[i][j];
      case Fam::D0: return D0c_[i][j];
      case Fam::D: return Dc_[i][j];
      case Fam::Dh: return Dhc_[i][j];
      case Fam::Z0: return cplx_.Z0[i][j];
      case Fam::Yp: return cplx_.Yp[i][j];
      case Fam::Ym: return cplx_.Ym[i][j];
      case Fam::Zp: return cplx_.Zp[i][j];
      case Fam::Zm: return cplx_.Zm[i][j];
      case Fam::Xp: return cplx_.Xp[i][j];
      case Fam::Xm: return cplx_.Xm[i][j];
    }
    return Ac_[0][0];
  }

  /// First index bound of a family (rows of its grid).
  int rows(Fam f) const {
    switch (f) {
      case Fam::D0:
      case Fam::Z0:
      case Fam::D:
      case Fam::Dh:
      case Fam::Yp:
      case Fam::Ym: return m_;
      default: return n_;
    }
  }

  int cols(Fam f) const {
    switch (f) {
      case Fam::D0:
      case Fam::Z0: return m_;
      default: return n_;
    }
  }

 private:
  int n_, m_;
  RealBasis real_;
  ComplexBasis cplx_;
  CGrid Ac_, Bc_, Sc_, Tc_, D0c_, Dc_, Dhc_;
};

using RuleFn =
    std::function<void(int, int, int, int, std::vector<TermI>&)>;

struct Rule {
  Fam f1, f2;
  RuleFn rhs;
};

GaussianRational gr(int v) { return GaussianRational(Rational(v)); }

/// Four-delta pattern over a target family with signs (s1..s4):
///   s1 δ_ik F_jl + s2 δ_il F_jk + s3 δ_jk F_il + s4 δ_jl F_ik.
RuleFn sp_pattern(Fam target, int s1, int s2, int s3, int s4,
                  GaussianRational scale = gr(1)) {
  return [=](int i, int j, int k, int l, std::vector<TermI>& out) {
    if (i == k && s1) out.push_back({scale * gr(s1), target, j, l});
    if (i == l && s2) out.push_back({scale * gr(s2), target, j, k});
    if (j == k && s3) out.push_back({scale * gr(s3), target, i, l});
    if (j == l && s4) out.push_back({scale * gr(s4), target, i, k});
  };
}

/// Two-delta pattern for mixed brackets with a translation generator on
/// the left: s1 δ_qi F_pj + s2 δ_qj F_pi.
RuleFn mixed_pattern(Fam target, int s1, int s2) {
  return [=](int p, int q, int i, int j, std::vector<TermI>& out) {
    if (q == i && s1) out.push_back({gr(s1), target, p, j});
    if (q == j && s2) out.push_back({gr(s2), target, p, i});
  };
}

RuleFn zero_rule() {
  return [](int, int, int, int, std::vector<TermI>&) {};
}

std::vector<Rule> real_rules() {
  std::vector<Rule> r;
  r.push_back({Fam::A, Fam::A, sp_pattern(Fam::S, 1, 1, 1, 1)});
  r.push_back({Fam::A, Fam::B, sp_pattern(Fam::T, 1, 1, 1, 1)});
  r.push_back({Fam::A, Fam::S, sp_pattern(Fam::A, 1, -1, 1, -1)});
  r.push_back({Fam::A, Fam::T, sp_pattern(Fam::B, 1, 1, 1, 1)});
  r.push_back({Fam::B, Fam::B, sp_pattern(Fam::S, 1, 1, 1, 1)});
  r.push_back({Fam::B, Fam::S, sp_pattern(Fam::B, 1, -1, 1, -1)});
  r.push_back({Fam::B, Fam::T, sp_pattern(Fam::A, -1, -1, -1, -1)});
  r.push_back({Fam::S, Fam::S, sp_pattern(Fam::S, -1, 1, 1, -1)});
  r.push_back({Fam::S, Fam::T, sp_pattern(Fam::T, -1, -1, 1, 1)});
  r.push_back({Fam::T, Fam::T, sp_pattern(Fam::S, -1, -1, -1, -1)});
  for (Fam f : {Fam::A, Fam::B, Fam::S, Fam::T, Fam::D0, Fam::D, Fam::Dh})
    r.push_back({Fam::D0, f, zero_rule()});
  r.push_back({Fam::D, Fam::A, mixed_pattern(Fam::D, 1, 1)});
  r.push_back({Fam::D, Fam::B, mixed_pattern(Fam::Dh, 1, 1)});
  r.push_back({Fam::D, Fam::S, mixed_pattern(Fam::D, 1, -1)});
  r.push_back({Fam::D, Fam::T, mixed_pattern(Fam::Dh, 1, 1)});
  r.push_back({Fam::D, Fam::D, zero_rule()});
  r.push_back({Fam::D, Fam::Dh,
               [](int p, int q, int s, int t, std::vector<TermI>& out) {
                 if (q == t) out.push_back({gr(2), Fam::D0, p, s});
               }});
  r.push_back({Fam::Dh, Fam::A, mixed_pattern(Fam::Dh, -1, -1)});
  r.push_back({Fam::Dh, Fam::B, mixed_pattern(Fam::D, 1, 1)});
  r.push_back({Fam::Dh, Fam::S, mixed_pattern(Fam::Dh, 1, -1)});
  r.push_back({Fam::Dh, Fam::T, mixed_pattern(Fam::D, -1, -1)});
  r.push_back({Fam::Dh, Fam::Dh, zero_rule()});
  return r;
}

std::vector<Rule> complex_rules() {
  GaussianRational i = gauss_i();
  (void)i;
  std::vector<Rule> r;
  for (Fam f : {Fam::Z0, Fam::Yp, Fam::Ym, Fam::Zp, Fam::Zm, Fam::Xp,
                Fam::Xm})
    r.push_back({Fam::Z0, f, zero_rule()});
  r.push_back({Fam::Yp, Fam::Yp, zero_rule()});
  r.push_back({Fam::Yp, Fam::Ym,
               [](int p, int q, int s, int t, std::vector<TermI>& out) {
                 if (q == t) out.push_back({gr(1), Fam::Z0, p, s});
               }});
  r.push_back({Fam::Yp, Fam::Zp, mixed_pattern(Fam::Yp, -1, 1)});
  r.push_back({Fam::Yp, Fam::Zm, mixed_pattern(Fam::Yp, -1, -1)});
  r.push_back({Fam::Yp, Fam::Xp, zero_rule()});
  r.push_back({Fam::Yp, Fam::Xm, mixed_pattern(Fam::Ym, 1, 1)});
  r.push_back({Fam::Ym, Fam::Ym, zero_rule()});
  r.push_back({Fam::Ym, Fam::Zp, mixed_pattern(Fam::Ym, -1, 1)});
  r.push_back({Fam::Ym, Fam::Zm, mixed_pattern(Fam::Ym, 1, 1)});
  r.push_back({Fam::Ym, Fam::Xp, mixed_pattern(Fam::Yp, 1, 1)});
  r.push_back({Fam::Ym, Fam::Xm, zero_rule()});
  r.push_back({Fam::Zp, Fam::Zp, sp_pattern(Fam::Zp, 1, -1, -1, 1)});
  r.push_back({Fam::Zp, Fam::Zm, sp_pattern(Fam::Zm, 1, 1, -1, -1)});
  r.push_back({Fam::Zp, Fam::Xp, sp_pattern(Fam::Xp, 1, 1, -1, -1)});
  r.push_back({Fam::Zp, Fam::Xm, sp_pattern(Fam::Xm, 1, 1, -1, -1)});
  r.push_back({Fam::Zm, Fam::Zm, sp_pattern(Fam::Zp, -1, -1, -1, -1)});
  r.push_back({Fam::Zm, Fam::Xp, sp_pattern(Fam::Xp, 1, 1, 1, 1)});
  r.push_back({Fam::Zm, Fam::Xm, sp_pattern(Fam::Xm, -1, -1, -1, -1)});
  r.push_back({Fam::Xp, Fam::Xp, zero_rule()});
  r.push_back({Fam::Xp, Fam::Xm,
               [](int i, int j, int k, int l, std::vector<TermI>& out) {
                 GaussianRational mh{make_rational(-1, 2)};
                 GaussianRational ph{make_rational(1, 2)};
                 sp_pattern(Fam::Zp, 1, 1, 1, 1, mh)(i, j, k, l, out);
                 sp_pattern(Fam::Zm, 1, 1, 1, 1, ph)(i, j, k, l, out);
               }});
  r.push_back({Fam::Xm, Fam::Xm, zero_rule()});
  return r;
}

/// Exact span-membership tester backed by a row-reduced basis.
class SpanChecker {
 public:
  explicit SpanChecker(const std::vector<LabeledGenerator>& gens) {
    if (gens.empty()) return;
    int d2 = gens[0].mat.rows() * gens[0].mat.cols();
    rows_ = CMat(static_cast<int>(gens.size()), d2);
    for (size_t k = 0; k < gens.size(); ++k) {
      CMat v = vectorize(gens[k].mat);
      for (int i = 0; i < d2; ++i) rows_(static_cast<int>(k), i) = v(i, 0);
    }
    rref_in_place(rows_);
  }

  bool contains(const CMat& mat) const {
    CMat v = vectorize(mat);
    for (int r = 0; r < rows_.rows(); ++r) {
      int lead = -1;
      for (int c = 0; c < rows_.cols(); ++c)
        if (!scalar_traits<GaussianRational>::is_zero(rows_(r, c))) {
          lead = c;
          break;
        }
      if (lead < 0) break;
      if (!scalar_traits<GaussianRational>::is_zero(v(lead, 0))) {
        GaussianRational factor = v(lead, 0) / rows_(r, lead);
        for (int c = lead; c < rows_.cols(); ++c)
          v(c, 0) -= factor * rows_(r, c);
      }
    }
    for (int i = 0; i < v.rows(); ++i)
      if (!scalar_traits<GaussianRational>::is_zero(v(i, 0))) return false;
    return true;
  }

 private:
  CMat rows_;
};

void run_rules(const TableContext& ctx, const std::vector<Rule>& rules,
               std::vector<TableIdentity>& out, int& failed) {
  for (const Rule& rule : rules) {
    int r1 = ctx.rows(rule.f1), c1 = ctx.cols(rule.f1);
    int r2 = ctx.rows(rule.f2), c2 = ctx.cols(rule.f2);
    for (int i = 0; i < r1; ++i)
      for (int j = 0; j < c1; ++j)
        for (int k = 0; k < r2; ++k)
          for (int l = 0; l < c2; ++l) {
            std::vector<TermI> terms;
            rule.rhs(i, j, k, l, terms);
            terms = normalize_terms(std::move(terms));
            CMat lhs =
                commutator(ctx.gen(rule.f1, i, j), ctx.gen(rule.f2, k, l));
            CMat rhs(lhs.rows(), lhs.cols());
            for (const TermI& t : terms)
              rhs = rhs + t.coef * ctx.gen(t.fam, t.i, t.j);
            TableIdentity id;
            id.lhs1 = gen_name(fam_name(rule.f1), i, j);
            id.lhs2 = gen_name(fam_name(rule.f2), k, l);
            for (const TermI& t : terms)
              id.rhs.push_back({t.coef, gen_name(fam_name(t.fam), t.i, t.j)});
            id.pass = (lhs == rhs);
            if (!id.pass) ++failed;
            out.push_back(std::move(id));
          }
  }
}

bool all_brackets_in_span(const std::vector<LabeledGenerator>& left,
                          const std::vector<LabeledGenerator>& right,
                          const SpanChecker& span) {
  for (const LabeledGenerator& a : left)
    for (const LabeledGenerator& b : right)
      if (!span.contains(commutator(a.mat, b.mat))) return false;
  return true;
}

bool all_brackets_vanish(const std::vector<LabeledGenerator>& gens) {
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j) {
      CMat c = commutator(gens[i].mat, gens[j].mat);
      if (!(c == CMat(c.rows(), c.cols()))) return false;
    }
  return true;
}

}  // namespace

CommutationReport verify_commutation_table(int n, int m) {
  if (n < 1 || n > 4 || m < 1 || m > 4)
    throw DomainError("rank parameters must lie in [1, 4]");
  TableContext ctx(n, m);
  CommutationReport rep;
  rep.n = n;
  rep.m = m;

  run_rules(ctx, real_rules(), rep.real_identities, rep.real_failed);
  run_rules(ctx, complex_rules(), rep.complex_identities, rep.complex_failed);

  std::vector<LabeledGenerator> stab = stabilizer_basis(ctx.real());
  std::vector<LabeledGenerator> trans = transverse_basis(ctx.real());
  std::vector<LabeledGenerator> heis = translation_basis(ctx.real());
  SpanChecker stab_span(stab), trans_span(trans), heis_span(heis);

  rep.stabilizer_closed = all_brackets_in_span(stab, stab, stab_span);
  rep.stabilizer_moves_transverse =
      all_brackets_in_span(stab, trans, trans_span);
  std::vector<LabeledGenerator> sp_part;
  for (const LabeledGenerator& g : trans)
    if (g.name[0] == 'A' || g.name[0] == 'B') sp_part.push_back(g);
  for (const LabeledGenerator& g : stab)
    if (g.name[0] == 'S' || g.name[0] == 'T') sp_part.push_back(g);
  rep.translation_ideal = all_brackets_in_span(sp_part, heis, heis_span);
  rep.translation_closed = all_brackets_in_span(heis, heis, heis_span);

  CMat witness = commutator(complexify(ctx.real().D[0][0]),
                            complexify(ctx.real().A[0][0]));
  rep.witness_outside_stabilizer =
      (witness == gr(2) * complexify(ctx.real().D[0][0])) &&
      !stab_span.contains(witness);

  std::vector<LabeledGenerator> holo = holomorphic_basis(ctx.cplx());
  std::vector<LabeledGenerator> anti = antiholomorphic_basis(ctx.cplx());
  std::vector<LabeledGenerator> kc = stabilizer_complex_basis(ctx.cplx());
  SpanChecker holo_span(holo), anti_span(anti);
  rep.holomorphic_abelian = all_brackets_vanish(holo);
  rep.antiholomorphic_abelian = all_brackets_vanish(anti);
  rep.stabilizer_preserves_holomorphic =
      all_brackets_in_span(kc, holo, holo_span);
  rep.stabilizer_preserves_antiholomorphic =
      all_brackets_in_span(kc, anti, anti_span);

  rep.squares_vanish = true;
  int d = 2 * (n + m);
  for (int p = 0; p < m && rep.squares_vanish; ++p)
    for (int q = 0; q < n && rep.squares_vanish; ++q) {
      QMat zero(d, d);
      if (!(ctx.real().D[p][q] * ctx.real().D[p][q] == zero) ||
          !(ctx.real().Dhat[p][q] * ctx.real().Dhat[p][q] == zero))
        rep.squares_vanish = false;
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Trace form of the adjoint representation
// ---------------------------------------------------------------------------

KillingReport killing_check(int n) {
  if (n < 1 || n > 3) throw DomainError("rank parameter must lie in [1, 3]");
  std::vector<QMat> basis = ambient_basis(AmbientKind::SP, n);
  int dim = static_cast<int>(basis.size());

  // Exact coordinates of an algebra element in the basis ordering:
  // full a-block grid, then upper-triangular b and c blocks.
  auto coords = [n, dim](const QMat& z) {
    std::vector<Rational> c(dim);
    int at = 0;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) c[at++] = z(p, q);
    for (int p = 0; p < n; ++p)
      for (int q = p; q < n; ++q) c[at++] = z(p, n + q);
    for (int p = 0; p < n; ++p)
      for (int q = p; q < n; ++q) c[at++] = z(n + p, q);
    return c;
  };

  std::vector<QMat> ad(dim, QMat(dim, dim));
  for (int k = 0; k < dim; ++k) {
    QMat a(dim, dim);
    for (int j = 0; j < dim; ++j) {
      std::vector<Rational> col = coords(commutator(basis[k], basis[j]));
      for (int i = 0; i < dim; ++i) a(i, j) = col[i];
    }
    ad[k] = std::move(a);
  }

  KillingReport rep;
  rep.n = n;
  rep.all_match = true;
  Rational scale = make_rational(2 * (n + 1));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Rational lhs = trace(ad[i] * ad[j]);
      Rational rhs = scale * trace(basis[i] * basis[j]);
      ++rep.pairs;
      if (!(lhs == rhs)) rep.all_match = false;
      if (i == 0 && j == 0) rep.neutral_pairing = lhs;
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Scalar-case orbit families
// ---------------------------------------------------------------------------

OrbitCoefficients orbit_coefficients(const JacobiDual& f) {
  if (f.n != 1 || f.m != 1)
    throw DomainError("orbit families require the scalar case n = m = 1");
  OrbitCoefficients c;
  c.x = f.x(0, 0);
  c.y = (f.y(0, 0) + f.z(0, 0)) / 2;
  c.z = (f.y(0, 0) - f.z(0, 0)) / 2;
  c.p = f.p(0, 0);
  c.q = f.q(0, 0);
  c.r = f.r(0, 0);
  return c;
}

JacobiDual coefficients_to_dual(const OrbitCoefficients& c) {
  auto one = [](double v) {
    Matrix<double> m(1, 1);
    m(0, 0) = v;
    return m;
  };
  return {1,        1,        one(c.x), one(c.p),
          one(c.y + c.z), one(c.y - c.z), one(c.q), one(c.r)};
}

OrbitMembership check_orbit_membership(const OrbitCoefficients& c,
                                       const OrbitFamilySpec& fam,
                                       double tol) {
  OrbitMembership out;
  double quadric = c.x * c.x + c.y * c.y - c.z * c.z;
  double incidence = 2 * c.p * c.q * c.x + (c.q * c.q - c.p * c.p) * c.y +
                     (c.p * c.p + c.q * c.q) * c.z;
  auto maxabs = [](std::initializer_list<double> vs) {
    double m = 0;
    for (double v : vs) m = std::max(m, std::abs(v));
    return m;
  };
  const std::string& f = fam.family;
  if (f == "X" || f == "Y") {
    out.residual = maxabs({quadric - 1, c.p, c.q, c.r});
    out.side_ok = true;
    out.member = out.residual <= tol;
  } else if (f == "Z") {
    out.residual = maxabs({quadric + 1, c.p, c.q, c.r});
    out.side_ok = c.z * c.z - 1 > tol;
    out.member = out.residual <= tol && out.side_ok;
    if (out.residual <= tol && !out.side_ok)
      out.note = "boundary-degenerate: the sharp inequality fails";
  } else if (f == "S" || f == "T") {
    out.residual = maxabs({quadric, c.p, c.q, c.r});
    out.side_ok = (f == "S") ? c.z > tol : c.z < -tol;
    out.member = out.residual <= tol && out.side_ok;
    if (out.residual <= tol && !out.side_ok)
      out.note = "wrong cone sheet or apex";
  } else if (f == "P" || f == "Q") {
    out.residual = maxabs({incidence, c.r});
    out.side_ok = std::max(std::abs(c.p), std::abs(c.q)) > tol;
    out.member = out.residual <= tol && out.side_ok;
    if (out.residual <= tol && !out.side_ok)
      out.note = "translation pair vanishes";
  } else if (f == "R") {
    if (fam.h == 0) throw DomainError("family parameter must be nonzero");
    out.residual = maxabs({quadric, c.x - c.p * c.q / fam.h,
                           c.y + c.z + c.p * c.p / fam.h,
                           c.y - c.z - c.q * c.q / fam.h, c.r - fam.h});
    out.side_ok = true;
    out.member = out.residual <= tol;
  } else if (f == "mR+alphaX" || f == "mR+alphaY") {
    if (fam.mass == 0) throw DomainError("family parameter must be nonzero");
    double lhs = quadric - fam.alpha * fam.alpha;
    out.residual = maxabs({lhs - incidence / fam.mass, c.r - fam.mass});
    out.side_ok = true;
    out.member = out.residual <= tol;
  } else if (f == "mR+kZ") {
    if (fam.mass == 0 || fam.k <= 0)
      throw DomainError("family parameter must be nonzero");
    double lhs = quadric + fam.k * fam.k;
    out.residual = maxabs({lhs - incidence / fam.mass, c.r - fam.mass});
    out.side_ok = std::abs(c.z) > tol;
    out.member = out.residual <= tol && out.side_ok;
    if (out.side_ok) out.note = c.z > 0 ? "forward sheet" : "backward sheet";
  } else {
    throw DomainError("unknown orbit family '" + f + "'");
  }
  return out;
}

double minimal_orbit_residual(const JacobiDual& f,
                              const Matrix<double>& delta) {
  int n = f.n, m = f.m;
  require_shape(delta, m, m, kShapeMsg);
  if (std::abs(determinant_lu(delta)) < 1e-12)
    throw DomainError("singular parameter block");
  Matrix<double> x2(2 * n, 2 * n);
  x2.set_block(0, 0, f.x);
  x2.set_block(0, n, f.y);
  x2.set_block(n, 0, f.z);
  x2.set_block(n, n, -f.x.transpose());
  Matrix<double> xj = x2 * standard_skew_form<double>(n);
  Matrix<double> stack(2 * n, m);
  stack.set_block(0, 0, f.p);
  stack.set_block(n, 0, f.q);
  Matrix<double> target = stack * inverse_lu(delta) * stack.transpose();
  return std::max(operator_norm(xj - target), operator_norm(f.r - delta));
}

}  // namespace orbitkit
