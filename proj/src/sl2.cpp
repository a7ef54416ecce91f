#include "orbitkit/sl2.hpp"

#include <cstddef>
#include <utility>

#include "orbitkit/symplectic.hpp"

namespace orbitkit {

namespace {

using GMat = Matrix<GaussianRational>;
using QMat = Matrix<Rational>;

int matrix_size(AmbientKind ambient, int n) {
  return ambient == AmbientKind::SP ? 2 * n : n;
}

GaussianRational half() { return GaussianRational(make_rational(1, 2)); }

bool is_zero_matrix(const GMat& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!scalar_traits<GaussianRational>::is_zero(a(i, j))) return false;
  return true;
}

bool is_zero_matrix(const QMat& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!scalar_traits<Rational>::is_zero(a(i, j))) return false;
  return true;
}

GMat entrywise_conj(const GMat& a) {
  GMat r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).conj();
  return r;
}

void check_shape(const GMat& m, int d, const char* which) {
  if (m.rows() != d || m.cols() != d)
    throw DomainError(std::string("matrix ") + which +
                      " has the wrong shape for the ambient algebra");
}

template <class S>
bool in_ambient_impl(const Matrix<S>& z, AmbientKind ambient) {
  if (z.rows() != z.cols()) return false;
  if (ambient == AmbientKind::SL)
    return scalar_traits<S>::is_zero(trace(z));
  if (z.rows() % 2 != 0) return false;
  Matrix<S> j = standard_skew_form<S>(z.rows() / 2);
  Matrix<S> r = z.transpose() * j + j * z;
  for (int i = 0; i < r.rows(); ++i)
    for (int c = 0; c < r.cols(); ++c)
      if (!scalar_traits<S>::is_zero(r(i, c))) return false;
  return true;
}

void set_column(QMat& a, int col, const QMat& v) {
  for (int i = 0; i < v.rows(); ++i) a(i, col) = v(i, 0);
}

QMat combine(const std::vector<QMat>& basis, const QMat& coeffs) {
  QMat r = QMat::zero(basis.front().rows(), basis.front().cols());
  for (std::size_t k = 0; k < basis.size(); ++k)
    r = r + coeffs(static_cast<int>(k), 0) * basis[k];
  return r;
}

}  // namespace

std::string to_string(AmbientKind kind) {
  return kind == AmbientKind::SL ? "sl" : "sp";
}

AmbientKind ambient_from_string(const std::string& s) {
  if (s == "sl") return AmbientKind::SL;
  if (s == "sp") return AmbientKind::SP;
  throw ParseError("unknown ambient algebra '" + s + "' (expected 'sl' or 'sp')");
}

Sl2Triple standard_triple() {
  GMat h = GMat::zero(2, 2), x = GMat::zero(2, 2), y = GMat::zero(2, 2);
  h(0, 0) = 1;
  h(1, 1) = -1;
  x(0, 1) = 1;
  y(1, 0) = 1;
  return make_sl2_triple(AmbientKind::SL, 2, h, x, y);
}

Sl2Triple normal_triple() {
  GaussianRational i = gauss_i();
  GaussianRational hf = half();
  GMat h = GMat::zero(2, 2), x = GMat::zero(2, 2), y = GMat::zero(2, 2);
  h(0, 1) = i;
  h(1, 0) = -i;
  x(0, 0) = hf;
  x(0, 1) = -i * hf;
  x(1, 0) = -i * hf;
  x(1, 1) = -hf;
  y(0, 0) = hf;
  y(0, 1) = i * hf;
  y(1, 0) = i * hf;
  y(1, 1) = -hf;
  return make_sl2_triple(AmbientKind::SL, 2, h, x, y);
}

bool in_ambient(const Matrix<Rational>& z, AmbientKind ambient) {
  return in_ambient_impl(z, ambient);
}

bool in_ambient(const Matrix<GaussianRational>& z, AmbientKind ambient) {
  return in_ambient_impl(z, ambient);
}

Sl2Triple make_sl2_triple(AmbientKind ambient, int n, GMat H, GMat X, GMat Y) {
  if (n < 1) throw DomainError("rank parameter must be positive");
  int d = matrix_size(ambient, n);
  check_shape(H, d, "H");
  check_shape(X, d, "X");
  check_shape(Y, d, "Y");
  if (!in_ambient(H, ambient))
    throw DomainError("matrix H is outside the ambient algebra");
  if (!in_ambient(X, ambient))
    throw DomainError("matrix X is outside the ambient algebra");
  if (!in_ambient(Y, ambient))
    throw DomainError("matrix Y is outside the ambient algebra");
  if (!(commutator(H, X) == GaussianRational(2) * X))
    throw DomainError("triple relation [H,X] = 2X fails");
  if (!(commutator(H, Y) == GaussianRational(-2) * Y))
    throw DomainError("triple relation [H,Y] = -2Y fails");
  if (!(commutator(X, Y) == H))
    throw DomainError("triple relation [X,Y] = H fails");
  Sl2Triple t;
  t.ambient = ambient;
  t.n = n;
  t.H = std::move(H);
  t.X = std::move(X);
  t.Y = std::move(Y);
  return t;
}

TripleFlavor triple_flavor(const Sl2Triple& t) {
  TripleFlavor f{};
  f.is_cayley = t.H.transpose() == t.H && t.X.transpose() == t.Y &&
                t.Y.transpose() == t.X;
  f.is_normal = t.H.transpose() == -t.H && t.X.transpose() == t.X &&
                t.Y.transpose() == t.Y;
  return f;
}

MorphismClass morphism_class(const Sl2Triple& t) {
  MorphismClass m{};
  m.real_equivariant = entrywise_conj(t.H) == t.H &&
                       entrywise_conj(t.X) == t.X &&
                       entrywise_conj(t.Y) == t.Y;
  m.theta_equivariant = t.H.conjugate_transpose() == t.H &&
                        t.X.conjugate_transpose() == t.Y &&
                        t.Y.conjugate_transpose() == t.X;
  return m;
}

Sl2Triple cayley_transform(const Sl2Triple& t) {
  if (!(t.H.transpose() == t.H))
    throw DomainError("not a Cayley triple: theta(H) != -H");
  if (!(t.X.transpose() == t.Y))
    throw DomainError("not a Cayley triple: theta(X) != -Y");
  if (!(t.Y.transpose() == t.X))
    throw DomainError("not a Cayley triple: theta(Y) != -X");
  GaussianRational i = gauss_i();
  GMat hp = i * (t.X - t.Y);
  GMat xp = half() * (t.X + t.Y + i * t.H);
  GMat yp = half() * (t.X + t.Y - i * t.H);
  Sl2Triple out = make_sl2_triple(t.ambient, t.n, std::move(hp), std::move(xp),
                                  std::move(yp));
  if (!triple_flavor(out).is_normal)
    throw DomainError("transformed triple is not in normal position");
  return out;
}

std::vector<QMat> ambient_basis(AmbientKind ambient, int n) {
  std::vector<QMat> basis;
  if (ambient == AmbientKind::SL) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        QMat m = QMat::zero(n, n);
        m(i, j) = 1;
        basis.push_back(std::move(m));
      }
    for (int i = 0; i + 1 < n; ++i) {
      QMat m = QMat::zero(n, n);
      m(i, i) = 1;
      m(i + 1, i + 1) = -1;
      basis.push_back(std::move(m));
    }
    return basis;
  }
  int d = 2 * n;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      QMat m = QMat::zero(d, d);
      m(p, q) = 1;
      m(n + q, n + p) = -1;
      basis.push_back(std::move(m));
    }
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) {
      QMat m = QMat::zero(d, d);
      m(p, n + q) = 1;
      m(q, n + p) = 1;
      basis.push_back(std::move(m));
    }
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) {
      QMat m = QMat::zero(d, d);
      m(n + p, q) = 1;
      m(n + q, p) = 1;
      basis.push_back(std::move(m));
    }
  return basis;
}

Sl2Triple jacobson_morozov(const Matrix<Rational>& e, AmbientKind ambient) {
  if (e.rows() != e.cols()) throw DomainError("input matrix must be square");
  int d = e.rows();
  if (ambient == AmbientKind::SP && d % 2 != 0)
    throw DomainError("symplectic ambient requires an even matrix size");
  int n = ambient == AmbientKind::SP ? d / 2 : d;
  if (is_zero_matrix(e)) throw DomainError("nilpotent input must be nonzero");
  if (!in_ambient(e, ambient))
    throw DomainError("input is outside the ambient algebra");
  QMat power = QMat::identity(d);
  for (int k = 0; k < d; ++k) power = power * e;
  if (!is_zero_matrix(power)) throw DomainError("input matrix is not nilpotent");

  std::vector<QMat> basis = ambient_basis(ambient, n);
  int dim = static_cast<int>(basis.size());

  // Neutral element: H = [E, W] with the minimum-norm W solving
  // [E, [E, W]] = -2E, which forces [H, E] = 2E.
  QMat a1(d * d, dim);
  for (int k = 0; k < dim; ++k)
    set_column(a1, k, vectorize(commutator(e, commutator(e, basis[k]))));
  std::optional<QMat> w = solve_min_norm_exact(a1, vectorize(Rational(-2) * e));
  if (!w) throw DomainError("neutral-element system is inconsistent");
  QMat h = commutator(e, combine(basis, *w));
  if (!(commutator(h, e) == Rational(2) * e))
    throw DomainError("completed neutral element fails [H,X] = 2X");

  // Lowering element: joint system [E, Y] = H and [H, Y] + 2Y = 0.
  QMat a2(2 * d * d, dim);
  QMat b2 = QMat::zero(2 * d * d, 1);
  for (int k = 0; k < dim; ++k) {
    QMat top = vectorize(commutator(e, basis[k]));
    QMat bottom = vectorize(commutator(h, basis[k]) + Rational(2) * basis[k]);
    for (int i = 0; i < d * d; ++i) {
      a2(i, k) = top(i, 0);
      a2(d * d + i, k) = bottom(i, 0);
    }
  }
  QMat hv = vectorize(h);
  for (int i = 0; i < d * d; ++i) b2(i, 0) = hv(i, 0);
  std::optional<QMat> yc = solve_min_norm_exact(a2, b2);
  if (!yc) throw DomainError("lowering-element system is inconsistent");
  QMat y = combine(basis, *yc);
  return make_sl2_triple(ambient, n, complexify(h), complexify(e),
                         complexify(y));
}

Matrix<GaussianRational> sekiguchi_image(const Sl2Triple& t) {
  return half() * (t.H - gauss_i() * (t.X + t.Y));
}

Matrix<GaussianRational> sekiguchi_neutral(const Sl2Triple& t) {
  return gauss_i() * (t.X - t.Y);
}

bool has_integer_spectrum(const Matrix<GaussianRational>& m, int bound) {
  if (m.rows() != m.cols()) return false;
  GMat p = GMat::identity(m.rows());
  for (int k = -bound; k <= bound; ++k)
    p = p * (m - GaussianRational(k) * GMat::identity(m.rows()));
  return is_zero_matrix(p);
}

}  // namespace orbitkit
