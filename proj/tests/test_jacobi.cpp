#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "orbitkit/jacobi.hpp"
#include "orbitkit/linalg.hpp"
#include "orbitkit/matrix.hpp"
#include "orbitkit/scalar.hpp"
#include "orbitkit/symplectic.hpp"

using namespace orbitkit;

namespace {

using QMat = Matrix<Rational>;
using DMat = Matrix<double>;
using ZMat = Matrix<Complex>;
using GMat = Matrix<GaussianRational>;

Rational rq(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  return make_rational(num(rng), den(rng));
}

QMat random_matrix(int rows, int cols, std::mt19937& rng) {
  QMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rq(rng);
  return m;
}

QMat random_symmetric(int n, std::mt19937& rng) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = rq(rng);
  return m;
}

QMat random_unit_upper(int n, std::mt19937& rng) {
  QMat m = QMat::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m(i, j) = rq(rng);
  return m;
}

QMat random_pos_diag(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(1, 4);
  std::uniform_int_distribution<int> den(1, 3);
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = make_rational(num(rng), den(rng));
  return m;
}

/// Random exact symplectic matrix built from triangular, diagonal and
/// skew-form generators.
QMat random_sp(int n, std::mt19937& rng) {
  QMat u1 = random_unit_upper(n, rng);
  QMat u2 = random_unit_upper(n, rng);
  QMat m = upper_generator(u1, u1 * random_symmetric(n, rng)) *
           diagonal_generator(random_pos_diag(n, rng));
  std::uniform_int_distribution<int> flip(0, 1);
  if (flip(rng)) m = m * standard_skew_form<Rational>(n);
  return m * upper_generator(u2, u2 * random_symmetric(n, rng));
}

JacobiT<Rational> random_jacobi(int n, int m, std::mt19937& rng) {
  QMat lambda = random_matrix(m, n, rng);
  QMat mu = random_matrix(m, n, rng);
  QMat kappa = random_symmetric(m, rng) - mu * lambda.transpose();
  return make_jacobi_exact(n, m, random_sp(n, rng), lambda, mu, kappa);
}

JacobiElement to_double_jacobi(const JacobiT<Rational>& g) {
  return make_jacobi_element(g.n(), g.m(), to_double(g.M.M),
                             to_double(g.heis.lambda), to_double(g.heis.mu),
                             to_double(g.heis.kappa), 1e-9);
}

JacobiDualT<Rational> random_dual(int n, int m, std::mt19937& rng) {
  return make_jacobi_dual_exact(
      n, m, random_matrix(n, n, rng), random_matrix(n, m, rng),
      random_symmetric(n, rng), random_symmetric(n, rng),
      random_matrix(n, m, rng), random_symmetric(m, rng));
}

JacobiLieT<Rational> random_lie(int n, int m, std::mt19937& rng) {
  QMat a = random_matrix(n, n, rng);
  QMat b = random_symmetric(n, rng);
  QMat c = random_symmetric(n, rng);
  QMat x(2 * n, 2 * n);
  x.set_block(0, 0, a);
  x.set_block(0, n, b);
  x.set_block(n, 0, c);
  x.set_block(n, n, -a.transpose());
  return make_jacobi_lie_exact(n, m, x, random_matrix(m, n, rng),
                               random_matrix(m, n, rng),
                               random_symmetric(m, rng));
}

bool jacobi_equal(const JacobiT<Rational>& a, const JacobiT<Rational>& b) {
  return a.M.M == b.M.M && a.heis.lambda == b.heis.lambda &&
         a.heis.mu == b.heis.mu && a.heis.kappa == b.heis.kappa;
}

double jacobi_dist(const JacobiElement& a, const JacobiElement& b) {
  double d = max_abs_diff(a.M.M, b.M.M);
  d = std::max(d, max_abs_diff(a.heis.lambda, b.heis.lambda));
  d = std::max(d, max_abs_diff(a.heis.mu, b.heis.mu));
  return std::max(d, max_abs_diff(a.heis.kappa, b.heis.kappa));
}

QMat scalar1(Rational v) {
  QMat m(1, 1);
  m(0, 0) = v;
  return m;
}

JacobiT<Rational> scalar_jacobi(const QMat& sp, Rational l, Rational mu,
                                Rational k) {
  return make_jacobi_exact(1, 1, sp, scalar1(l), scalar1(mu), scalar1(k));
}

}  // namespace

TEST_CASE("group law matches the pinned scalar examples") {
  QMat e2 = QMat::identity(2);
  JacobiT<Rational> g1 = scalar_jacobi(e2, 1, 0, 0);
  JacobiT<Rational> g2 = scalar_jacobi(e2, 0, 1, 0);
  JacobiT<Rational> prod = jacobi_mul(g1, g2);
  CHECK(jacobi_equal(prod, scalar_jacobi(e2, 1, 1, 1)));

  QMat j1 = standard_skew_form<Rational>(1);
  JacobiT<Rational> rot = scalar_jacobi(j1, 0, 0, 0);
  JacobiT<Rational> moved = jacobi_mul(g1, rot);
  CHECK(jacobi_equal(moved, scalar_jacobi(j1, 0, 1, 0)));
}

TEST_CASE("group law is associative and inverses cancel exactly") {
  std::mt19937 rng(501);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + trial % 2, m = 1 + (trial / 2) % 2;
    JacobiT<Rational> a = random_jacobi(n, m, rng);
    JacobiT<Rational> b = random_jacobi(n, m, rng);
    JacobiT<Rational> c = random_jacobi(n, m, rng);
    CHECK(jacobi_equal(jacobi_mul(jacobi_mul(a, b), c),
                       jacobi_mul(a, jacobi_mul(b, c))));
    JacobiT<Rational> id = jacobi_identity_element<Rational>(n, m);
    CHECK(jacobi_equal(jacobi_mul(a, jacobi_inverse(a)), id));
    CHECK(jacobi_equal(jacobi_mul(jacobi_inverse(a), a), id));
    CHECK(jacobi_equal(jacobi_mul(a, id), a));
  }
}

TEST_CASE("operands of mismatched rank are rejected") {
  std::mt19937 rng(501);
  JacobiT<Rational> a = random_jacobi(1, 1, rng);
  JacobiT<Rational> b = random_jacobi(2, 1, rng);
  CHECK_THROWS_WITH_AS(jacobi_mul(a, b),
                       "dimension mismatch between operands", DomainError);
  JacobiT<Rational> c = random_jacobi(1, 2, rng);
  CHECK_THROWS_WITH_AS(jacobi_mul(a, c),
                       "dimension mismatch between operands", DomainError);
}

TEST_CASE("element validation rejects broken data") {
  QMat e2 = QMat::identity(2);
  QMat bad = e2;
  bad(0, 0) = 2;  // not symplectic
  CHECK_THROWS_AS(
      make_jacobi_exact(1, 1, bad, scalar1(0), scalar1(0), scalar1(0)),
      DomainError);
  // kappa + mu t(lambda) must be symmetric: for 1x1 data always fine, so
  // check a 2x2 central block.
  QMat zero22 = QMat::zero(2, 2);
  QMat kap(2, 2);
  kap(0, 1) = 1;
  CHECK_THROWS_AS(make_jacobi_exact(1, 2, e2, QMat::zero(2, 1),
                                    QMat::zero(2, 1), kap),
                  DomainError);
  CHECK_NOTHROW(make_jacobi_exact(1, 2, e2, QMat::zero(2, 1),
                                  QMat::zero(2, 1), zero22));
}

TEST_CASE("embedding is a faithful symplectic homomorphism") {
  std::mt19937 rng(502);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + trial % 2, m = 1 + (trial / 2) % 2;
    JacobiT<Rational> a = random_jacobi(n, m, rng);
    JacobiT<Rational> b = random_jacobi(n, m, rng);
    SymplecticT<Rational> ea = jacobi_embed(a);
    CHECK(ea.n == n + m);
    CHECK_NOTHROW(make_symplectic_exact(ea.M));
    CHECK(jacobi_embed(jacobi_mul(a, b)).M == ea.M * jacobi_embed(b).M);
    CHECK(jacobi_embed(jacobi_inverse(a)).M == symplectic_inverse(ea.M));
  }
  int n = 2, m = 2;
  CHECK(jacobi_embed(jacobi_identity_element<Rational>(n, m)).M ==
        QMat::identity(2 * (n + m)));
}

TEST_CASE("embedding has the documented block layout") {
  JacobiT<Rational> g = scalar_jacobi(QMat::identity(2), 1, 2, 3);
  QMat e = jacobi_embed(g).M;
  QMat expect(4, 4);
  expect(0, 0) = 1;
  expect(0, 3) = 2;
  expect(1, 0) = 1;
  expect(1, 1) = 1;
  expect(1, 2) = 2;
  expect(1, 3) = 3;
  expect(2, 2) = 1;
  expect(2, 3) = -1;
  expect(3, 3) = 1;
  CHECK(e == expect);
}

TEST_CASE("point action matches the pinned example and composes") {
  JacobiElement g = make_jacobi_element(
      1, 1, DMat::identity(2), DMat::identity(1), DMat(1, 1), DMat(1, 1));
  JacobiPoint base = jacobi_base_point(1, 1);
  JacobiPoint out = jacobi_action(g, base);
  CHECK(std::abs(out.Z.Z(0, 0) - Complex(0, 1)) < 1e-14);
  CHECK(std::abs(out.W(0, 0) - Complex(0, 1)) < 1e-14);

  std::mt19937 rng(503);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 1 + trial % 2, m = 1 + (trial / 2) % 2;
    JacobiElement a = to_double_jacobi(random_jacobi(n, m, rng));
    JacobiElement b = to_double_jacobi(random_jacobi(n, m, rng));
    JacobiPoint pt = jacobi_base_point(n, m);
    JacobiPoint lhs = jacobi_action(a, jacobi_action(b, pt));
    JacobiPoint rhs = jacobi_action(jacobi_mul(a, b), pt);
    CHECK(max_abs_diff(lhs.Z.Z, rhs.Z.Z) < 1e-9);
    CHECK(max_abs_diff(lhs.W, rhs.W) < 1e-9);
  }
}

TEST_CASE("compact-plus-central elements fix the distinguished point") {
  DMat k = standard_skew_form<double>(1);
  DMat kappa(1, 1);
  kappa(0, 0) = 7;
  JacobiElement g = make_jacobi_element(1, 1, k, DMat(1, 1), DMat(1, 1), kappa);
  JacobiPoint base = jacobi_base_point(1, 1);
  JacobiPoint out = jacobi_action(g, base);
  CHECK(std::abs(out.Z.Z(0, 0) - Complex(0, 1)) < 1e-14);
  CHECK(std::abs(out.W(0, 0)) < 1e-14);
}

TEST_CASE("near-singular action denominators are rejected") {
  JacobiElement rot = make_jacobi_element(1, 1, standard_skew_form<double>(1),
                                          DMat(1, 1), DMat(1, 1), DMat(1, 1));
  ZMat tiny(1, 1);
  tiny(0, 0) = Complex(0, 1e-30);
  JacobiPoint degenerate{SiegelPoint{1, tiny}, ZMat(1, 1)};
  CHECK_THROWS_AS(jacobi_action(rot, degenerate), DomainError);
}

TEST_CASE("central pairing form is antisymmetric and transport invariant") {
  std::mt19937 rng(502);
  QMat l1 = scalar1(1), m1 = scalar1(0);
  QMat l2 = scalar1(0), m2 = scalar1(1);
  CHECK(q_form(l1, m1, l2, m2) == scalar1(1));

  QMat shear(2, 2);
  shear(0, 0) = 1;
  shear(0, 1) = 1;
  shear(1, 1) = 1;
  auto [l1s, m1s] = transport_pair(l1, m1, shear);
  auto [l2s, m2s] = transport_pair(l2, m2, shear);
  CHECK(q_form(l1s, m1s, l2s, m2s) == scalar1(1));

  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + trial % 3, m = 1 + trial % 2;
    QMat la = random_matrix(m, n, rng), ma = random_matrix(m, n, rng);
    QMat lb = random_matrix(m, n, rng), mb = random_matrix(m, n, rng);
    QMat q = q_form(la, ma, lb, mb);
    CHECK(q.transpose() == -q_form(lb, mb, la, ma));
    QMat sp = random_sp(n, rng);
    auto [lat, mat] = transport_pair(la, ma, sp);
    auto [lbt, mbt] = transport_pair(lb, mb, sp);
    CHECK(q_form(lat, mat, lbt, mbt) == q);
  }
}

TEST_CASE("triangular factorization reconstructs the element in both modes") {
  std::mt19937 rng(504);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + trial % 3, m = 1 + (trial / 3) % 2;
    JacobiElement g = to_double_jacobi(random_jacobi(n, m, rng));
    for (bool central_in_compact : {false, true}) {
      JacobiIwasawa f = jacobi_iwasawa(g, central_in_compact);
      JacobiElement back = jacobi_mul(jacobi_mul(f.nil, f.diag), f.compact);
      CHECK(jacobi_dist(back, g) < 1e-9);

      CHECK(is_unit_upper_triangular(f.A, 1e-9));
      CHECK(max_abs_diff(f.A * f.B.transpose(),
                         f.B * f.A.transpose()) < 1e-9);
      CHECK(is_positive_diagonal(f.H, 1e-9));
      CHECK(is_orthogonal(f.k, 1e-8));
      CHECK(symplectic_residual(f.k) < 1e-8);
      CHECK(max_abs_diff(f.kappa_star, f.kappa_star.transpose()) < 1e-9);

      // Factor shapes: nil carries no lambda, diag only lambda, compact
      // only the central block (and only in the second mode).
      CHECK(max_abs(f.nil.heis.lambda) == 0);
      CHECK(max_abs(f.diag.heis.mu) == 0);
      CHECK(max_abs(f.diag.heis.kappa) == 0);
      CHECK(max_abs(f.compact.heis.lambda) == 0);
      CHECK(max_abs(f.compact.heis.mu) == 0);
      if (central_in_compact) {
        CHECK(max_abs(f.nil.heis.kappa) == 0);
      } else {
        CHECK(max_abs(f.compact.heis.kappa) == 0);
      }
    }
  }
}

TEST_CASE("factorization of a translation leaves the symplectic part alone") {
  DMat lambda(1, 1), mu(1, 1), kappa(1, 1);
  lambda(0, 0) = 2;
  mu(0, 0) = 3;
  kappa(0, 0) = 5;
  JacobiElement g =
      make_jacobi_element(1, 1, DMat::identity(2), lambda, mu, kappa);
  JacobiIwasawa f = jacobi_iwasawa(g, false);
  CHECK(max_abs_diff(f.A, DMat::identity(1)) < 1e-12);
  CHECK(max_abs(f.B) < 1e-12);
  CHECK(max_abs_diff(f.H, DMat::identity(1)) < 1e-12);
  CHECK(max_abs_diff(f.lambda_star, lambda) < 1e-12);
  CHECK(max_abs_diff(f.mu_star, mu) < 1e-12);
  // kappa_star = kappa + mu* t(lambda0) = 5 + 3*2 = 11.
  CHECK(f.kappa_star(0, 0) == doctest::Approx(11).epsilon(1e-12));
  JacobiElement id = jacobi_identity_element<double>(1, 1);
  JacobiIwasawa fid = jacobi_iwasawa(id, true);
  CHECK(jacobi_dist(fid.nil, id) < 1e-12);
  CHECK(jacobi_dist(fid.diag, id) < 1e-12);
  CHECK(jacobi_dist(fid.compact, id) < 1e-12);
}

TEST_CASE("differential matches the pinned rotation formula") {
  JacobiElement rot = make_jacobi_element(1, 1, standard_skew_form<double>(1),
                                          DMat(1, 1), DMat(1, 1), DMat(1, 1));
  ZMat v(1, 1), w(1, 1);
  v(0, 0) = Complex(1, 0);
  w(0, 0) = Complex(1, 0);
  auto [v2, w2] = jacobi_differential(rot, v, w);
  CHECK(std::abs(v2(0, 0) - Complex(-1, 0)) < 1e-14);
  CHECK(std::abs(w2(0, 0) - Complex(0, 1)) < 1e-14);

  JacobiElement id = jacobi_identity_element<double>(1, 1);
  auto [v3, w3] = jacobi_differential(id, v, w);
  CHECK(std::abs(v3(0, 0) - v(0, 0)) < 1e-14);
  CHECK(std::abs(w3(0, 0) - w(0, 0)) < 1e-14);
}

TEST_CASE("differential agrees with finite differences of the action") {
  std::mt19937 rng(505);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + trial % 2, m = 1 + (trial / 2) % 2;
    JacobiElement g = to_double_jacobi(random_jacobi(n, m, rng));
    ZMat v(n, n), w(m, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        v(i, j) = v(j, i) = Complex(unit(rng), unit(rng));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) w(i, j) = Complex(unit(rng), unit(rng));

    auto [dv, dw] = jacobi_differential(g, v, w);

    double t = 1e-5;
    ZMat ibase(n, n);
    for (int i = 0; i < n; ++i) ibase(i, i) = Complex(0, 1);
    auto eval = [&](double sign) {
      ZMat z = ibase + Complex(sign * t) * v;
      ZMat ww = Complex(sign * t) * w;
      JacobiPoint pt{SiegelPoint{n, z}, ww};
      return jacobi_action(g, pt);
    };
    JacobiPoint plus = eval(1), minus = eval(-1);
    ZMat fd_v = Complex(1 / (2 * t)) * (plus.Z.Z - minus.Z.Z);
    ZMat fd_w = Complex(1 / (2 * t)) * (plus.W - minus.W);
    CHECK(max_abs_diff(fd_v, dv) < 1e-6);
    CHECK(max_abs_diff(fd_w, dw) < 1e-6);
  }
}

TEST_CASE("differential validates its tangent argument") {
  std::mt19937 rng(505);
  JacobiElement g = to_double_jacobi(random_jacobi(2, 1, rng));
  ZMat v(2, 2), w(1, 2);
  v(0, 1) = Complex(1, 0);  // not symmetric
  CHECK_THROWS_WITH_AS(jacobi_differential(g, v, w),
                       "tangent block must be symmetric", DomainError);
}

TEST_CASE("algebra bracket agrees with the matrix commutator") {
  std::mt19937 rng(506);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + trial % 3, m = 1 + (trial / 3) % 2;
    JacobiLieT<Rational> x = random_lie(n, m, rng);
    JacobiLieT<Rational> y = random_lie(n, m, rng);
    JacobiLieT<Rational> br = jacobi_lie_bracket(x, y);
    CHECK(jacobi_lie_matrix(br) ==
          commutator(jacobi_lie_matrix(x), jacobi_lie_matrix(y)));
    CHECK(br.R == br.R.transpose());
  }
}

TEST_CASE("algebra realization reproduces the generator matrices") {
  RealBasis basis = real_basis(2, 2);
  int n = 2, m = 2;
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < n; ++q) {
      QMat unit(m, n);
      unit(p, q) = 1;
      JacobiLieT<Rational> d = make_jacobi_lie_exact(
          n, m, QMat::zero(2 * n, 2 * n), unit, QMat(m, n), QMat(m, m));
      CHECK(jacobi_lie_matrix(d) == basis.D[p][q]);
      JacobiLieT<Rational> dh = make_jacobi_lie_exact(
          n, m, QMat::zero(2 * n, 2 * n), QMat(m, n), unit, QMat(m, m));
      CHECK(jacobi_lie_matrix(dh) == basis.Dhat[p][q]);
    }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      QMat r(m, m);
      r(a, b) += make_rational(1, 2);
      r(b, a) += make_rational(1, 2);
      JacobiLieT<Rational> d0 = make_jacobi_lie_exact(
          n, m, QMat::zero(2 * n, 2 * n), QMat(m, n), QMat(m, n), r);
      CHECK(jacobi_lie_matrix(d0) == basis.D0[a][b]);
    }
}

TEST_CASE("algebra element validation rejects broken data") {
  QMat x(2, 2);
  x(0, 0) = 1;  // not in the symplectic algebra: trace block mismatch
  x(1, 1) = 1;
  CHECK_THROWS_WITH_AS(
      make_jacobi_lie_exact(1, 1, x, QMat(1, 1), QMat(1, 1), QMat(1, 1)),
      "matrix is outside the rank-n symplectic algebra", DomainError);
  QMat r(2, 2);
  r(0, 1) = 1;
  CHECK_THROWS_WITH_AS(
      make_jacobi_lie_exact(1, 2, QMat::zero(2, 2), QMat(2, 1), QMat(2, 1),
                            r),
      "central block must be symmetric", DomainError);
}

TEST_CASE("dual matrices of the six scalar generators are pinned") {
  auto mat_of = [](double x, double y, double z, double p, double q,
                   double r) {
    OrbitCoefficients c{x, y, z, p, q, r};
    return jacobi_dual_matrix(coefficients_to_dual(c));
  };
  DMat xm = mat_of(1, 0, 0, 0, 0, 0);
  CHECK(xm(0, 0) == 1);
  CHECK(xm(2, 2) == -1);
  CHECK(max_abs(xm) == 1);
  DMat ym = mat_of(0, 1, 0, 0, 0, 0);
  CHECK(ym(0, 2) == 1);
  CHECK(ym(2, 0) == 1);
  DMat zm = mat_of(0, 0, 1, 0, 0, 0);
  CHECK(zm(0, 2) == 1);
  CHECK(zm(2, 0) == -1);
  DMat pm = mat_of(0, 0, 0, 1, 0, 0);
  CHECK(pm(0, 1) == 1);
  CHECK(pm(3, 2) == -1);
  DMat qm = mat_of(0, 0, 0, 0, 1, 0);
  CHECK(qm(2, 1) == 1);
  CHECK(qm(3, 0) == 1);
  DMat rm = mat_of(0, 0, 0, 0, 0, 1);
  CHECK(rm(3, 1) == 1);
  CHECK(max_abs(rm) == 1);
}

TEST_CASE("pairing values of distinguished dual and algebra elements") {
  // r-functional against the central generator: value one.
  OrbitCoefficients rc{0, 0, 0, 0, 0, 1};
  JacobiDual rdual = coefficients_to_dual(rc);
  DMat runit(1, 1);
  runit(0, 0) = 1;
  JacobiLieElement rgen =
      make_jacobi_lie(1, 1, DMat(2, 2), DMat(1, 1), DMat(1, 1), runit);
  CHECK(jacobi_pairing(rdual, rgen) == 1);

  OrbitCoefficients xc{1, 0, 0, 0, 0, 0};
  JacobiDual xdual = coefficients_to_dual(xc);
  DMat a11(2, 2);
  a11(0, 0) = 2;
  a11(1, 1) = -2;
  JacobiLieElement agen =
      make_jacobi_lie(1, 1, a11, DMat(1, 1), DMat(1, 1), DMat(1, 1));
  CHECK(jacobi_pairing(xdual, agen) == 4);

  DMat punit(1, 1);
  punit(0, 0) = 1;
  JacobiLieElement dgen =
      make_jacobi_lie(1, 1, DMat(2, 2), punit, DMat(1, 1), DMat(1, 1));
  CHECK(jacobi_pairing(xdual, dgen) == 0);
}

TEST_CASE("pairing is bilinear") {
  std::mt19937 rng(507);
  int n = 2, m = 1;
  JacobiDualT<Rational> f1 = random_dual(n, m, rng);
  JacobiDualT<Rational> f2 = random_dual(n, m, rng);
  JacobiLieT<Rational> x1 = random_lie(n, m, rng);
  JacobiLieT<Rational> x2 = random_lie(n, m, rng);
  Rational three = make_rational(3);
  JacobiDualT<Rational> combo{n, m, f1.x + three * f2.x, f1.p + three * f2.p,
                              f1.y + three * f2.y, f1.z + three * f2.z,
                              f1.q + three * f2.q, f1.r + three * f2.r};
  CHECK(jacobi_pairing(combo, x1) ==
        jacobi_pairing(f1, x1) + three * jacobi_pairing(f2, x1));
  JacobiLieT<Rational> sum{n, m, x1.X + x2.X, x1.P + x2.P, x1.Q + x2.Q,
                           x1.R + x2.R};
  CHECK(jacobi_pairing(f1, sum) ==
        jacobi_pairing(f1, x1) + jacobi_pairing(f1, x2));
}

TEST_CASE("dual projection preserves every pairing") {
  std::mt19937 rng(507);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 1 + trial % 2, m = 1 + trial % 2;
    JacobiT<Rational> g = random_jacobi(n, m, rng);
    JacobiDualT<Rational> f = random_dual(n, m, rng);
    QMat e = jacobi_embed(g).M;
    QMat einv = jacobi_embed(jacobi_inverse(g)).M;
    QMat raw = e * jacobi_dual_matrix(f) * einv;
    QMat proj = jacobi_dual_matrix(project_dual(raw, n, m));
    RealBasis basis = real_basis(n, m);
    for (const auto& row : basis.A)
      for (const QMat& gen : row) CHECK(trace(raw * gen) == trace(proj * gen));
    for (const auto& row : basis.B)
      for (const QMat& gen : row) CHECK(trace(raw * gen) == trace(proj * gen));
    for (const auto& row : basis.S)
      for (const QMat& gen : row) CHECK(trace(raw * gen) == trace(proj * gen));
    for (const auto& row : basis.T)
      for (const QMat& gen : row) CHECK(trace(raw * gen) == trace(proj * gen));
    for (const auto& row : basis.D0)
      for (const QMat& gen : row) CHECK(trace(raw * gen) == trace(proj * gen));
    for (const auto& row : basis.D)
      for (const QMat& gen : row) CHECK(trace(raw * gen) == trace(proj * gen));
    for (const auto& row : basis.Dhat)
      for (const QMat& gen : row) CHECK(trace(raw * gen) == trace(proj * gen));
  }
}

TEST_CASE("coadjoint action matches the pinned scalar example") {
  JacobiT<Rational> g = scalar_jacobi(QMat::identity(2), 0, 1, 0);
  JacobiDualT<Rational> rdual = make_jacobi_dual_exact(
      1, 1, scalar1(0), scalar1(0), scalar1(0), scalar1(0), scalar1(0),
      scalar1(1));
  JacobiDualT<Rational> out = jacobi_coadjoint(g, rdual);
  CHECK(out.x == scalar1(0));
  CHECK(out.y == scalar1(-1));
  CHECK(out.z == scalar1(0));
  CHECK(out.p == scalar1(1));
  CHECK(out.q == scalar1(0));
  CHECK(out.r == scalar1(1));
  OrbitCoefficients c = orbit_coefficients(
      make_jacobi_dual(1, 1, to_double(out.x), to_double(out.p),
                       to_double(out.y), to_double(out.z), to_double(out.q),
                       to_double(out.r)));
  CHECK(c.x == 0);
  CHECK(c.y == -0.5);
  CHECK(c.z == -0.5);
  CHECK(c.p == 1);
  CHECK(c.q == 0);
  CHECK(c.r == 1);
}

TEST_CASE("coadjoint action is a left action preserving the pairing") {
  std::mt19937 rng(507);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 1 + trial % 2, m = 1 + (trial / 2) % 2;
    JacobiT<Rational> g = random_jacobi(n, m, rng);
    JacobiT<Rational> h = random_jacobi(n, m, rng);
    JacobiDualT<Rational> f = random_dual(n, m, rng);
    JacobiDualT<Rational> lhs = jacobi_coadjoint(jacobi_mul(g, h), f);
    JacobiDualT<Rational> rhs = jacobi_coadjoint(g, jacobi_coadjoint(h, f));
    CHECK(dual_coordinate_vector(lhs) == dual_coordinate_vector(rhs));

    JacobiDualT<Rational> id_act =
        jacobi_coadjoint(jacobi_identity_element<Rational>(n, m), f);
    CHECK(dual_coordinate_vector(id_act) == dual_coordinate_vector(f));

    // Invariance: pair the moved functional with the conjugated element.
    JacobiLieT<Rational> x = random_lie(n, m, rng);
    QMat e = jacobi_embed(g).M;
    QMat einv = jacobi_embed(jacobi_inverse(g)).M;
    QMat moved_alg = e * jacobi_lie_matrix(x) * einv;
    CHECK(trace(jacobi_dual_matrix(jacobi_coadjoint(g, f)) * moved_alg) ==
          jacobi_pairing(f, x));
  }
}

TEST_CASE("orbit coefficient extraction inverts the block form") {
  OrbitCoefficients c{0.5, -1.5, 2.0, 3.0, -4.0, 0.25};
  OrbitCoefficients back = orbit_coefficients(coefficients_to_dual(c));
  CHECK(back.x == c.x);
  CHECK(back.y == c.y);
  CHECK(back.z == c.z);
  CHECK(back.p == c.p);
  CHECK(back.q == c.q);
  CHECK(back.r == c.r);
  std::mt19937 rng(508);
  JacobiDualT<Rational> f = random_dual(2, 1, rng);
  CHECK_THROWS_WITH_AS(
      orbit_coefficients(make_jacobi_dual(
          2, 1, to_double(f.x), to_double(f.p), to_double(f.y),
          to_double(f.z), to_double(f.q), to_double(f.r))),
      "orbit families require the scalar case n = m = 1", DomainError);
}

TEST_CASE("orbit membership handles the pinned seed cases") {
  OrbitCoefficients xgen{1, 0, 0, 0, 0, 0};
  OrbitMembership mx = check_orbit_membership(xgen, {"X"});
  CHECK(mx.member);
  CHECK(mx.residual == 0);

  OrbitCoefficients zgen{0, 0, 1, 0, 0, 0};
  OrbitMembership zx = check_orbit_membership(zgen, {"X"});
  CHECK_FALSE(zx.member);
  CHECK(zx.residual == 2.0);
  OrbitMembership zz = check_orbit_membership(zgen, {"Z"});
  CHECK_FALSE(zz.member);
  CHECK(zz.residual == 0);
  CHECK_FALSE(zz.side_ok);
  CHECK(zz.note == "boundary-degenerate: the sharp inequality fails");

  OrbitCoefficients cone{3, 4, 5, 0, 0, 0};
  CHECK(check_orbit_membership(cone, {"S"}).member);
  CHECK_FALSE(check_orbit_membership(cone, {"T"}).member);
  OrbitCoefficients anticone{3, 4, -5, 0, 0, 0};
  CHECK(check_orbit_membership(anticone, {"T"}).member);

  OrbitCoefficients plane{1, 1, 1, 1, 0, 0};
  CHECK(check_orbit_membership(plane, {"P"}).member);
  CHECK(check_orbit_membership(plane, {"Q"}).member);
  OrbitCoefficients noplane{1, 1, 1, 0, 0, 0};
  CHECK_FALSE(check_orbit_membership(noplane, {"P"}).member);

  OrbitFamilySpec rfam{"R"};
  rfam.h = 2;
  OrbitCoefficients rseed{0, 0, 0, 0, 0, 2};
  CHECK(check_orbit_membership(rseed, rfam).member);
  OrbitFamilySpec rbad{"R"};
  CHECK_THROWS_WITH_AS(check_orbit_membership(rseed, rbad),
                       "family parameter must be nonzero", DomainError);

  OrbitFamilySpec mixed{"mR+alphaX"};
  mixed.mass = 3;
  mixed.alpha = 2;
  OrbitCoefficients mseed{2, 0, 0, 0, 0, 3};
  CHECK(check_orbit_membership(mseed, mixed).member);
  mixed.family = "mR+alphaY";
  OrbitCoefficients myseed{0, 2, 0, 0, 0, 3};
  CHECK(check_orbit_membership(myseed, mixed).member);

  OrbitFamilySpec sheet{"mR+kZ"};
  sheet.mass = 3;
  sheet.k = 2;
  OrbitCoefficients fwd{0, 0, 2, 0, 0, 3};
  OrbitMembership mf = check_orbit_membership(fwd, sheet);
  CHECK(mf.member);
  CHECK(mf.note == "forward sheet");
  OrbitCoefficients bwd{0, 0, -2, 0, 0, 3};
  CHECK(check_orbit_membership(bwd, sheet).note == "backward sheet");

  CHECK_THROWS_WITH_AS(check_orbit_membership(xgen, {"W"}),
                       "unknown orbit family 'W'", DomainError);
}

TEST_CASE("coadjoint pushforwards stay on their orbit variety") {
  std::mt19937 rng(508);
  struct Seed {
    OrbitCoefficients c;
    OrbitFamilySpec fam;
  };
  std::vector<Seed> seeds;
  seeds.push_back({{1, 0, 0, 0, 0, 0}, {"X"}});
  seeds.push_back({{0, 1, 0, 0, 0, 0}, {"Y"}});
  seeds.push_back({{0, 1.875, 2.125, 0, 0, 0}, {"Z"}});
  seeds.push_back({{3, 4, 5, 0, 0, 0}, {"S"}});
  seeds.push_back({{3, 4, -5, 0, 0, 0}, {"T"}});
  seeds.push_back({{1, 1, 1, 1, 0, 0}, {"P"}});
  seeds.push_back({{1, 1, 1, 1, 0, 0}, {"Q"}});
  {
    OrbitFamilySpec rf{"R"};
    rf.h = 2;
    seeds.push_back({{0, 0, 0, 0, 0, 2}, rf});
    OrbitFamilySpec mx{"mR+alphaX"};
    mx.mass = 3;
    mx.alpha = 2;
    seeds.push_back({{2, 0, 0, 0, 0, 3}, mx});
    OrbitFamilySpec mz{"mR+kZ"};
    mz.mass = 3;
    mz.k = 2;
    seeds.push_back({{0, 0, 2, 0, 0, 3}, mz});
  }
  for (const Seed& s : seeds) {
    JacobiDual seed_dual = coefficients_to_dual(s.c);
    JacobiDualT<Rational> f0 = make_jacobi_dual_exact(
        1, 1, to_rational(seed_dual.x), to_rational(seed_dual.p),
        to_rational(seed_dual.y), to_rational(seed_dual.z),
        to_rational(seed_dual.q), to_rational(seed_dual.r));
    for (int trial = 0; trial < 20; ++trial) {
      JacobiT<Rational> g = random_jacobi(1, 1, rng);
      JacobiDualT<Rational> f = jacobi_coadjoint(g, f0);
      OrbitCoefficients c = orbit_coefficients(
          make_jacobi_dual(1, 1, to_double(f.x), to_double(f.p),
                           to_double(f.y), to_double(f.z), to_double(f.q),
                           to_double(f.r), 1e-6));
      OrbitMembership mem = check_orbit_membership(c, s.fam, 1e-7);
      CHECK(mem.member);
    }
  }
}

TEST_CASE("minimal orbit residual vanishes on pushforwards of the seed") {
  std::mt19937 rng(509);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + trial % 2, m = 1 + (trial / 2) % 2;
    QMat delta = random_pos_diag(m, rng);
    JacobiDualT<Rational> f0{
        n, m, QMat(n, n), QMat(n, m), QMat(n, n),
        QMat(n, n), QMat(n, m), delta};
    JacobiT<Rational> g = random_jacobi(n, m, rng);
    JacobiDualT<Rational> f = jacobi_coadjoint(g, f0);
    JacobiDual fd = make_jacobi_dual(n, m, to_double(f.x), to_double(f.p),
                                     to_double(f.y), to_double(f.z),
                                     to_double(f.q), to_double(f.r), 1e-6);
    CHECK(minimal_orbit_residual(fd, to_double(delta)) < 1e-9);
    // The seed itself sits on the family.
    JacobiDual f0d = make_jacobi_dual(n, m, DMat(n, n), DMat(n, m),
                                      DMat(n, n), DMat(n, n), DMat(n, m),
                                      to_double(delta));
    CHECK(minimal_orbit_residual(f0d, to_double(delta)) == 0);
  }
  DMat singular(1, 1);
  JacobiDual f0d = make_jacobi_dual(1, 1, DMat(1, 1), DMat(1, 1), DMat(1, 1),
                                    DMat(1, 1), DMat(1, 1), DMat(1, 1));
  CHECK_THROWS_WITH_AS(minimal_orbit_residual(f0d, singular),
                       "singular parameter block", DomainError);
}

TEST_CASE("translation directions span a tangent space of dimension 2n") {
  for (int n = 1; n <= 3; ++n) {
    int m = 1;
    RealBasis basis = real_basis(n, m);
    QMat delta = QMat::identity(m);
    JacobiDualT<Rational> f0{n, m, QMat(n, n), QMat(n, m), QMat(n, n),
                             QMat(n, n), QMat(n, m), delta};
    QMat fmat = jacobi_dual_matrix(f0);
    int coords = 3 * n * n + 2 * n * m + m * m;
    QMat jac(coords, 2 * m * n);
    int col = 0;
    auto add_direction = [&](const QMat& gen) {
      QMat moved = commutator(gen, fmat);
      QMat v = dual_coordinate_vector(project_dual(moved, n, m));
      for (int i = 0; i < coords; ++i) jac(i, col) = v(i, 0);
      ++col;
    };
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < n; ++q) add_direction(basis.D[p][q]);
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < n; ++q) add_direction(basis.Dhat[p][q]);
    CHECK(rank_exact(jac) == 2 * n);
  }
}

TEST_CASE("parabolic-family parametrization satisfies all its equations") {
  std::mt19937 rng(508);
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  for (int trial = 0; trial < 25; ++trial) {
    double a = unit(rng), b = unit(rng), c0 = unit(rng);
    double d = (1 + b * c0) / (a == 0 ? 1 : a);
    if (a == 0) a = 1;
    double lam = unit(rng), mu = unit(rng);
    double h = (trial % 2 ? 1.5 : -2.0);
    double s = a * mu - b * lam, t = c0 * mu - d * lam;
    OrbitCoefficients coef;
    coef.x = h * s * t;
    coef.y = (-h * s * s + h * t * t) / 2;
    coef.z = (-h * s * s - h * t * t) / 2;
    coef.p = h * s;
    coef.q = h * t;
    coef.r = h;
    OrbitFamilySpec fam{"R"};
    fam.h = h;
    CHECK(check_orbit_membership(coef, fam, 1e-9).member);
    DMat delta(1, 1);
    delta(0, 0) = h;
    CHECK(minimal_orbit_residual(coefficients_to_dual(coef), delta) < 1e-9);
  }
}

TEST_CASE("generator families obey their built-in index symmetries") {
  RealBasis t = real_basis(3, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(t.A[i][j] == t.A[j][i]);
      CHECK(t.B[i][j] == t.B[j][i]);
      CHECK(t.S[i][j] == -t.S[j][i]);
      CHECK(t.T[i][j] == t.T[j][i]);
    }
  for (int i = 0; i < 3; ++i)
    CHECK(t.S[i][i] == QMat(10, 10));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(t.D0[a][b] == t.D0[b][a]);

  // Every generator sits inside the ambient symplectic algebra.
  QMat j = standard_skew_form<Rational>(5);
  auto check_sp = [&](const QMat& x) {
    CHECK(x.transpose() * j + j * x == QMat(10, 10));
  };
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      check_sp(t.A[i][k]);
      check_sp(t.B[i][k]);
      check_sp(t.S[i][k]);
      check_sp(t.T[i][k]);
    }
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 3; ++q) {
      check_sp(t.D[p][q]);
      check_sp(t.Dhat[p][q]);
    }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) check_sp(t.D0[a][b]);
}

TEST_CASE("pinned bracket values of the generator families") {
  RealBasis t = real_basis(1, 1);
  CHECK(t.A[0][0](0, 0) == 2);
  CHECK(t.A[0][0](2, 2) == -2);
  CHECK(commutator(t.A[0][0], t.B[0][0]) == Rational(4) * t.T[0][0]);
  CHECK(commutator(t.D[0][0], t.Dhat[0][0]) == Rational(2) * t.D0[0][0]);
  ComplexBasis c = complex_basis(1, 1);
  CHECK(commutator(c.Yp[0][0], c.Ym[0][0]) == c.Z0[0][0]);
}

TEST_CASE("labeled sub-bases have the expected sizes") {
  RealBasis t = real_basis(3, 2);
  ComplexBasis c = complex_basis(3, 2);
  int n = 3, m = 2;
  int stab = n * (n - 1) / 2 + n * (n + 1) / 2 + m * (m + 1) / 2;
  CHECK(static_cast<int>(stabilizer_basis(t).size()) == stab);
  int trans = n * (n + 1) + 2 * m * n;
  CHECK(static_cast<int>(transverse_basis(t).size()) == trans);
  CHECK(static_cast<int>(translation_basis(t).size()) ==
        m * (m + 1) / 2 + 2 * m * n);
  CHECK(static_cast<int>(stabilizer_complex_basis(c).size()) == stab);
  CHECK(static_cast<int>(holomorphic_basis(c).size()) ==
        n * (n + 1) / 2 + m * n);
  CHECK(static_cast<int>(antiholomorphic_basis(c).size()) ==
        n * (n + 1) / 2 + m * n);
  // Stabilizer plus transverse spans the full algebra dimension.
  CHECK(stab + trans == n * (2 * n + 1) + 2 * m * n + m * (m + 1) / 2);
}

TEST_CASE("structure constants verify exactly for small ranks") {
  for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}}) {
    CommutationReport rep = verify_commutation_table(n, m);
    CHECK(rep.all_pass());
    CHECK(rep.real_failed == 0);
    CHECK(rep.complex_failed == 0);
    CHECK(rep.real_identities.size() > 0);
    CHECK(rep.complex_identities.size() > 0);
  }
  CHECK_THROWS_WITH_AS(verify_commutation_table(5, 1),
                       "rank parameters must lie in [1, 4]", DomainError);
}

TEST_CASE("verified table exports usable structure constants") {
  CommutationReport rep = verify_commutation_table(1, 1);
  bool found = false;
  for (const TableIdentity& id : rep.real_identities) {
    if (id.lhs1 == "A_11" && id.lhs2 == "B_11") {
      found = true;
      REQUIRE(id.rhs.size() == 1);
      CHECK(id.rhs[0].gen == "T_11");
      CHECK(id.rhs[0].coef == GaussianRational(Rational(4)));
      CHECK(id.pass);
    }
  }
  CHECK(found);
  // In rank one the antisymmetric family has no diagonal element, so the
  // bracket of the conjugate pair collapses to a single generator.
  bool found_c = false;
  for (const TableIdentity& id : rep.complex_identities) {
    if (id.lhs1 == "X+_11" && id.lhs2 == "X-_11") {
      found_c = true;
      REQUIRE(id.rhs.size() == 1);
      CHECK(id.rhs[0].gen == "Z-_11");
      CHECK(id.rhs[0].coef == GaussianRational(Rational(2)));
      CHECK(id.pass);
    }
  }
  CHECK(found_c);
  // In rank two the off-diagonal pair keeps both target families.
  CommutationReport rep2 = verify_commutation_table(2, 1);
  bool found_two = false;
  for (const TableIdentity& id : rep2.complex_identities) {
    if ((id.lhs1 == "X+_12" && id.lhs2 == "X-_12") ||
        (id.lhs1 == "X-_12" && id.lhs2 == "X+_12")) {
      found_two = true;
      CHECK(id.rhs.size() == 2);
      CHECK(id.pass);
    }
  }
  CHECK(found_two);
}

TEST_CASE("trace form of the adjoint representation has the stated scale") {
  KillingReport k1 = killing_check(1);
  CHECK(k1.all_match);
  CHECK(k1.neutral_pairing == Rational(8));
  CHECK(k1.pairs == 9);
  KillingReport k2 = killing_check(2);
  CHECK(k2.all_match);
  CHECK(k2.neutral_pairing == Rational(12));
  CHECK_THROWS_WITH_AS(killing_check(4),
                       "rank parameter must lie in [1, 3]", DomainError);
}

TEST_CASE("complex structure squares to minus one and sorts eigenvectors") {
  std::mt19937 rng(506);
  int n = 2, m = 2;
  TangentVector<Rational> v{n, m, random_symmetric(n, rng),
                            random_symmetric(n, rng),
                            random_matrix(m, n, rng),
                            random_matrix(m, n, rng)};
  TangentVector<Rational> twice = complex_structure(complex_structure(v));
  CHECK(twice.Y == -v.Y);
  CHECK(twice.X == -v.X);
  CHECK(twice.P == -v.P);
  CHECK(twice.Q == -v.Q);

  GaussianRational i = gauss_i();
  GaussianRational half{make_rational(1, 2)};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      GMat s(n, n);
      s(a, b) += 1;
      s(b, a) += 1;
      // +i eigendirection: (s, i s)/2 from the symmetric pair families.
      TangentVector<GaussianRational> plus{n, m, half * s, half * (i * s),
                                           GMat(m, n), GMat(m, n)};
      TangentVector<GaussianRational> rotated = complex_structure(plus);
      CHECK(rotated.Y == i * plus.Y);
      CHECK(rotated.X == i * plus.X);
      TangentVector<GaussianRational> minus{n, m, half * s,
                                            -(half * (i * s)), GMat(m, n),
                                            GMat(m, n)};
      TangentVector<GaussianRational> back = complex_structure(minus);
      CHECK(back.Y == -(i * minus.Y));
      CHECK(back.X == -(i * minus.X));
    }
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < n; ++q) {
      GMat u(m, n);
      u(p, q) = 1;
      TangentVector<GaussianRational> plus{n, m, GMat(n, n), GMat(n, n),
                                           half * u, half * (i * u)};
      TangentVector<GaussianRational> rotated = complex_structure(plus);
      CHECK(rotated.P == i * plus.P);
      CHECK(rotated.Q == i * plus.Q);
    }

  TangentVector<Rational> zero{n, m, QMat(n, n), QMat(n, n), QMat(m, n),
                               QMat(m, n)};
  TangentVector<Rational> still = complex_structure(zero);
  CHECK(still.Y == QMat(n, n));
  CHECK(still.P == QMat(m, n));

  DMat bad(2, 2);
  bad(0, 1) = 1;
  CHECK_THROWS_WITH_AS(
      make_tangent_vector(2, 2, bad, DMat(2, 2), DMat(2, 2), DMat(2, 2)),
      "tangent block must be symmetric", DomainError);
}
