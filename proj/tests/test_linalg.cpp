#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "orbitkit/linalg.hpp"

using namespace orbitkit;

namespace {

Matrix<Rational> random_skew(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  Matrix<Rational> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = make_rational(num(rng), den(rng));
      m(j, i) = -m(i, j);
    }
  return m;
}

Matrix<Rational> random_square(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-5, 5);
  Matrix<Rational> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = num(rng);
  return m;
}

Matrix<double> rotation_generator() {
  Matrix<double> a(2, 2);
  a(0, 1) = -1.0;
  a(1, 0) = 1.0;
  return a;
}

Matrix<double> upper_shift2() {
  Matrix<double> e(2, 2);
  e(0, 1) = 1.0;
  return e;
}

Matrix<double> blockdiag(const Matrix<double>& a, const Matrix<double>& b) {
  Matrix<double> m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

}  // namespace

TEST_CASE("pfaffian pinned values") {
  Matrix<Rational> a2(2, 2);
  a2(0, 1) = make_rational(7, 3);
  a2(1, 0) = make_rational(-7, 3);
  CHECK(pfaffian(a2) == make_rational(7, 3));

  Matrix<Rational> a4(4, 4);
  a4(0, 1) = 1; a4(1, 0) = -1;
  a4(2, 3) = 1; a4(3, 2) = -1;
  CHECK(pfaffian(a4) == 1);

  // A zero row forces a vanishing pfaffian.
  Matrix<Rational> z4(4, 4);
  z4(2, 3) = 5; z4(3, 2) = -5;
  CHECK(pfaffian(z4) == 0);

  // Sign convention.
  Matrix<Rational> j2(2, 2);
  j2(0, 1) = 1; j2(1, 0) = -1;
  CHECK(pfaffian(j2) == 1);
}

TEST_CASE("pfaffian domain errors") {
  Matrix<Rational> odd(3, 3);
  CHECK_THROWS_AS(pfaffian(odd), DomainError);
  Matrix<Rational> notskew(2, 2);
  notskew(0, 1) = 1;
  notskew(1, 0) = 1;
  CHECK_THROWS_AS(pfaffian(notskew), DomainError);
  Matrix<Rational> diag(2, 2);
  diag(0, 0) = 1;
  diag(0, 1) = 1; diag(1, 0) = -1;
  CHECK_THROWS_AS(pfaffian(diag), DomainError);
}

TEST_CASE("pfaffian squares to the determinant") {
  std::mt19937 rng(101);
  for (int n : {2, 4, 6, 8}) {
    for (int trial = 0; trial < 6; ++trial) {
      Matrix<Rational> a = random_skew(n, rng);
      Rational pf = pfaffian(a);
      CHECK(pf * pf == determinant_exact(a));
    }
  }
}

TEST_CASE("pfaffian congruence transformation law") {
  std::mt19937 rng(102);
  for (int trial = 0; trial < 8; ++trial) {
    Matrix<Rational> a = random_skew(4, rng);
    Matrix<Rational> b = random_square(4, rng);
    Matrix<Rational> t = b.transpose() * a * b;
    CHECK(pfaffian(t) == determinant_exact(b) * pfaffian(a));
  }
}

TEST_CASE("matrix exponential pinned values") {
  CHECK(max_abs_diff(matrix_exp(Matrix<double>(3, 3)),
                     Matrix<double>::identity(3)) == 0.0);

  Matrix<double> d(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  Matrix<double> e = matrix_exp(d);
  CHECK(std::fabs(e(0, 0) - std::exp(1.0)) <= 1e-12 * std::exp(1.0));
  CHECK(std::fabs(e(1, 1) - std::exp(-1.0)) <= 1e-12);
  CHECK(std::fabs(e(0, 1)) <= 1e-15);

  // Rotation oracle at t = 0.7.
  double t = 0.7;
  Matrix<double> g = rotation_generator();
  Matrix<double> r = matrix_exp(t * g);
  CHECK(std::fabs(r(0, 0) - std::cos(t)) <= 1e-13);
  CHECK(std::fabs(r(0, 1) + std::sin(t)) <= 1e-13);
  CHECK(std::fabs(r(1, 0) - std::sin(t)) <= 1e-13);
  CHECK(std::fabs(r(1, 1) - std::cos(t)) <= 1e-13);
}

TEST_CASE("matrix exponential additivity on commuting pairs") {
  std::mt19937 rng(103);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix<double> a(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) = u(rng);
    // A polynomial in a commutes with a.
    Matrix<double> b = 0.5 * (a * a) + 0.25 * a;
    Matrix<double> lhs = matrix_exp(a + b);
    Matrix<double> rhs = matrix_exp(a) * matrix_exp(b);
    CHECK(max_abs_diff(lhs, rhs) <= 1e-10 * std::max(1.0, max_abs(lhs)));
  }
}

TEST_CASE("spd logarithm pinned values and round trip") {
  CHECK(max_abs(matrix_log_spd(Matrix<double>::identity(4))) <= 1e-14);

  Matrix<double> d(2, 2);
  d(0, 0) = std::exp(2.0);
  d(1, 1) = 1.0;
  Matrix<double> lg = matrix_log_spd(d);
  CHECK(std::fabs(lg(0, 0) - 2.0) <= 1e-12);
  CHECK(std::fabs(lg(1, 1)) <= 1e-12);

  std::mt19937 rng(104);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix<double> b(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) b(i, j) = u(rng);
    Matrix<double> spd = b.transpose() * b + 0.5 * Matrix<double>::identity(3);
    Matrix<double> back = matrix_exp(matrix_log_spd(spd));
    CHECK(max_abs_diff(back, spd) <= 1e-10 * std::max(1.0, max_abs(spd)));
  }
}

TEST_CASE("spd logarithm names the offending eigenvalue") {
  Matrix<double> d(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -0.5;
  try {
    matrix_log_spd(d);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    std::string msg = e.what();
    CHECK(msg.find("eigenvalue") != std::string::npos);
    CHECK(msg.find("-0.5") != std::string::npos);
  }
  Matrix<double> asym(2, 2);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(matrix_log_spd(asym), DomainError);
}

TEST_CASE("additive splitting pinned examples") {
  // Pure nilpotent.
  Matrix<double> e0 = upper_shift2();
  JordanParts p = jordan_decompose(e0);
  CHECK(max_abs(p.hyperbolic) <= 1e-9);
  CHECK(max_abs(p.elliptic) <= 1e-9);
  CHECK(max_abs_diff(p.nilpotent, e0) <= 1e-9);

  // Pure rotation generator.
  Matrix<double> rot = rotation_generator();
  p = jordan_decompose(rot);
  CHECK(max_abs(p.hyperbolic) <= 1e-9);
  CHECK(max_abs_diff(p.elliptic, rot) <= 1e-9);
  CHECK(max_abs(p.nilpotent) <= 1e-9);

  // Block diagonal of a real split part and a nilpotent part.
  Matrix<double> h0(2, 2);
  h0(0, 0) = 1.0;
  h0(1, 1) = -1.0;
  Matrix<double> x = blockdiag(h0, e0);
  p = jordan_decompose(x);
  CHECK(max_abs_diff(p.hyperbolic, blockdiag(h0, Matrix<double>(2, 2))) <= 1e-9);
  CHECK(max_abs(p.elliptic) <= 1e-9);
  CHECK(max_abs_diff(p.nilpotent, blockdiag(Matrix<double>(2, 2), e0)) <= 1e-9);
}

TEST_CASE("additive splitting properties on conjugated mixtures") {
  std::mt19937 rng(105);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  // blockdiag(defective 2, rotation, -1) conjugated by a mild similarity.
  Matrix<double> base(5, 5);
  base(0, 0) = 2.0; base(0, 1) = 1.0; base(1, 1) = 2.0;
  base(2, 3) = 1.0; base(3, 2) = -1.0;
  base(4, 4) = -1.0;
  for (int trial = 0; trial < 5; ++trial) {
    Matrix<double> pert(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) pert(i, j) = u(rng);
    Matrix<double> s = Matrix<double>::identity(5) + pert;
    Matrix<double> x = s * base * inverse_lu(s);
    JordanParts p = jordan_decompose(x);
    double scale = std::max(1.0, max_abs(x));
    CHECK(max_abs_diff(p.hyperbolic + p.elliptic + p.nilpotent, x) <= 1e-9 * scale);
    CHECK(max_abs(commutator(p.hyperbolic, p.elliptic)) <= 1e-9 * scale);
    CHECK(max_abs(commutator(p.hyperbolic, p.nilpotent)) <= 1e-9 * scale);
    CHECK(max_abs(commutator(p.elliptic, p.nilpotent)) <= 1e-9 * scale);
    Matrix<double> npow = p.nilpotent;
    for (int k = 1; k < 5; ++k) npow = npow * p.nilpotent;
    CHECK(max_abs(npow) <= 1e-9);
    // The split matches the construction.
    Matrix<double> hexp(5, 5);
    hexp(0, 0) = 2.0; hexp(1, 1) = 2.0; hexp(4, 4) = -1.0;
    CHECK(max_abs_diff(p.hyperbolic, s * hexp * inverse_lu(s)) <= 1e-6);
  }
}

TEST_CASE("additive splitting rejects chained near-coincident spectra") {
  Matrix<double> d(3, 3);
  d(0, 0) = 0.0;
  d(1, 1) = 6e-9;
  d(2, 2) = 1.2e-8;
  CHECK_THROWS_AS(jordan_decompose(d), DomainError);
  try {
    jordan_decompose(d);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()) == "ill-conditioned decomposition");
  }
}

TEST_CASE("spectral classification") {
  Matrix<double> h0(2, 2);
  h0(0, 0) = 1.0;
  h0(1, 1) = -1.0;
  CHECK(classify_element(h0) == ElementClass::Hyperbolic);
  CHECK(classify_element(rotation_generator()) == ElementClass::Elliptic);
  CHECK(classify_element(upper_shift2()) == ElementClass::Nilpotent);
  CHECK(classify_element(Matrix<double>(3, 3)) == ElementClass::Nilpotent);

  // Real and imaginary spectrum together: semisimple mixed.
  Matrix<double> mixed = blockdiag(h0, rotation_generator());
  CHECK(classify_element(mixed) == ElementClass::SemisimpleMixed);

  // Nonzero eigenvalue with a defect: general.
  Matrix<double> gen(2, 2);
  gen(0, 0) = 1.0; gen(0, 1) = 1.0; gen(1, 1) = 1.0;
  CHECK(classify_element(gen) == ElementClass::General);

  CHECK(std::string(to_string(ElementClass::SemisimpleMixed)) == "semisimple-mixed");
}
