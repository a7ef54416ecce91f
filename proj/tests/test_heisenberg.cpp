#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orbitkit/heisenberg.hpp"
#include "orbitkit/linalg.hpp"
#include "orbitkit/symplectic.hpp"

using namespace orbitkit;

namespace {

Matrix<Rational> random_rat(int r, int c, std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 3);
  Matrix<Rational> m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = make_rational(num(rng), den(rng));
  return m;
}

Matrix<Rational> random_sym(int n, std::mt19937& rng) {
  Matrix<Rational> m = random_rat(n, n, rng);
  return m + m.transpose();
}

Matrix<Rational> random_nondeg_sym(int n, std::mt19937& rng) {
  for (;;) {
    Matrix<Rational> c = random_sym(n, rng);
    if (rank_exact(c) == n) return c;
  }
}

// κ chosen so that κ + µ tλ is symmetric.
HeisElementQ random_heis(int g, int h, std::mt19937& rng) {
  Matrix<Rational> lambda = random_rat(h, g, rng);
  Matrix<Rational> mu = random_rat(h, g, rng);
  Matrix<Rational> kappa = random_sym(h, rng) - mu * lambda.transpose();
  return make_heis(g, h, lambda, mu, kappa);
}

HeisLieElementQ random_lie(int g, int h, std::mt19937& rng) {
  return make_heis_lie(g, h, random_rat(h, g, rng), random_rat(h, g, rng),
                       random_sym(h, rng));
}

HeisDualQ random_dual(int g, int h, std::mt19937& rng) {
  return make_heis_dual(g, h, random_rat(h, g, rng), random_rat(h, g, rng),
                        random_sym(h, rng));
}

HeisElementQ scalar_heis(long l, long m, long k) {
  Matrix<Rational> lm(1, 1), mm(1, 1), km(1, 1);
  lm(0, 0) = l;
  mm(0, 0) = m;
  km(0, 0) = k;
  return make_heis(1, 1, lm, mm, km);
}

bool heis_equal(const HeisT<Rational>& x, const HeisT<Rational>& y) {
  return x.lambda == y.lambda && x.mu == y.mu && x.kappa == y.kappa;
}

}  // namespace

TEST_CASE("product law: identity, pinned product, inverse axiom") {
  HeisElementQ e = heis_identity<Rational>(1, 1);
  HeisElementQ x = scalar_heis(1, 0, 0);
  HeisElementQ y = scalar_heis(0, 1, 0);
  CHECK(heis_equal(heis_mul(e, x), x));
  CHECK(heis_equal(heis_mul(x, e), x));

  HeisElementQ xy = heis_mul(x, y);
  CHECK(xy.lambda(0, 0) == 1);
  CHECK(xy.mu(0, 0) == 1);
  CHECK(xy.kappa(0, 0) == 1);

  std::mt19937 rng(201);
  for (int t = 0; t < 25; ++t) {
    HeisElementQ a = random_heis(2, 2, rng);
    CHECK(heis_equal(heis_mul(a, heis_inv(a)), heis_identity<Rational>(2, 2)));
    CHECK(heis_equal(heis_inv(heis_inv(a)), a));
  }
}

TEST_CASE("product law: exact associativity on random rational triples") {
  std::mt19937 rng(202);
  for (auto [g, h] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 3}}) {
    for (int t = 0; t < 10; ++t) {
      HeisElementQ a = random_heis(g, h, rng);
      HeisElementQ b = random_heis(g, h, rng);
      HeisElementQ c = random_heis(g, h, rng);
      CHECK(heis_equal(heis_mul(heis_mul(a, b), c),
                       heis_mul(a, heis_mul(b, c))));
    }
  }
}

TEST_CASE("inverse closed form on pinned element") {
  HeisElementQ x = scalar_heis(1, 1, 1);
  HeisElementQ xi = heis_inv(x);
  CHECK(xi.lambda(0, 0) == -1);
  CHECK(xi.mu(0, 0) == -1);
  CHECK(xi.kappa(0, 0) == -1);
  CHECK(heis_equal(heis_mul(x, xi), heis_identity<Rational>(1, 1)));
}

TEST_CASE("bracket coordinates: conversion and second product") {
  HeisElementQ sq = scalar_heis(1, 1, 1);  // interpreted as [1,1,1]
  HeisElementQ rd = bracket_coords(sq);
  CHECK(rd.lambda(0, 0) == 1);
  CHECK(rd.mu(0, 0) == 1);
  CHECK(rd.kappa(0, 0) == 0);

  // The conversion agrees with its defining factorization
  // [λ,µ,κ] = (0,µ,κ) ∘ (λ,0,0).
  HeisElementQ factored =
      heis_mul(scalar_heis(0, 1, 1), scalar_heis(1, 0, 0));
  CHECK(heis_equal(rd, factored));

  HeisElementQ d = diamond_mul(scalar_heis(1, 0, 0), scalar_heis(0, 1, 0));
  CHECK(d.lambda(0, 0) == 1);
  CHECK(d.mu(0, 0) == 1);
  CHECK(d.kappa(0, 0) == 2);

  std::mt19937 rng(203);
  for (auto [g, h] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    for (int t = 0; t < 10; ++t) {
      // Random bracket-coordinate triples: κ symmetric.
      HeisT<Rational> a{g, h, random_rat(h, g, rng), random_rat(h, g, rng),
                        random_sym(h, rng)};
      HeisT<Rational> b{g, h, random_rat(h, g, rng), random_rat(h, g, rng),
                        random_sym(h, rng)};
      // Conversion is a group isomorphism between the two products.
      CHECK(heis_equal(bracket_coords(diamond_mul(a, b)),
                       heis_mul(bracket_coords(a), bracket_coords(b))));
      CHECK(heis_equal(round_to_bracket(bracket_coords(a)), a));
    }
  }
}

TEST_CASE("matrix embedding is exactly symplectic and multiplicative") {
  HeisElementQ e = heis_identity<Rational>(2, 1);
  CHECK(heis_embed(e) == Matrix<Rational>::identity(6));

  std::mt19937 rng(204);
  for (auto [g, h] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    Matrix<Rational> j = standard_skew_form<Rational>(g + h);
    for (int t = 0; t < 10; ++t) {
      HeisElementQ a = random_heis(g, h, rng);
      HeisElementQ b = random_heis(g, h, rng);
      Matrix<Rational> ma = heis_embed(a);
      CHECK(ma.transpose() * j * ma == j);
      CHECK(heis_embed(heis_mul(a, b)) == ma * heis_embed(b));
      CHECK(heis_embed(heis_inv(a)) == inverse_exact(ma));
    }
  }
}

TEST_CASE("character orbit classification") {
  Matrix<double> mu11(1, 1), id1(1, 1);
  id1(0, 0) = 1.0;
  DualOrbitClass t1 = classify_dual_orbit(mu11, id1);
  CHECK(t1.kind == DualOrbitKind::TypeI);
  CHECK(t1.stabilizer_dim == 0);

  Matrix<double> mu32(3, 2), zero3(3, 3);
  mu32(0, 0) = 4.5;
  DualOrbitClass t3 = classify_dual_orbit(mu32, zero3);
  CHECK(t3.kind == DualOrbitKind::TypeIII);
  CHECK(t3.stabilizer_dim == 6);

  Matrix<double> mu21(2, 1), deg(2, 2);
  deg(0, 0) = 1.0;
  DualOrbitClass t2 = classify_dual_orbit(mu21, deg);
  CHECK(t2.kind == DualOrbitKind::TypeII);
  CHECK(t2.stabilizer_dim == 1);  // g=1, kernel of rank-1 form in h=2

  Matrix<double> skew(2, 2);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(classify_dual_orbit(mu21, skew), DomainError);

  // Full-rank identity in h=2 over rationals.
  DualOrbitClass q1 =
      classify_dual_orbit(Matrix<Rational>(2, 3),
                          Matrix<Rational>::identity(2));
  CHECK(q1.kind == DualOrbitKind::TypeI);
  CHECK(to_string(q1.kind) == "TypeI");
}

TEST_CASE("normal-abelian factorization") {
  Matrix<Rational> l(1, 1);
  l(0, 0) = 5;
  HeisElementQ pure{1, 1, l, Matrix<Rational>(1, 1), Matrix<Rational>(1, 1)};
  auto [k0, s0] = mackey_split(pure);
  CHECK(heis_equal(k0, heis_identity<Rational>(1, 1)));
  CHECK(heis_equal(s0, pure));

  auto [k1, s1] = mackey_split(scalar_heis(1, 1, 0));
  CHECK(k1.lambda(0, 0) == 0);
  CHECK(k1.mu(0, 0) == 1);
  CHECK(k1.kappa(0, 0) == 1);
  CHECK(s1.lambda(0, 0) == 1);
  CHECK(s1.mu(0, 0) == 0);
  CHECK(s1.kappa(0, 0) == 0);

  std::mt19937 rng(205);
  for (auto [g, h] : {std::pair{1, 1}, {2, 1}, {1, 2}, {3, 2}}) {
    for (int t = 0; t < 10; ++t) {
      HeisElementQ x = random_heis(g, h, rng);
      auto [k, s] = mackey_split(x);
      CHECK(heis_equal(heis_mul(k, s), x));
      for (int i = 0; i < h; ++i)
        for (int j = 0; j < g; ++j) {
          CHECK(k.lambda(i, j) == 0);
          CHECK(s.mu(i, j) == 0);
        }
    }
  }
}

TEST_CASE("dual pairing: closed form equals matrix trace") {
  Matrix<Rational> one(1, 1);
  one(0, 0) = 1;
  HeisDualQ f100 = make_heis_dual(1, 1, one, Matrix<Rational>(1, 1),
                                  Matrix<Rational>(1, 1));
  HeisLieElementQ x100 = make_heis_lie(1, 1, one, Matrix<Rational>(1, 1),
                                       Matrix<Rational>(1, 1));
  CHECK(heis_pairing(f100, x100) == 2);

  std::mt19937 rng(206);
  for (auto [g, h] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    for (int t = 0; t < 10; ++t) {
      HeisDualQ f = random_dual(g, h, rng);
      HeisLieElementQ x = random_lie(g, h, rng);
      // Central pairing special case.
      HeisDualQ fc{g, h, Matrix<Rational>(h, g), Matrix<Rational>(h, g), f.c};
      HeisLieElementQ xc{g, h, Matrix<Rational>(h, g), Matrix<Rational>(h, g),
                         x.gamma};
      CHECK(heis_pairing(fc, xc) == trace(f.c * x.gamma));
      // Trace oracle on the block-matrix realizations.
      CHECK(heis_pairing(f, x) ==
            trace(heis_dual_matrix(f) * heis_lie_matrix(x)));
    }
  }
}

TEST_CASE("coadjoint action: closed form, oracle, composition") {
  // c = 0 fixes every functional.
  std::mt19937 rng(207);
  HeisDualQ flat = random_dual(2, 2, rng);
  flat.c = Matrix<Rational>(2, 2);
  HeisElementQ any = random_heis(2, 2, rng);
  HeisDualQ moved = heis_coadjoint(any, flat);
  CHECK(moved.a == flat.a);
  CHECK(moved.b == flat.b);

  // Pinned example.
  HeisElementQ x23 = scalar_heis(2, 3, 0);
  Matrix<Rational> one(1, 1);
  one(0, 0) = 1;
  HeisDualQ fc = make_heis_dual(1, 1, Matrix<Rational>(1, 1),
                                Matrix<Rational>(1, 1), one);
  HeisDualQ out = heis_coadjoint(x23, fc);
  CHECK(out.a(0, 0) == 3);
  CHECK(out.b(0, 0) == -2);
  CHECK(out.c(0, 0) == 1);

  for (auto [g, h] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    for (int t = 0; t < 10; ++t) {
      HeisElementQ p = random_heis(g, h, rng);
      HeisElementQ q = random_heis(g, h, rng);
      HeisDualQ f = random_dual(g, h, rng);
      // Conjugate-and-project oracle agrees exactly.
      HeisDualQ closed = heis_coadjoint(p, f);
      HeisDualQ conj = heis_coadjoint_conjugate(p, f);
      CHECK(closed.a == conj.a);
      CHECK(closed.b == conj.b);
      CHECK(closed.c == conj.c);
      // Action property.
      HeisDualQ lhs = heis_coadjoint(p, heis_coadjoint(q, f));
      HeisDualQ rhs = heis_coadjoint(heis_mul(p, q), f);
      CHECK(lhs.a == rhs.a);
      CHECK(lhs.b == rhs.b);
      CHECK(lhs.c == rhs.c);
    }
  }
}

TEST_CASE("alternating form: pinned value, bracket oracle, antisymmetry") {
  Matrix<Rational> one(1, 1);
  one(0, 0) = 1;
  HeisDualQ f = make_heis_dual(1, 1, Matrix<Rational>(1, 1),
                               Matrix<Rational>(1, 1), one);
  HeisLieElementQ xa = make_heis_lie(1, 1, one, Matrix<Rational>(1, 1),
                                     Matrix<Rational>(1, 1));
  HeisLieElementQ xb = make_heis_lie(1, 1, Matrix<Rational>(1, 1), one,
                                     Matrix<Rational>(1, 1));
  CHECK(heis_bform(f, xa, xb) == 2);

  std::mt19937 rng(208);
  for (auto [g, h] : {std::pair{1, 1}, {2, 2}}) {
    for (int t = 0; t < 10; ++t) {
      HeisDualQ fr = random_dual(g, h, rng);
      HeisLieElementQ x = random_lie(g, h, rng);
      HeisLieElementQ y = random_lie(g, h, rng);
      CHECK(heis_bform(fr, x, y) == heis_pairing(fr, heis_lie_bracket(x, y)));
      CHECK(heis_bform(fr, x, y) == -heis_bform(fr, y, x));
      // Vanishes identically when the central part is zero.
      HeisDualQ flat{g, h, fr.a, fr.b, Matrix<Rational>(h, h)};
      CHECK(heis_bform(flat, x, y) == 0);
    }
  }
}

TEST_CASE("radical of the alternating form") {
  // Degenerate functional: the whole algebra.
  HeisDualQ flat{1, 1, Matrix<Rational>(1, 1), Matrix<Rational>(1, 1),
                 Matrix<Rational>(1, 1)};
  CHECK(static_cast<int>(heis_radical(flat).size()) == heis_lie_dim(1, 1));

  // Nondegenerate scalar functional: exactly the center.
  Matrix<Rational> one(1, 1);
  one(0, 0) = 1;
  HeisDualQ f = make_heis_dual(1, 1, Matrix<Rational>(1, 1),
                               Matrix<Rational>(1, 1), one);
  std::vector<HeisLieElementQ> rad = heis_radical(f);
  REQUIRE(rad.size() == 1);
  CHECK(rad[0].alpha(0, 0) == 0);
  CHECK(rad[0].beta(0, 0) == 0);
  CHECK(rad[0].gamma(0, 0) != 0);

  // Orbit dimension: rank of the form is 2hg for nondegenerate c.
  std::mt19937 rng(209);
  for (auto [g, h] : {std::pair{1, 1}, {1, 2}, {2, 2}}) {
    Matrix<Rational> c = random_nondeg_sym(h, rng);
    REQUIRE(rank_exact(c) == h);
    HeisDualQ fr = make_heis_dual(g, h, random_rat(h, g, rng),
                                  random_rat(h, g, rng), c);
    CHECK(heis_bform_rank(fr) == 2 * h * g);
    CHECK(static_cast<int>(heis_radical(fr).size()) ==
          heis_lie_dim(g, h) - 2 * h * g);
  }
}

TEST_CASE("polarization subalgebra check") {
  Matrix<Rational> one(1, 1);
  one(0, 0) = 1;
  PolarizationReport rep = heis_polarization_check(one);
  CHECK(rep.dim == 2);  // {X(0,1,0), X(0,0,1)}
  CHECK(rep.isotropic);
  CHECK(rep.maximal);
  for (const HeisLieElementQ& x : rep.basis) CHECK(x.alpha(0, 0) == 0);

  std::mt19937 rng(210);
  for (int h : {2, 3}) {
    Matrix<Rational> c = random_nondeg_sym(h, rng);
    PolarizationReport r = heis_polarization_check(c);
    CHECK(r.dim == 1 * h + h * (h + 1) / 2);
    CHECK(r.isotropic);
    CHECK(r.maximal);
  }

  CHECK_THROWS_AS(heis_polarization_check(Matrix<Rational>(2, 2)),
                  DomainError);
  CHECK_THROWS_AS(heis_polarization_check(Matrix<double>(2, 2)), DomainError);
}

TEST_CASE("orbit volume density from the skew Gram matrix") {
  Matrix<Rational> c(1, 1);
  c(0, 0) = make_rational(7, 2);
  HeisDualQ f = make_heis_dual(1, 1, Matrix<Rational>(1, 1),
                               Matrix<Rational>(1, 1), c);
  CHECK(plancherel_density(f) == 7);  // 2c

  HeisDualQ fneg = make_heis_dual(1, 1, Matrix<Rational>(1, 1),
                                  Matrix<Rational>(1, 1), -c);
  CHECK(plancherel_density(fneg) == -7);

  // Squared density equals the determinant of the Gram matrix.
  std::mt19937 rng(211);
  for (int t = 0; t < 8; ++t) {
    Matrix<Rational> c2 = random_nondeg_sym(2, rng);
    REQUIRE(rank_exact(c2) == 2);
    HeisDualQ f2 = make_heis_dual(1, 2, random_rat(2, 1, rng),
                                  random_rat(2, 1, rng), c2);
    std::vector<HeisLieElementQ> basis = heis_lie_basis<Rational>(1, 2);
    Matrix<Rational> gram(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        gram(i, j) = heis_pairing(f2, heis_lie_bracket(basis[i], basis[j]));
    Rational pf = plancherel_density(f2);
    CHECK(pf * pf == determinant_exact(gram));
  }

  HeisDual degenerate{1, 1, Matrix<double>(1, 1), Matrix<double>(1, 1),
                      Matrix<double>(1, 1)};
  CHECK_THROWS_AS(plancherel_density(degenerate), DomainError);
}

TEST_CASE("orbit geometry: surjective affine span and closedness") {
  std::mt19937 rng(212);
  for (auto [g, h] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
    // Jacobian of (λ, µ) ↦ (cµ, −cλ) has full rank 2hg for invertible c.
    Matrix<Rational> c = random_nondeg_sym(h, rng);
    REQUIRE(rank_exact(c) == h);
    int d = h * g;
    Matrix<Rational> jac(2 * d, 2 * d);
    for (int p = 0; p < h; ++p)
      for (int q = 0; q < g; ++q) {
        int col_lambda = p * g + q;
        int col_mu = d + p * g + q;
        // a-rows: a = cµ depends only on µ; b = −cλ only on λ.
        for (int r = 0; r < h; ++r) {
          jac(r * g + q, col_mu) = c(r, p);
          jac(d + r * g + q, col_lambda) = -c(r, p);
        }
      }
    CHECK(rank_exact(jac) == 2 * d);

    // Exterior-derivative expression vanishes by the Jacobi identity.
    for (int t = 0; t < 10; ++t) {
      HeisDualQ f = random_dual(g, h, rng);
      HeisLieElementQ x1 = random_lie(g, h, rng);
      HeisLieElementQ x2 = random_lie(g, h, rng);
      HeisLieElementQ x3 = random_lie(g, h, rng);
      Rational cyc =
          heis_pairing(f, heis_lie_bracket(heis_lie_bracket(x1, x2), x3)) +
          heis_pairing(f, heis_lie_bracket(heis_lie_bracket(x2, x3), x1)) +
          heis_pairing(f, heis_lie_bracket(heis_lie_bracket(x3, x1), x2));
      CHECK(cyc == 0);
    }
  }
}
