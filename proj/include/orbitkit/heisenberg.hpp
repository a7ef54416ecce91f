#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orbitkit/matrix.hpp"
#include "orbitkit/scalar.hpp"

namespace orbitkit {

/// Group element (λ, µ, κ) with λ, µ ∈ S^{h×g}, κ ∈ S^{h×h} and
/// κ + µ ᵗλ symmetric.  The product-coordinate form is the canonical
/// internal representation; bracket coordinates exist only through the
/// explicit conversions below.
template <typename S>
struct HeisT {
  int g = 0, h = 0;
  Matrix<S> lambda, mu, kappa;
};

using HeisElement = HeisT<double>;
using HeisElementQ = HeisT<Rational>;

/// Lie-algebra element X(α, β, γ) with γ symmetric.
template <typename S>
struct HeisLieT {
  int g = 0, h = 0;
  Matrix<S> alpha, beta, gamma;
};

using HeisLieElement = HeisLieT<double>;
using HeisLieElementQ = HeisLieT<Rational>;

/// Dual-space element F(a, b, c) with c symmetric.
template <typename S>
struct HeisDualT {
  int g = 0, h = 0;
  Matrix<S> a, b, c;
};

using HeisDual = HeisDualT<double>;
using HeisDualQ = HeisDualT<Rational>;

enum class DualOrbitKind { TypeI, TypeII, TypeIII };

std::string to_string(DualOrbitKind kind);

/// Classification of the translation-group orbit of a character
/// (µ̂, κ̂): nondegenerate κ̂, degenerate nonzero κ̂, or κ̂ = 0.
struct DualOrbitClass {
  DualOrbitKind kind;
  int stabilizer_dim;
};

namespace detail {

template <typename S>
void require_same_dims(int g1, int h1, int g2, int h2) {
  if (g1 != g2 || h1 != h2)
    throw DomainError("dimension mismatch between operands");
}

template <typename S>
bool nearly_symmetric(const Matrix<S>& m, double tol) {
  if (scalar_traits<S>::exact) return m == m.transpose();
  return max_abs_diff(m, m.transpose()) <= tol;
}

}  // namespace detail

template <typename S>
HeisT<S> make_heis(int g, int h, Matrix<S> lambda, Matrix<S> mu,
                   Matrix<S> kappa, double tol = 1e-12) {
  if (g <= 0 || h <= 0) throw DomainError("dimensions must be positive");
  if (lambda.rows() != h || lambda.cols() != g || mu.rows() != h ||
      mu.cols() != g || kappa.rows() != h || kappa.cols() != h)
    throw DomainError("block shapes do not match the declared dimensions");
  if (!detail::nearly_symmetric(kappa + mu * lambda.transpose(), tol))
    throw DomainError("kappa + mu * t(lambda) must be symmetric");
  return {g, h, std::move(lambda), std::move(mu), std::move(kappa)};
}

template <typename S>
HeisT<S> heis_identity(int g, int h) {
  return {g, h, Matrix<S>(h, g), Matrix<S>(h, g), Matrix<S>(h, h)};
}

template <typename S>
HeisT<S> heis_mul(const HeisT<S>& x, const HeisT<S>& y) {
  detail::require_same_dims<S>(x.g, x.h, y.g, y.h);
  return {x.g, x.h, x.lambda + y.lambda, x.mu + y.mu,
          x.kappa + y.kappa + x.lambda * y.mu.transpose() -
              x.mu * y.lambda.transpose()};
}

template <typename S>
HeisT<S> heis_inv(const HeisT<S>& x) {
  return {x.g, x.h, -x.lambda, -x.mu,
          -x.kappa + x.lambda * x.mu.transpose() -
              x.mu * x.lambda.transpose()};
}

/// Bracket coordinates [λ, µ, κ] (second coordinate system): the same
/// data interpreted so that [λ, µ, κ] equals (0, µ, κ) ∘ (λ, 0, 0).
/// Conversion to product coordinates.
template <typename S>
HeisT<S> bracket_coords(const HeisT<S>& sq) {
  return {sq.g, sq.h, sq.lambda, sq.mu,
          sq.kappa - sq.mu * sq.lambda.transpose()};
}

/// Inverse conversion: product coordinates to bracket coordinates.
template <typename S>
HeisT<S> round_to_bracket(const HeisT<S>& x) {
  return {x.g, x.h, x.lambda, x.mu,
          x.kappa + x.mu * x.lambda.transpose()};
}

/// Multiplication written directly in bracket coordinates.
template <typename S>
HeisT<S> diamond_mul(const HeisT<S>& x, const HeisT<S>& y) {
  detail::require_same_dims<S>(x.g, x.h, y.g, y.h);
  return {x.g, x.h, x.lambda + y.lambda, x.mu + y.mu,
          x.kappa + y.kappa + x.lambda * y.mu.transpose() +
              y.mu * x.lambda.transpose()};
}

/// 2(g+h) x 2(g+h) matrix realization; an exact group homomorphism
/// into the symplectic group of degree g+h.
template <typename S>
Matrix<S> heis_embed(const HeisT<S>& x) {
  int g = x.g, h = x.h;
  int n = 2 * (g + h);
  Matrix<S> m = Matrix<S>::identity(n);
  // Row/column offsets of the four-block grid (g, h, g, h).
  int r2 = g, r3 = g + h, r4 = 2 * g + h;
  m.set_block(0, r4, x.mu.transpose());
  m.set_block(r2, 0, x.lambda);
  m.set_block(r2, r3, x.mu);
  m.set_block(r2, r4, x.kappa);
  m.set_block(r3, r4, -x.lambda.transpose());
  return m;
}

template <typename S>
HeisLieT<S> make_heis_lie(int g, int h, Matrix<S> alpha, Matrix<S> beta,
                          Matrix<S> gamma, double tol = 1e-12) {
  if (g <= 0 || h <= 0) throw DomainError("dimensions must be positive");
  if (alpha.rows() != h || alpha.cols() != g || beta.rows() != h ||
      beta.cols() != g || gamma.rows() != h || gamma.cols() != h)
    throw DomainError("block shapes do not match the declared dimensions");
  if (!detail::nearly_symmetric(gamma, tol))
    throw DomainError("gamma must be symmetric");
  return {g, h, std::move(alpha), std::move(beta), std::move(gamma)};
}

template <typename S>
HeisDualT<S> make_heis_dual(int g, int h, Matrix<S> a, Matrix<S> b,
                            Matrix<S> c, double tol = 1e-12) {
  if (g <= 0 || h <= 0) throw DomainError("dimensions must be positive");
  if (a.rows() != h || a.cols() != g || b.rows() != h || b.cols() != g ||
      c.rows() != h || c.cols() != h)
    throw DomainError("block shapes do not match the declared dimensions");
  if (!detail::nearly_symmetric(c, tol))
    throw DomainError("c must be symmetric");
  return {g, h, std::move(a), std::move(b), std::move(c)};
}

/// Matrix realization of X(α, β, γ) inside the symplectic Lie algebra.
template <typename S>
Matrix<S> heis_lie_matrix(const HeisLieT<S>& x) {
  int g = x.g, h = x.h;
  Matrix<S> m(2 * (g + h), 2 * (g + h));
  int r2 = g, r3 = g + h, r4 = 2 * g + h;
  m.set_block(0, r4, x.beta.transpose());
  m.set_block(r2, 0, x.alpha);
  m.set_block(r2, r3, x.beta);
  m.set_block(r2, r4, x.gamma);
  m.set_block(r3, r4, -x.alpha.transpose());
  return m;
}

/// Matrix realization of F(a, b, c) used for the trace pairing.
template <typename S>
Matrix<S> heis_dual_matrix(const HeisDualT<S>& f) {
  int g = f.g, h = f.h;
  Matrix<S> m(2 * (g + h), 2 * (g + h));
  int r2 = g, r3 = g + h, r4 = 2 * g + h;
  m.set_block(0, r2, f.a.transpose());
  m.set_block(r3, r2, f.b.transpose());
  m.set_block(r4, 0, f.b);
  m.set_block(r4, r2, f.c);
  m.set_block(r4, r3, -f.a);
  return m;
}

/// ⟨F(a,b,c), X(α,β,γ)⟩ = 2σ(ᵗα a + ᵗb β) + σ(cγ); equals the trace of
/// the product of the two matrix realizations.
template <typename S>
S heis_pairing(const HeisDualT<S>& f, const HeisLieT<S>& x) {
  detail::require_same_dims<S>(f.g, f.h, x.g, x.h);
  S two = scalar_traits<S>::one() + scalar_traits<S>::one();
  return two * trace(x.alpha.transpose() * f.a + f.b.transpose() * x.beta) +
         trace(f.c * x.gamma);
}

/// [X(α,β,γ), X(δ,ε,ξ)] = X(0, 0, αᵗε + εᵗα − βᵗδ − δᵗβ).
template <typename S>
HeisLieT<S> heis_lie_bracket(const HeisLieT<S>& x, const HeisLieT<S>& y) {
  detail::require_same_dims<S>(x.g, x.h, y.g, y.h);
  Matrix<S> gamma = x.alpha * y.beta.transpose() +
                    y.beta * x.alpha.transpose() -
                    x.beta * y.alpha.transpose() -
                    y.alpha * x.beta.transpose();
  return {x.g, x.h, Matrix<S>(x.h, x.g), Matrix<S>(x.h, x.g), gamma};
}

/// Closed form of the coadjoint action: (λ,µ,κ)·F(a,b,c) = F(a+cµ, b−cλ, c).
template <typename S>
HeisDualT<S> heis_coadjoint(const HeisT<S>& x, const HeisDualT<S>& f) {
  detail::require_same_dims<S>(x.g, x.h, f.g, f.h);
  return {x.g, x.h, f.a + f.c * x.mu, f.b - f.c * x.lambda, f.c};
}

/// Independent realization of the coadjoint action: conjugate the matrix
/// form of F by the embedded element and project back onto dual shape.
template <typename S>
HeisDualT<S> heis_coadjoint_conjugate(const HeisT<S>& x,
                                      const HeisDualT<S>& f) {
  detail::require_same_dims<S>(x.g, x.h, f.g, f.h);
  int g = x.g, h = x.h;
  Matrix<S> conj =
      heis_embed(x) * heis_dual_matrix(f) * heis_embed(heis_inv(x));
  int r2 = g, r3 = g + h, r4 = 2 * g + h;
  Matrix<S> a = conj.block(0, r2, g, h).transpose();
  Matrix<S> b = conj.block(r4, 0, h, g);
  Matrix<S> c = conj.block(r4, r2, h, h);
  return {g, h, a, b, c};
}

/// B_F(X, Y) = ⟨F, [X, Y]⟩ = σ{c(αᵗε + εᵗα − βᵗδ − δᵗβ)}.
template <typename S>
S heis_bform(const HeisDualT<S>& f, const HeisLieT<S>& x,
             const HeisLieT<S>& y) {
  detail::require_same_dims<S>(f.g, f.h, x.g, x.h);
  detail::require_same_dims<S>(f.g, f.h, y.g, y.h);
  Matrix<S> inner = x.alpha * y.beta.transpose() +
                    y.beta * x.alpha.transpose() -
                    x.beta * y.alpha.transpose() -
                    y.alpha * x.beta.transpose();
  return trace(f.c * inner);
}

/// Mackey factorization (λ,µ,κ) = (0, µ, κ+µᵗλ) ∘ (λ, 0, 0).
template <typename S>
std::pair<HeisT<S>, HeisT<S>> mackey_split(const HeisT<S>& x) {
  HeisT<S> k{x.g, x.h, Matrix<S>(x.h, x.g), x.mu,
             x.kappa + x.mu * x.lambda.transpose()};
  HeisT<S> s{x.g, x.h, x.lambda, Matrix<S>(x.h, x.g), Matrix<S>(x.h, x.h)};
  return {k, s};
}

/// Standard Lie-algebra basis: all α-directions in row-major order, then
/// all β-directions, then the symmetric γ-directions (upper triangle,
/// row-major, with E_ij + E_ji off the diagonal).
template <typename S>
std::vector<HeisLieT<S>> heis_lie_basis(int g, int h) {
  std::vector<HeisLieT<S>> basis;
  S one = scalar_traits<S>::one();
  for (int p = 0; p < h; ++p)
    for (int q = 0; q < g; ++q) {
      HeisLieT<S> x{g, h, Matrix<S>(h, g), Matrix<S>(h, g), Matrix<S>(h, h)};
      x.alpha(p, q) = one;
      basis.push_back(x);
    }
  for (int p = 0; p < h; ++p)
    for (int q = 0; q < g; ++q) {
      HeisLieT<S> x{g, h, Matrix<S>(h, g), Matrix<S>(h, g), Matrix<S>(h, h)};
      x.beta(p, q) = one;
      basis.push_back(x);
    }
  for (int i = 0; i < h; ++i)
    for (int j = i; j < h; ++j) {
      HeisLieT<S> x{g, h, Matrix<S>(h, g), Matrix<S>(h, g), Matrix<S>(h, h)};
      x.gamma(i, j) = one;
      x.gamma(j, i) = one;
      basis.push_back(x);
    }
  return basis;
}

inline int heis_lie_dim(int g, int h) { return 2 * h * g + h * (h + 1) / 2; }

/// Orbit type of the character (µ̂, κ̂) under the translation subgroup,
/// with the dimension of its stabilizer.  Nondegeneracy of κ̂ uses exact
/// rank for rational input and a determinant threshold of 1e-10 for
/// floating input.
DualOrbitClass classify_dual_orbit(const Matrix<Rational>& mu_hat,
                                   const Matrix<Rational>& kappa_hat);
DualOrbitClass classify_dual_orbit(const Matrix<double>& mu_hat,
                                   const Matrix<double>& kappa_hat);

/// Basis of the radical {X : B_F(X, ·) = 0}, computed exactly as the
/// null space of the Gram matrix of B_F on the standard basis.
std::vector<HeisLieElementQ> heis_radical(const HeisDualQ& f);
std::vector<HeisLieElement> heis_radical(const HeisDual& f);

/// Rank of the Gram matrix of B_F on the standard basis (orbit dimension).
int heis_bform_rank(const HeisDualQ& f);

struct PolarizationReport {
  std::vector<HeisLieElementQ> basis;  // spans {X(0, β, γ)}
  bool isotropic;                      // B_F vanishes on basis pairs
  bool maximal;                        // dim = dim radical + hg
  int dim;
};

/// Checks that {X(0, β, γ)} is a maximal isotropic subalgebra for
/// F(0, 0, c) with c nondegenerate.
PolarizationReport heis_polarization_check(const Matrix<Rational>& c);
PolarizationReport heis_polarization_check(const Matrix<double>& c,
                                           double tol = 1e-10);

/// Pfaffian of the matrix a_ij = ⟨F, [y_i, y_j]⟩ over the non-central
/// basis (α-directions row-major, then β-directions); requires c
/// nondegenerate.
Rational plancherel_density(const HeisDualQ& f);
double plancherel_density(const HeisDual& f);

}  // namespace orbitkit
