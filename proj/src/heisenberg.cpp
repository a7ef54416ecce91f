#include "orbitkit/heisenberg.hpp"

#include <cmath>

#include "orbitkit/linalg.hpp"

namespace orbitkit {

std::string to_string(DualOrbitKind kind) {
  switch (kind) {
    case DualOrbitKind::TypeI:
      return "TypeI";
    case DualOrbitKind::TypeII:
      return "TypeII";
    case DualOrbitKind::TypeIII:
      return "TypeIII";
  }
  return "unknown";
}

namespace {

DualOrbitClass classify_impl(int g, int h, bool is_zero, bool nondegenerate,
                             int rank) {
  if (nondegenerate) return {DualOrbitKind::TypeI, 0};
  if (is_zero) return {DualOrbitKind::TypeIII, h * g};
  // Degenerate nonzero: the stabilizer is the set of λ with κ̂λ = 0,
  // one kernel copy per column.
  return {DualOrbitKind::TypeII, g * (h - rank)};
}

void check_character_shapes(int rows_mu, int rows_kappa, int cols_kappa) {
  if (rows_kappa != cols_kappa || rows_mu != rows_kappa)
    throw DomainError("character blocks have inconsistent shapes");
}

}  // namespace

DualOrbitClass classify_dual_orbit(const Matrix<Rational>& mu_hat,
                                   const Matrix<Rational>& kappa_hat) {
  check_character_shapes(mu_hat.rows(), kappa_hat.rows(), kappa_hat.cols());
  if (!(kappa_hat == kappa_hat.transpose()))
    throw DomainError("kappa part of a character must be symmetric");
  int h = kappa_hat.rows();
  int g = mu_hat.cols();
  int rank = rank_exact(kappa_hat);
  bool zero = true;
  for (int i = 0; i < h && zero; ++i)
    for (int j = 0; j < h; ++j)
      if (!scalar_traits<Rational>::is_zero(kappa_hat(i, j))) {
        zero = false;
        break;
      }
  return classify_impl(g, h, zero, rank == h, rank);
}

DualOrbitClass classify_dual_orbit(const Matrix<double>& mu_hat,
                                   const Matrix<double>& kappa_hat) {
  check_character_shapes(mu_hat.rows(), kappa_hat.rows(), kappa_hat.cols());
  if (max_abs_diff(kappa_hat, kappa_hat.transpose()) > 1e-12)
    throw DomainError("kappa part of a character must be symmetric");
  int h = kappa_hat.rows();
  int g = mu_hat.cols();
  Matrix<Rational> exact = to_rational(kappa_hat);
  int rank = rank_exact(exact);
  bool zero = max_abs(kappa_hat) == 0.0;
  bool nondegenerate =
      std::fabs(to_double(determinant_exact(exact))) > 1e-10;
  return classify_impl(g, h, zero, nondegenerate, rank);
}

namespace {

/// Gram matrix of B_F on the standard basis.
Matrix<Rational> bform_gram(const HeisDualQ& f) {
  std::vector<HeisLieElementQ> basis = heis_lie_basis<Rational>(f.g, f.h);
  int n = static_cast<int>(basis.size());
  Matrix<Rational> gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      gram(i, j) = heis_bform(f, basis[i], basis[j]);
      gram(j, i) = -gram(i, j);
    }
  return gram;
}

HeisLieElementQ combine(const std::vector<HeisLieElementQ>& basis,
                        const Matrix<Rational>& coeffs, int col) {
  HeisLieElementQ out{basis.front().g, basis.front().h,
                      Matrix<Rational>(basis.front().alpha.rows(),
                                       basis.front().alpha.cols()),
                      Matrix<Rational>(basis.front().beta.rows(),
                                       basis.front().beta.cols()),
                      Matrix<Rational>(basis.front().gamma.rows(),
                                       basis.front().gamma.cols())};
  for (int i = 0; i < static_cast<int>(basis.size()); ++i) {
    const Rational& w = coeffs(i, col);
    if (scalar_traits<Rational>::is_zero(w)) continue;
    out.alpha += w * basis[i].alpha;
    out.beta += w * basis[i].beta;
    out.gamma += w * basis[i].gamma;
  }
  return out;
}

HeisLieElement lie_to_double(const HeisLieElementQ& x) {
  return {x.g, x.h, to_double(x.alpha), to_double(x.beta),
          to_double(x.gamma)};
}

HeisDualQ dual_to_exact(const HeisDual& f) {
  return {f.g, f.h, to_rational(f.a), to_rational(f.b), to_rational(f.c)};
}

}  // namespace

std::vector<HeisLieElementQ> heis_radical(const HeisDualQ& f) {
  std::vector<HeisLieElementQ> basis = heis_lie_basis<Rational>(f.g, f.h);
  Matrix<Rational> ns = nullspace_exact(bform_gram(f));
  std::vector<HeisLieElementQ> radical;
  for (int col = 0; col < ns.cols(); ++col)
    radical.push_back(combine(basis, ns, col));
  return radical;
}

std::vector<HeisLieElement> heis_radical(const HeisDual& f) {
  std::vector<HeisLieElement> out;
  for (const HeisLieElementQ& x : heis_radical(dual_to_exact(f)))
    out.push_back(lie_to_double(x));
  return out;
}

int heis_bform_rank(const HeisDualQ& f) { return rank_exact(bform_gram(f)); }

PolarizationReport heis_polarization_check(const Matrix<Rational>& c) {
  int h = c.rows();
  if (c.cols() != h || !(c == c.transpose()))
    throw DomainError("central form must be square symmetric");
  if (rank_exact(c) != h)
    throw DomainError("central form must be nondegenerate");
  // The isotropy statement is independent of g; report it for g = 1 and
  // verify the dimension count hg + h(h+1)/2 with g = 1.
  int g = 1;
  HeisDualQ f{g, h, Matrix<Rational>(h, g), Matrix<Rational>(h, g), c};
  std::vector<HeisLieElementQ> all = heis_lie_basis<Rational>(g, h);
  PolarizationReport rep;
  // β- and γ-directions follow the hg α-directions in the basis order.
  for (int i = h * g; i < static_cast<int>(all.size()); ++i)
    rep.basis.push_back(all[i]);
  rep.dim = static_cast<int>(rep.basis.size());
  rep.isotropic = true;
  for (const HeisLieElementQ& x : rep.basis)
    for (const HeisLieElementQ& y : rep.basis)
      if (!scalar_traits<Rational>::is_zero(heis_bform(f, x, y)))
        rep.isotropic = false;
  int radical_dim = static_cast<int>(heis_radical(f).size());
  rep.maximal = rep.dim == radical_dim + h * g;
  // Every α-direction must pair nontrivially with the subalgebra,
  // otherwise it could be adjoined without breaking isotropy.
  for (int i = 0; i < h * g && rep.maximal; ++i) {
    bool pairs = false;
    for (const HeisLieElementQ& y : rep.basis)
      if (!scalar_traits<Rational>::is_zero(heis_bform(f, all[i], y))) {
        pairs = true;
        break;
      }
    if (!pairs) rep.maximal = false;
  }
  return rep;
}

PolarizationReport heis_polarization_check(const Matrix<double>& c,
                                           double tol) {
  if (c.rows() != c.cols() || max_abs_diff(c, c.transpose()) > 1e-12)
    throw DomainError("central form must be square symmetric");
  Matrix<Rational> exact = to_rational(c);
  if (std::fabs(to_double(determinant_exact(exact))) <= tol)
    throw DomainError("central form must be nondegenerate");
  Matrix<Rational> sym =
      make_rational(1, 2) * (exact + exact.transpose());
  return heis_polarization_check(sym);
}

Rational plancherel_density(const HeisDualQ& f) {
  if (rank_exact(f.c) != f.h)
    throw DomainError("central form must be nondegenerate");
  std::vector<HeisLieElementQ> basis = heis_lie_basis<Rational>(f.g, f.h);
  int nc = 2 * f.h * f.g;  // non-central directions come first
  Matrix<Rational> gram(nc, nc);
  for (int i = 0; i < nc; ++i)
    for (int j = i + 1; j < nc; ++j) {
      gram(i, j) = heis_pairing(f, heis_lie_bracket(basis[i], basis[j]));
      gram(j, i) = -gram(i, j);
    }
  return pfaffian(gram);
}

double plancherel_density(const HeisDual& f) {
  HeisDualQ exact = dual_to_exact(f);
  if (std::fabs(to_double(determinant_exact(exact.c))) <= 1e-10)
    throw DomainError("central form must be nondegenerate");
  return to_double(plancherel_density(exact));
}

}  // namespace orbitkit
