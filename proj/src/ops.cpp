#include "orbitkit/ops.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "orbitkit/heisenberg.hpp"
#include "orbitkit/jacobi.hpp"
#include "orbitkit/jacobi_forms.hpp"
#include "orbitkit/linalg.hpp"
#include "orbitkit/matrix.hpp"
#include "orbitkit/schrodinger.hpp"
#include "orbitkit/sl2.hpp"
#include "orbitkit/symplectic.hpp"

namespace orbitkit {

namespace {

using Handler = std::function<ojson(const ojson&)>;

// --- small JSON conveniences ----------------------------------------------

std::string require_str(const ojson& j, const char* name) {
  const ojson& v = require_field(j, name);
  if (!v.is_string())
    throw ParseError(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

std::string field_str(const ojson& j, const char* name, const char* fallback) {
  if (!j.is_object() || !j.contains(name)) return fallback;
  const ojson& v = j.at(name);
  if (!v.is_string())
    throw ParseError(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

long require_long(const ojson& j, const char* name) {
  const ojson& v = require_field(j, name);
  if (!v.is_number_integer())
    throw ParseError(std::string("field '") + name + "' must be an integer");
  return v.get<long>();
}

bool exact_mode(const ojson& j) { return field_bool(j, "exact", false); }

void no_exact(const ojson& j, const char* op) {
  if (exact_mode(j))
    throw DomainError(std::string("exact mode is not supported for operation '") +
                      op + "'");
}

/// 1-by-1 matrices are emitted as their single entry; the parsers accept
/// the shorthand back, so scalar-sized responses stay readable.
ojson squeeze(ojson m) {
  if (m.is_array() && m.size() == 1 && m[0].is_array() && m[0].size() == 1)
    return m[0][0];
  return m;
}

ojson dmat(const Matrix<double>& m) { return squeeze(double_matrix_to_json(m)); }
ojson qmat(const Matrix<Rational>& m) {
  return squeeze(rational_matrix_to_json(m));
}
ojson gmat(const Matrix<GaussianRational>& m) {
  return squeeze(gaussian_matrix_to_json(m));
}

Matrix<double> dmat_in(const ojson& j, const char* name) {
  return double_matrix_from_json(require_field(j, name));
}
Matrix<Rational> qmat_in(const ojson& j, const char* name) {
  return rational_matrix_from_json(require_field(j, name));
}
Matrix<GaussianRational> gmat_in(const ojson& j, const char* name) {
  return gaussian_matrix_from_json(require_field(j, name));
}
Matrix<long> lmat_in(const ojson& j, const char* name) {
  return long_matrix_from_json(require_field(j, name));
}

/// Complex matrices travel as a pair of real matrices "<x>_re"/"<x>_im".
Matrix<Complex> zpair_in(const ojson& j, const char* re, const char* im) {
  Matrix<double> a = dmat_in(j, re);
  Matrix<double> b = dmat_in(j, im);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ParseError(std::string("fields '") + re + "' and '" + im +
                     "' must have matching shapes");
  Matrix<Complex> z(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) z(r, c) = Complex(a(r, c), b(r, c));
  return z;
}

void zpair_out(ojson& dst, const char* re, const char* im,
               const Matrix<Complex>& z) {
  Matrix<double> a(z.rows(), z.cols()), b(z.rows(), z.cols());
  for (int r = 0; r < z.rows(); ++r)
    for (int c = 0; c < z.cols(); ++c) {
      a(r, c) = z(r, c).real();
      b(r, c) = z(r, c).imag();
    }
  dst[re] = dmat(a);
  dst[im] = dmat(b);
}

template <class S>
bool sym_ok(const Matrix<S>& m, double tol) {
  if constexpr (scalar_traits<S>::exact) {
    (void)tol;
    return m == m.transpose();
  } else {
    return max_abs_diff(m, m.transpose()) <= tol;
  }
}

// --- element schemas -------------------------------------------------------

template <class S>
struct HeisParts {
  int g = 0, h = 0;
  Matrix<S> lambda, mu, kappa;
};

HeisParts<double> heis_parts_d(const ojson& j) {
  return {require_int(j, "g"), require_int(j, "h"), dmat_in(j, "lambda"),
          dmat_in(j, "mu"), dmat_in(j, "kappa")};
}
HeisParts<Rational> heis_parts_q(const ojson& j) {
  return {require_int(j, "g"), require_int(j, "h"), qmat_in(j, "lambda"),
          qmat_in(j, "mu"), qmat_in(j, "kappa")};
}

HeisElement heis_in_d(const ojson& j) {
  auto p = heis_parts_d(j);
  return make_heis<double>(p.g, p.h, p.lambda, p.mu, p.kappa);
}
HeisElementQ heis_in_q(const ojson& j) {
  auto p = heis_parts_q(j);
  return make_heis<Rational>(p.g, p.h, p.lambda, p.mu, p.kappa);
}

ojson heis_out(const HeisElement& x) {
  ojson o;
  o["g"] = x.g;
  o["h"] = x.h;
  o["lambda"] = dmat(x.lambda);
  o["mu"] = dmat(x.mu);
  o["kappa"] = dmat(x.kappa);
  return o;
}
ojson heis_out(const HeisElementQ& x) {
  ojson o;
  o["g"] = x.g;
  o["h"] = x.h;
  o["lambda"] = qmat(x.lambda);
  o["mu"] = qmat(x.mu);
  o["kappa"] = qmat(x.kappa);
  return o;
}

HeisLieElement heis_lie_in_d(const ojson& j) {
  return make_heis_lie<double>(require_int(j, "g"), require_int(j, "h"),
                               dmat_in(j, "alpha"), dmat_in(j, "beta"),
                               dmat_in(j, "gamma"));
}
HeisLieElementQ heis_lie_in_q(const ojson& j) {
  return make_heis_lie<Rational>(require_int(j, "g"), require_int(j, "h"),
                                 qmat_in(j, "alpha"), qmat_in(j, "beta"),
                                 qmat_in(j, "gamma"));
}

ojson heis_lie_out(const HeisLieElement& x) {
  ojson o;
  o["g"] = x.g;
  o["h"] = x.h;
  o["alpha"] = dmat(x.alpha);
  o["beta"] = dmat(x.beta);
  o["gamma"] = dmat(x.gamma);
  return o;
}
ojson heis_lie_out(const HeisLieElementQ& x) {
  ojson o;
  o["g"] = x.g;
  o["h"] = x.h;
  o["alpha"] = qmat(x.alpha);
  o["beta"] = qmat(x.beta);
  o["gamma"] = qmat(x.gamma);
  return o;
}

HeisDual heis_dual_in_d(const ojson& j) {
  return make_heis_dual<double>(require_int(j, "g"), require_int(j, "h"),
                                dmat_in(j, "a"), dmat_in(j, "b"),
                                dmat_in(j, "c"));
}
HeisDualQ heis_dual_in_q(const ojson& j) {
  return make_heis_dual<Rational>(require_int(j, "g"), require_int(j, "h"),
                                  qmat_in(j, "a"), qmat_in(j, "b"),
                                  qmat_in(j, "c"));
}

ojson heis_dual_out(const HeisDual& f) {
  ojson o;
  o["g"] = f.g;
  o["h"] = f.h;
  o["a"] = dmat(f.a);
  o["b"] = dmat(f.b);
  o["c"] = dmat(f.c);
  return o;
}
ojson heis_dual_out(const HeisDualQ& f) {
  ojson o;
  o["g"] = f.g;
  o["h"] = f.h;
  o["a"] = qmat(f.a);
  o["b"] = qmat(f.b);
  o["c"] = qmat(f.c);
  return o;
}

SymplecticElement symp_in(const ojson& j) {
  Matrix<double> m = dmat_in(j, "M");
  int n = field_int(j, "n", m.rows() / 2);
  if (m.rows() != 2 * n || m.cols() != 2 * n)
    throw ParseError("field 'M' must be a 2n-by-2n matrix");
  return make_symplectic(m);
}

ojson symp_out(const SymplecticElement& g) {
  ojson o;
  o["n"] = g.n;
  o["M"] = dmat(g.M);
  return o;
}

JacobiElement jacobi_in_d(const ojson& j) {
  return make_jacobi_element(require_int(j, "n"), require_int(j, "m"),
                             dmat_in(j, "M"), dmat_in(j, "lambda"),
                             dmat_in(j, "mu"), dmat_in(j, "kappa"));
}
JacobiElementQ jacobi_in_q(const ojson& j) {
  return make_jacobi_exact(require_int(j, "n"), require_int(j, "m"),
                           qmat_in(j, "M"), qmat_in(j, "lambda"),
                           qmat_in(j, "mu"), qmat_in(j, "kappa"));
}

ojson jacobi_out(const JacobiElement& g) {
  ojson o;
  o["n"] = g.n();
  o["m"] = g.m();
  o["M"] = dmat(g.M.M);
  o["lambda"] = dmat(g.heis.lambda);
  o["mu"] = dmat(g.heis.mu);
  o["kappa"] = dmat(g.heis.kappa);
  return o;
}
ojson jacobi_out(const JacobiElementQ& g) {
  ojson o;
  o["n"] = g.n();
  o["m"] = g.m();
  o["M"] = qmat(g.M.M);
  o["lambda"] = qmat(g.heis.lambda);
  o["mu"] = qmat(g.heis.mu);
  o["kappa"] = qmat(g.heis.kappa);
  return o;
}

JacobiLieElement jacobi_lie_in_d(const ojson& j) {
  return make_jacobi_lie(require_int(j, "n"), require_int(j, "m"),
                         dmat_in(j, "X"), dmat_in(j, "P"), dmat_in(j, "Q"),
                         dmat_in(j, "R"));
}
JacobiLieT<Rational> jacobi_lie_in_q(const ojson& j) {
  return make_jacobi_lie_exact(require_int(j, "n"), require_int(j, "m"),
                               qmat_in(j, "X"), qmat_in(j, "P"),
                               qmat_in(j, "Q"), qmat_in(j, "R"));
}

JacobiDual jacobi_dual_in_d(const ojson& j) {
  return make_jacobi_dual(require_int(j, "n"), require_int(j, "m"),
                          dmat_in(j, "x"), dmat_in(j, "p"), dmat_in(j, "y"),
                          dmat_in(j, "z"), dmat_in(j, "q"), dmat_in(j, "r"));
}
JacobiDualT<Rational> jacobi_dual_in_q(const ojson& j) {
  return make_jacobi_dual_exact(require_int(j, "n"), require_int(j, "m"),
                                qmat_in(j, "x"), qmat_in(j, "p"),
                                qmat_in(j, "y"), qmat_in(j, "z"),
                                qmat_in(j, "q"), qmat_in(j, "r"));
}

ojson jacobi_dual_out(const JacobiDual& f) {
  ojson o;
  o["n"] = f.n;
  o["m"] = f.m;
  o["x"] = dmat(f.x);
  o["p"] = dmat(f.p);
  o["y"] = dmat(f.y);
  o["z"] = dmat(f.z);
  o["q"] = dmat(f.q);
  o["r"] = dmat(f.r);
  return o;
}
ojson jacobi_dual_out(const JacobiDualT<Rational>& f) {
  ojson o;
  o["n"] = f.n;
  o["m"] = f.m;
  o["x"] = qmat(f.x);
  o["p"] = qmat(f.p);
  o["y"] = qmat(f.y);
  o["z"] = qmat(f.z);
  o["q"] = qmat(f.q);
  o["r"] = qmat(f.r);
  return o;
}

Sl2Triple sl2_in(const ojson& j) {
  AmbientKind ambient = ambient_from_string(require_str(j, "ambient"));
  Matrix<GaussianRational> h = gmat_in(j, "H");
  int fallback = ambient == AmbientKind::SL ? h.rows() : h.rows() / 2;
  int n = field_int(j, "n", fallback);
  return make_sl2_triple(ambient, n, h, gmat_in(j, "X"), gmat_in(j, "Y"));
}

ojson sl2_out(const Sl2Triple& t) {
  ojson o;
  o["ambient"] = to_string(t.ambient);
  o["n"] = t.n;
  o["H"] = gmat(t.H);
  o["X"] = gmat(t.X);
  o["Y"] = gmat(t.Y);
  return o;
}

GridRep grid_rep_in(const ojson& j) {
  return make_grid_rep(require_int(j, "N"), require_int(j, "g"),
                       require_int(j, "h"), lmat_in(j, "c"));
}

GridHeisElement grid_elem_in(const GridRep& rep, const ojson& j) {
  return make_grid_element(rep, lmat_in(j, "lambda"), lmat_in(j, "mu"),
                           lmat_in(j, "kappa"));
}

ThetaSpec theta_spec_in(const ojson& j) {
  return make_theta_spec(qmat_in(j, "S"), qmat_in(j, "c"),
                         require_int(j, "radius"));
}

/// Point fields are optional for theta evaluation: the default is the
/// distinguished point (i, 0) with one column.
JacobiPoint theta_point_in(const ojson& j, int m) {
  if (!j.contains("Z_re")) return jacobi_base_point(1, m);
  Matrix<Complex> z = zpair_in(j, "Z_re", "Z_im");
  Matrix<Complex> w = j.contains("W_re")
                          ? zpair_in(j, "W_re", "W_im")
                          : Matrix<Complex>(m, z.rows());
  return make_jacobi_point(make_siegel_point(z), w);
}

double jacobi_dist(const JacobiElement& a, const JacobiElement& b) {
  double r = max_abs_diff(a.M.M, b.M.M);
  r = std::max(r, max_abs_diff(a.heis.lambda, b.heis.lambda));
  r = std::max(r, max_abs_diff(a.heis.mu, b.heis.mu));
  return std::max(r, max_abs_diff(a.heis.kappa, b.heis.kappa));
}

ojson coef_json(const GaussianRational& z) {
  if (z.im == Rational(0)) return rational_to_json(z.re);
  return gaussian_to_json(z);
}

ojson identity_json(const TableIdentity& id, bool with_pass) {
  ojson o;
  o["lhs"] = ojson::array({id.lhs1, id.lhs2});
  ojson rhs = ojson::array();
  for (const BracketTerm& t : id.rhs) {
    ojson term;
    term["coef"] = coef_json(t.coef);
    term["gen"] = t.gen;
    rhs.push_back(std::move(term));
  }
  o["rhs"] = std::move(rhs);
  if (with_pass) o["pass"] = id.pass;
  return o;
}

// --- linalg ----------------------------------------------------------------

ojson op_linalg_pfaffian(const ojson& j) {
  ojson out;
  out["result"] = rational_to_json(pfaffian(qmat_in(j, "A")));
  return out;
}

ojson op_linalg_exp(const ojson& j) {
  no_exact(j, "linalg exp");
  ojson out;
  out["result"] = dmat(matrix_exp(dmat_in(j, "A")));
  return out;
}

ojson op_linalg_logspd(const ojson& j) {
  no_exact(j, "linalg logspd");
  ojson out;
  out["result"] = dmat(matrix_log_spd(dmat_in(j, "A")));
  return out;
}

ojson op_linalg_jordan(const ojson& j) {
  no_exact(j, "linalg jordan");
  JordanParts p = jordan_decompose(dmat_in(j, "A"));
  ojson res;
  res["hyperbolic"] = dmat(p.hyperbolic);
  res["elliptic"] = dmat(p.elliptic);
  res["nilpotent"] = dmat(p.nilpotent);
  ojson out;
  out["result"] = std::move(res);
  return out;
}

ojson op_linalg_classify(const ojson& j) {
  no_exact(j, "linalg classify");
  double tol = field_double(j, "tol", 1e-9);
  ojson out;
  out["result"] = to_string(classify_element(dmat_in(j, "A"), tol));
  return out;
}

// --- symplectic ------------------------------------------------------------

ojson op_symp_involution(const ojson& j) {
  no_exact(j, "symp involution");
  ojson out;
  out["result"] = symp_out(cartan_involution(symp_in(j)));
  return out;
}

ojson op_symp_cartan(const ojson& j) {
  no_exact(j, "symp cartan");
  SymplecticElement g = symp_in(j);
  CartanFactors f = cartan_decompose(g);
  double tol = field_double(j, "tol", 1e-9);
  double residual = max_abs_diff(f.k.M * matrix_exp(f.X), g.M);
  ojson res;
  res["k"] = symp_out(f.k);
  res["X"] = dmat(f.X);
  ojson out;
  out["result"] = std::move(res);
  out["residual"] = double_to_json(residual);
  out["tolerance"] = double_to_json(tol);
  out["pass"] = residual <= tol;
  return out;
}

ojson op_symp_moebius(const ojson& j) {
  no_exact(j, "symp moebius");
  SymplecticElement g = symp_in(j);
  SiegelPoint z = make_siegel_point(zpair_in(j, "Z_re", "Z_im"));
  SiegelPoint moved = moebius_action(g, z);
  ojson res;
  zpair_out(res, "Z_re", "Z_im", moved.Z);
  ojson out;
  out["result"] = std::move(res);
  return out;
}

ojson op_symp_iwasawa(const ojson& j) {
  no_exact(j, "symp iwasawa");
  SymplecticElement g = symp_in(j);
  IwasawaFactors f = iwasawa_decompose(g);
  double tol = field_double(j, "tol", 1e-9);
  double residual = max_abs_diff(iwasawa_reconstruct(f), g.M);
  bool valid = is_unit_upper_triangular(f.A, tol) &&
               is_positive_diagonal(f.H, tol) && is_orthogonal(f.k.M, tol);
  ojson res;
  res["A"] = dmat(f.A);
  res["B"] = dmat(f.B);
  res["H"] = dmat(f.H);
  res["k"] = symp_out(f.k);
  ojson out;
  out["result"] = std::move(res);
  out["residual"] = double_to_json(residual);
  out["tolerance"] = double_to_json(tol);
  out["pass"] = residual <= tol && valid;
  return out;
}

ojson op_symp_renormalize(const ojson& j) {
  no_exact(j, "symp renormalize");
  SymplecticElement r = renormalize(dmat_in(j, "M"));
  double tol = field_double(j, "tol", 1e-9);
  double residual = symplectic_residual(r.M);
  ojson out;
  out["result"] = symp_out(r);
  out["residual"] = double_to_json(residual);
  out["tolerance"] = double_to_json(tol);
  out["pass"] = residual <= tol;
  return out;
}

// --- heisenberg ------------------------------------------------------------

ojson op_heis_mul(const ojson& j) {
  ojson out;
  if (exact_mode(j)) {
    out["result"] = heis_out(
        heis_mul(heis_in_q(require_field(j, "x")), heis_in_q(require_field(j, "y"))));
  } else {
    out["result"] = heis_out(
        heis_mul(heis_in_d(require_field(j, "x")), heis_in_d(require_field(j, "y"))));
  }
  return out;
}

ojson op_heis_inv(const ojson& j) {
  ojson out;
  if (exact_mode(j))
    out["result"] = heis_out(heis_inv(heis_in_q(require_field(j, "x"))));
  else
    out["result"] = heis_out(heis_inv(heis_in_d(require_field(j, "x"))));
  return out;
}

template <class S>
HeisT<S> bracket_parts_to_product(const HeisParts<S>& p) {
  if (!sym_ok(p.kappa, 1e-12))
    throw DomainError("bracket central block must be symmetric");
  return make_heis<S>(p.g, p.h, p.lambda, p.mu,
                      p.kappa - p.mu * p.lambda.transpose());
}

ojson op_heis_bracket(const ojson& j) {
  ojson out;
  if (exact_mode(j))
    out["result"] =
        heis_out(bracket_parts_to_product(heis_parts_q(require_field(j, "x"))));
  else
    out["result"] =
        heis_out(bracket_parts_to_product(heis_parts_d(require_field(j, "x"))));
  return out;
}

template <class S>
ojson diamond_common(const HeisParts<S>& x, const HeisParts<S>& y) {
  if (!sym_ok(x.kappa, 1e-12) || !sym_ok(y.kappa, 1e-12))
    throw DomainError("bracket central block must be symmetric");
  HeisT<S> xe{x.g, x.h, x.lambda, x.mu, x.kappa};
  HeisT<S> ye{y.g, y.h, y.lambda, y.mu, y.kappa};
  ojson out;
  out["result"] = heis_out(diamond_mul(xe, ye));
  return out;
}

ojson op_heis_diamond(const ojson& j) {
  if (exact_mode(j))
    return diamond_common(heis_parts_q(require_field(j, "x")),
                          heis_parts_q(require_field(j, "y")));
  return diamond_common(heis_parts_d(require_field(j, "x")),
                        heis_parts_d(require_field(j, "y")));
}

ojson op_heis_embed(const ojson& j) {
  ojson res;
  if (exact_mode(j)) {
    HeisElementQ x = heis_in_q(require_field(j, "x"));
    res["n"] = x.g + x.h;
    res["M"] = qmat(heis_embed(x));
  } else {
    HeisElement x = heis_in_d(require_field(j, "x"));
    res["n"] = x.g + x.h;
    res["M"] = dmat(heis_embed(x));
  }
  ojson out;
  out["result"] = std::move(res);
  return out;
}

ojson op_heis_orbitclass(const ojson& j) {
  DualOrbitClass cls =
      exact_mode(j)
          ? classify_dual_orbit(qmat_in(j, "mu_hat"), qmat_in(j, "kappa_hat"))
          : classify_dual_orbit(dmat_in(j, "mu_hat"), dmat_in(j, "kappa_hat"));
  ojson res;
  res["kind"] = to_string(cls.kind);
  res["stabilizer_dim"] = cls.stabilizer_dim;
  ojson out;
  out["result"] = std::move(res);
  return out;
}

ojson op_heis_mackey(const ojson& j) {
  ojson res;
  if (exact_mode(j)) {
    auto [k, s] = mackey_split(heis_in_q(require_field(j, "x")));
    res["k_part"] = heis_out(k);
    res["s_part"] = heis_out(s);
  } else {
    auto [k, s] = mackey_split(heis_in_d(require_field(j, "x")));
    res["k_part"] = heis_out(k);
    res["s_part"] = heis_out(s);
  }
  ojson out;
  out["result"] = std::move(res);
  return out;
}

ojson op_heis_pairing(const ojson& j) {
  ojson out;
  if (exact_mode(j))
    out["result"] = rational_to_json(heis_pairing(
        heis_dual_in_q(require_field(j, "F")), heis_lie_in_q(require_field(j, "X"))));
  else
    out["result"] = double_to_json(heis_pairing(
        heis_dual_in_d(require_field(j, "F")), heis_lie_in_d(require_field(j, "X"))));
  return out;
}

ojson op_heis_coadjoint(const ojson& j) {
  ojson out;
  if (exact_mode(j))
    out["result"] = heis_dual_out(heis_coadjoint(
        heis_in_q(require_field(j, "x")), heis_dual_in_q(require_field(j, "F"))));
  else
    out["result"] = heis_dual_out(heis_coadjoint(
        heis_in_d(require_field(j, "x")), heis_dual_in_d(require_field(j, "F"))));
  return out;
}

ojson op_heis_bform(const ojson& j) {
  ojson out;
  if (exact_mode(j))
    out["result"] = rational_to_json(heis_bform(
        heis_dual_in_q(require_field(j, "F")), heis_lie_in_q(require_field(j, "X")),
        heis_lie_in_q(require_field(j, "Y"))));
  else
    out["result"] = double_to_json(heis_bform(
        heis_dual_in_d(require_field(j, "F")), heis_lie_in_d(require_field(j, "X")),
        heis_lie_in_d(require_field(j, "Y"))));
  return out;
}

ojson op_heis_radical(const ojson& j) {
  ojson basis = ojson::array();
  if (exact_mode(j)) {
    for (const HeisLieElementQ& x :
         heis_radical(heis_dual_in_q(require_field(j, "F"))))
      basis.push_back(heis_lie_out(x));
  } else {
    for (const HeisLieElement& x :
         heis_radical(heis_dual_in_d(require_field(j, "F"))))
      basis.push_back(heis_lie_out(x));
  }
  ojson res;
  res["dim"] = static_cast<int>(basis.size());
  res["basis"] = std::move(basis);
  ojson out;
  out["result"] = std::move(res);
  return out;
}

ojson op_heis_polarization(const ojson& j) {
  PolarizationReport rep =
      exact_mode(j)
          ? heis_polarization_check(qmat_in(j, "c"))
          : heis_polarization_check(dmat_in(j, "c"),
                                    field_double(j, "tol", 1e-10));
  ojson basis = ojson::array();
  for (const HeisLieElementQ& x : rep.basis) basis.push_back(heis_lie_out(x));
  ojson res;
  res["dim"] = rep.dim;
  res["isotropic"] = rep.isotropic;
  res["maximal"] = rep.maximal;
  res["basis"] = std::move(basis);
  ojson out;
  out["result"] = std::move(res);
  out["pass"] = rep.isotropic && rep.maximal;
  return out;
}

ojson op_heis_density(const ojson& j) {
  ojson out;
  if (exact_mode(j))
    out["result"] =
        rational_to_json(plancherel_density(heis_dual_in_q(require_field(j, "F"))));
  else
    out["result"] =
        double_to_json(plancherel_density(heis_dual_in_d(require_field(j, "F"))));
  return out;
}

// --- finite Schroedinger model --------------------------------------------

ojson op_rep_matrix(const ojson& j) {
  no_exact(j, "rep matrix");
  GridRep rep = grid_rep_in(j);
  Matrix<Complex> m = rep_matrix(rep, grid_elem_in(rep, require_field(j, "x")));
  ojson res;
  res["size"] = grid_dimension(rep);
  zpair_out(res, "matrix_re", "matrix_im", m);
  ojson out;
  out["result"] = std::move(res);
  return out;
}

ojson op_rep_commutant(const ojson& j) {
  no_exact(j, "rep commutant");
  ojson res;
  res["dimension"] = commutant_dimension(grid_rep_in(j));
  ojson out;
  out["result"] = std::move(res);
  return out;
}

ojson op_rep_trace(const ojson& j) {
  no_exact(j, "rep trace");
  GridRep rep = grid_rep_in(j);
  ojson out;
  out["result"] =
      complex_to_json(rep_trace(rep, grid_elem_in(rep, require_field(j, "x"))));
  return out;
}

// --- sl2 triples -----------------------------------------------------------

ojson op_sl2_basis(const ojson& j) {
  std::string which = field_str(j, "which", "standard");
  ojson out;
  if (which == "standard")
    out["result"] = sl2_out(standard_triple());
  else if (which == "normal")
    out["result"] = sl2_out(normal_triple());
  else
    throw ParseError("field 'which' must be 'standard' or 'normal'");
  return out;
}

ojson op_sl2_cayley(const ojson& j) {
  ojson out;
  out["result"] = sl2_out(cayley_transform(sl2_in(require_field(j, "t"))));
  return out;
}

ojson op_sl2_complete(const ojson& j) {
  AmbientKind ambient = ambient_from_string(field_str(j, "ambient", "sl"));
  ojson out;
  out["result"] = sl2_out(jacobson_morozov(qmat_in(j, "E"), ambient));
  return out;
}

ojson op_sl2_sekiguchi(const ojson& j) {
  Sl2Triple t = sl2_in(require_field(j, "t"));
  ojson res;
  res["image"] = gmat(sekiguchi_image(t));
  res["neutral"] = gmat(sekiguchi_neutral(t));
  ojson out;
  out["result"] = std::move(res);
  return out;
}

ojson op_sl2_class(const ojson& j) {
  Sl2Triple t = sl2_in(require_field(j, "t"));
  TripleFlavor flavor = triple_flavor(t);
  MorphismClass cls = morphism_class(t);
  ojson res;
  res["cayley"] = flavor.is_cayley;
  res["normal"] = flavor.is_normal;
  res["real_equivariant"] = cls.real_equivariant;
  res["theta_equivariant"] = cls.theta_equivariant;
  ojson out;
  out["result"] = std::move(res);
  return out;
}

// --- Jacobi group ----------------------------------------------------------

ojson op_jacobi_mul(const ojson& j) {
  ojson out;
  if (exact_mode(j))
    out["result"] = jacobi_out(jacobi_mul(jacobi_in_q(require_field(j, "x")),
                                          jacobi_in_q(require_field(j, "y"))));
  else
    out["result"] = jacobi_out(jacobi_mul(jacobi_in_d(require_field(j, "x")),
                                          jacobi_in_d(require_field(j, "y"))));
  return out;
}

ojson op_jacobi_inv(const ojson& j) {
  ojson out;
  if (exact_mode(j))
    out["result"] = jacobi_out(jacobi_inverse(jacobi_in_q(require_field(j, "x"))));
  else
    out["result"] = jacobi_out(jacobi_inverse(jacobi_in_d(require_field(j, "x"))));
  return out;
}

ojson op_jacobi_embed(const ojson& j) {
  ojson res;
  if (exact_mode(j)) {
    auto e = jacobi_embed(jacobi_in_q(require_field(j, "x")));
    res["n"] = e.n;
    res["M"] = qmat(e.M);
  } else {
    auto e = jacobi_embed(jacobi_in_d(require_field(j, "x")));
    res["n"] = e.n;
    res["M"] = dmat(e.M);
  }
  ojson out;
  out["result"] = std::move(res);
  return out;
}

ojson op_jacobi_act(const ojson& j) {
  no_exact(j, "jacobi act");
  JacobiElement g = jacobi_in_d(require_field(j, "g"));
  JacobiPoint pt = make_jacobi_point(
      make_siegel_point(zpair_in(j, "Z_re", "Z_im")), zpair_in(j, "W_re", "W_im"));
  JacobiPoint moved = jacobi_action(g, pt);
  ojson res;
  zpair_out(res, "Z_re", "Z_im", moved.Z.Z);
  zpair_out(res, "W_re", "W_im", moved.W);
  ojson out;
  out["result"] = std::move(res);
  return out;
}

ojson op_jacobi_qform(const ojson& j) {
  ojson out;
  if (exact_mode(j))
    out["result"] = qmat(q_form(qmat_in(j, "lambda"), qmat_in(j, "mu"),
                                qmat_in(j, "lambda2"), qmat_in(j, "mu2")));
  else
    out["result"] = dmat(q_form(dmat_in(j, "lambda"), dmat_in(j, "mu"),
                                dmat_in(j, "lambda2"), dmat_in(j, "mu2")));
  return out;
}

ojson op_jacobi_iwasawa(const ojson& j) {
  no_exact(j, "jacobi iwasawa");
  JacobiElement g = jacobi_in_d(require_field(j, "g"));
  bool central_in_compact = field_bool(j, "central_in_compact", false);
  JacobiIwasawa f = jacobi_iwasawa(g, central_in_compact);
  double tol = field_double(j, "tol", 1e-9);
  double residual =
      jacobi_dist(jacobi_mul(f.nil, jacobi_mul(f.diag, f.compact)), g);
  ojson res;
  res["A"] = dmat(f.A);
  res["B"] = dmat(f.B);
  res["H"] = dmat(f.H);
  res["k"] = dmat(f.k);
  res["lambda_star"] = dmat(f.lambda_star);
  res["mu_star"] = dmat(f.mu_star);
  res["kappa_star"] = dmat(f.kappa_star);
  res["nil"] = jacobi_out(f.nil);
  res["diag"] = jacobi_out(f.diag);
  res["compact"] = jacobi_out(f.compact);
  res["central_in_compact"] = f.central_in_compact;
  ojson out;
  out["result"] = std::move(res);
  out["residual"] = double_to_json(residual);
  out["tolerance"] = double_to_json(tol);
  out["pass"] = residual <= tol;
  return out;
}

ojson op_jacobi_differential(const ojson& j) {
  no_exact(j, "jacobi differential");
  JacobiElement g = jacobi_in_d(require_field(j, "g"));
  auto [dv, dw] = jacobi_differential(g, zpair_in(j, "v_re", "v_im"),
                                      zpair_in(j, "w_re", "w_im"));
  ojson res;
  zpair_out(res, "v_re", "v_im", dv);
  zpair_out(res, "w_re", "w_im", dw);
  ojson out;
  out["result"] = std::move(res);
  return out;
}

ojson op_jacobi_table(const ojson& j) {
  int n = require_int(j, "n");
  int m = require_int(j, "m");
  bool verify = field_bool(j, "verify", false);
  CommutationReport rep = verify_commutation_table(n, m);
  ojson real = ojson::array(), complex_ids = ojson::array();
  for (const TableIdentity& id : rep.real_identities)
    real.push_back(identity_json(id, verify));
  for (const TableIdentity& id : rep.complex_identities)
    complex_ids.push_back(identity_json(id, verify));
  ojson res;
  res["n"] = rep.n;
  res["m"] = rep.m;
  res["real"] = std::move(real);
  res["complex"] = std::move(complex_ids);
  ojson out;
  if (!verify) {
    out["result"] = std::move(res);
    return out;
  }
  res["real_failed"] = rep.real_failed;
  res["complex_failed"] = rep.complex_failed;
  res["stabilizer_closed"] = rep.stabilizer_closed;
  res["stabilizer_moves_transverse"] = rep.stabilizer_moves_transverse;
  res["translation_ideal"] = rep.translation_ideal;
  res["translation_closed"] = rep.translation_closed;
  res["witness_outside_stabilizer"] = rep.witness_outside_stabilizer;
  res["holomorphic_abelian"] = rep.holomorphic_abelian;
  res["antiholomorphic_abelian"] = rep.antiholomorphic_abelian;
  res["stabilizer_preserves_holomorphic"] = rep.stabilizer_preserves_holomorphic;
  res["stabilizer_preserves_antiholomorphic"] =
      rep.stabilizer_preserves_antiholomorphic;
  res["squares_vanish"] = rep.squares_vanish;
  out["result"] = std::move(res);
  out["pass"] = rep.all_pass();
  return out;
}

ojson op_jacobi_killing(const ojson& j) {
  KillingReport rep = killing_check(require_int(j, "n"));
  ojson res;
  res["n"] = rep.n;
  res["pairs"] = rep.pairs;
  res["all_match"] = rep.all_match;
  res["neutral_pairing"] = rational_to_json(rep.neutral_pairing);
  ojson out;
  out["result"] = std::move(res);
  out["pass"] = rep.all_match;
  return out;
}

ojson op_jacobi_cstruct(const ojson& j) {
  no_exact(j, "jacobi cstruct");
  TangentVector<double> v = make_tangent_vector(
      require_int(j, "n"), require_int(j, "m"), dmat_in(j, "Y"),
      dmat_in(j, "X"), dmat_in(j, "P"), dmat_in(j, "Q"));
  TangentVector<double> iv = complex_structure(v);
  ojson res;
  res["Y"] = dmat(iv.Y);
  res["X"] = dmat(iv.X);
  res["P"] = dmat(iv.P);
  res["Q"] = dmat(iv.Q);
  ojson out;
  out["result"] = std::move(res);
  return out;
}

ojson op_jacobi_pairing(const ojson& j) {
  ojson out;
  if (exact_mode(j))
    out["result"] = rational_to_json(
        jacobi_pairing(jacobi_dual_in_q(require_field(j, "F")),
                       jacobi_lie_in_q(require_field(j, "X"))));
  else
    out["result"] = double_to_json(
        jacobi_pairing(jacobi_dual_in_d(require_field(j, "F")),
                       jacobi_lie_in_d(require_field(j, "X"))));
  return out;
}

ojson op_jacobi_coadjoint(const ojson& j) {
  ojson out;
  if (exact_mode(j))
    out["result"] = jacobi_dual_out(
        jacobi_coadjoint(jacobi_in_q(require_field(j, "g")),
                         jacobi_dual_in_q(require_field(j, "F"))));
  else
    out["result"] = jacobi_dual_out(
        jacobi_coadjoint(jacobi_in_d(require_field(j, "g")),
                         jacobi_dual_in_d(require_field(j, "F"))));
  return out;
}

ojson op_jacobi_orbit(const ojson& j) {
  no_exact(j, "jacobi orbit");
  JacobiDual f = jacobi_dual_in_d(require_field(j, "F"));
  OrbitFamilySpec fam;
  fam.family = require_str(j, "family");
  fam.h = field_double(j, "h", 0.0);
  fam.mass = field_double(j, "mass", 0.0);
  fam.alpha = field_double(j, "alpha", 0.0);
  fam.k = field_double(j, "k", 0.0);
  double tol = field_double(j, "tol", 1e-9);
  OrbitMembership mem = check_orbit_membership(orbit_coefficients(f), fam, tol);
  ojson res;
  res["residual"] = double_to_json(mem.residual);
  res["side_ok"] = mem.side_ok;
  res["member"] = mem.member;
  res["note"] = mem.note;
  ojson out;
  out["result"] = std::move(res);
  out["residual"] = double_to_json(mem.residual);
  out["tolerance"] = double_to_json(tol);
  out["pass"] = mem.member;
  return out;
}

ojson op_jacobi_minorbit(const ojson& j) {
  no_exact(j, "jacobi minorbit");
  double residual = minimal_orbit_residual(
      jacobi_dual_in_d(require_field(j, "F")), dmat_in(j, "delta"));
  double tol = field_double(j, "tol", 1e-9);
  ojson out;
  out["result"] = double_to_json(residual);
  out["residual"] = double_to_json(residual);
  out["tolerance"] = double_to_json(tol);
  out["pass"] = residual <= tol;
  return out;
}

// --- theta series ----------------------------------------------------------

ojson op_theta_eval(const ojson& j) {
  no_exact(j, "theta eval");
  ThetaSpec spec = theta_spec_in(j);
  JacobiPoint pt = theta_point_in(j, theta_index(spec).rows());
  double tol = field_double(j, "tol", 1e-9);
  ThetaResult r = theta_eval(spec, pt, tol);
  ojson res;
  res["value"] = complex_to_json(r.value);
  res["tail_bound"] = std::isfinite(r.tail_bound)
                          ? double_to_json(r.tail_bound)
                          : ojson("inf");
  res["tail_ok"] = r.tail_ok;
  ojson out;
  out["result"] = std::move(res);
  return out;
}

ojson op_theta_invariance(const ojson& j) {
  no_exact(j, "theta invariance");
  ThetaSpec spec = theta_spec_in(j);
  JacobiElement g = jacobi_in_d(require_field(j, "g"));
  double tol = field_double(j, "tol", 1e-6);
  InvarianceReport rep = theta_slash_invariance(spec, g, tol);
  ojson res;
  res["residual"] = double_to_json(rep.residual);
  res["tail_bound"] = std::isfinite(rep.tail_bound)
                          ? double_to_json(rep.tail_bound)
                          : ojson("inf");
  res["points"] = rep.points;
  res["tail_ok"] = rep.tail_ok;
  ojson out;
  out["result"] = std::move(res);
  out["residual"] = double_to_json(rep.residual);
  out["tolerance"] = double_to_json(rep.tolerance);
  out["pass"] = rep.pass;
  return out;
}

ojson op_theta_fourier(const ojson& j) {
  no_exact(j, "theta fourier");
  ThetaSpec spec = theta_spec_in(j);
  Rational t = rational_from_json(require_field(j, "T"));
  long r = require_long(j, "R");
  double y = field_double(j, "Y", 1.0);
  double v = field_double(j, "V", 1.0);
  int grid = field_int(j, "grid", 128);
  double tol = field_double(j, "tol", 1e-9);
  PointFunction f = [&spec, tol](const JacobiPoint& pt) {
    return theta_eval(spec, pt, tol).value;
  };
  ojson out;
  out["result"] = complex_to_json(fourier_coefficient(f, t, r, y, v, grid));
  return out;
}

// --- table -----------------------------------------------------------------

const std::map<std::string, Handler>& table() {
  static const std::map<std::string, Handler> t = {
      {"linalg pfaffian", op_linalg_pfaffian},
      {"linalg exp", op_linalg_exp},
      {"linalg logspd", op_linalg_logspd},
      {"linalg jordan", op_linalg_jordan},
      {"linalg classify", op_linalg_classify},
      {"symp involution", op_symp_involution},
      {"symp cartan", op_symp_cartan},
      {"symp moebius", op_symp_moebius},
      {"symp iwasawa", op_symp_iwasawa},
      {"symp renormalize", op_symp_renormalize},
      {"heis mul", op_heis_mul},
      {"heis inv", op_heis_inv},
      {"heis bracket", op_heis_bracket},
      {"heis diamond", op_heis_diamond},
      {"heis embed", op_heis_embed},
      {"heis orbitclass", op_heis_orbitclass},
      {"heis mackey", op_heis_mackey},
      {"heis pairing", op_heis_pairing},
      {"heis coadjoint", op_heis_coadjoint},
      {"heis bform", op_heis_bform},
      {"heis radical", op_heis_radical},
      {"heis polarization", op_heis_polarization},
      {"heis density", op_heis_density},
      {"rep matrix", op_rep_matrix},
      {"rep commutant", op_rep_commutant},
      {"rep trace", op_rep_trace},
      {"sl2 basis", op_sl2_basis},
      {"sl2 cayley", op_sl2_cayley},
      {"sl2 complete", op_sl2_complete},
      {"sl2 sekiguchi", op_sl2_sekiguchi},
      {"sl2 class", op_sl2_class},
      {"jacobi mul", op_jacobi_mul},
      {"jacobi inv", op_jacobi_inv},
      {"jacobi embed", op_jacobi_embed},
      {"jacobi act", op_jacobi_act},
      {"jacobi qform", op_jacobi_qform},
      {"jacobi iwasawa", op_jacobi_iwasawa},
      {"jacobi differential", op_jacobi_differential},
      {"jacobi table", op_jacobi_table},
      {"jacobi killing", op_jacobi_killing},
      {"jacobi cstruct", op_jacobi_cstruct},
      {"jacobi pairing", op_jacobi_pairing},
      {"jacobi coadjoint", op_jacobi_coadjoint},
      {"jacobi orbit", op_jacobi_orbit},
      {"jacobi minorbit", op_jacobi_minorbit},
      {"orbit check", op_jacobi_orbit},
      {"theta eval", op_theta_eval},
      {"theta invariance", op_theta_invariance},
      {"theta fourier", op_theta_fourier},
  };
  return t;
}

}  // namespace

ojson run_op(const std::string& op, const ojson& request) {
  const auto& t = table();
  auto it = t.find(op);
  if (it == t.end()) throw UnknownOpError("unknown operation '" + op + "'");
  if (!request.is_object())
    throw ParseError("request must be a JSON object");
  ojson body = it->second(request);
  ojson resp;
  resp["op"] = op;
  resp["inputs"] = request;
  for (auto& [key, value] : body.items()) resp[key] = std::move(value);
  return resp;
}

const std::vector<std::string>& op_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, handler] : table()) v.push_back(name);
    return v;
  }();
  return names;
}

bool has_op(const std::string& op) { return table().count(op) != 0; }

}  // namespace orbitkit
