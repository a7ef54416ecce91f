#include "orbitkit/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace orbitkit {

namespace {

template <class S>
Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> to_eigen(const Matrix<S>& a) {
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> m(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

template <class S>
Matrix<S> from_eigen(const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& m) {
  Matrix<S> a(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) a(i, j) = m(i, j);
  return a;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

Rational pfaffian(const Matrix<Rational>& a) {
  if (!a.is_square()) throw DomainError("pfaffian requires a square matrix");
  int n = a.rows();
  if (n % 2 != 0) throw DomainError("pfaffian requires even dimension");
  for (int i = 0; i < n; ++i) {
    if (a(i, i) != 0) throw DomainError("matrix is not skew-symmetric");
    for (int j = i + 1; j < n; ++j)
      if (a(i, j) != -a(j, i)) throw DomainError("matrix is not skew-symmetric");
  }
  if (n == 0) return Rational(1);

  // Skew-symmetric elimination by congruence with unit shears; each
  // congruence preserves the pfaffian, each row/column swap flips its sign.
  Matrix<Rational> m = a;
  Rational sign(1);
  Rational pf(1);
  for (int i = 0; i + 1 < n; i += 2) {
    int p = -1;
    for (int c = i + 1; c < n; ++c)
      if (m(i, c) != 0) { p = c; break; }
    if (p < 0) return Rational(0);  // row i pairs with nothing: pf vanishes
    if (p != i + 1) {
      for (int c = 0; c < n; ++c) std::swap(m(p, c), m(i + 1, c));
      for (int r = 0; r < n; ++r) std::swap(m(r, p), m(r, i + 1));
      sign = -sign;
    }
    Rational piv = m(i, i + 1);
    pf *= piv;
    for (int r = i + 2; r < n; ++r) {
      // Zero m(i, r) using row/column i+1.
      if (m(i, r) != 0) {
        Rational f = -m(i, r) / piv;
        for (int c = 0; c < n; ++c) m(r, c) += f * m(i + 1, c);
        for (int c = 0; c < n; ++c) m(c, r) += f * m(c, i + 1);
      }
      // Zero m(i+1, r) using row/column i.
      if (m(i + 1, r) != 0) {
        Rational f = m(i + 1, r) / piv;
        for (int c = 0; c < n; ++c) m(r, c) += f * m(i, c);
        for (int c = 0; c < n; ++c) m(c, r) += f * m(c, i);
      }
    }
  }
  return sign * pf;
}

namespace {

template <class S>
Matrix<S> matrix_exp_impl(const Matrix<S>& a) {
  if (!a.is_square()) throw DomainError("matrix exponential requires a square matrix");
  int n = a.rows();
  double norm = 0.0;
  for (const S& v : a.data()) norm = std::max(norm, scalar_traits<S>::abs_approx(v));
  norm *= n;  // cheap upper bound for the operator norm
  int s = 0;
  while (norm > 0.25 && s < 60) {
    norm *= 0.5;
    ++s;
  }
  S half = scalar_traits<S>::one();
  double scale = std::ldexp(1.0, -s);
  Matrix<S> b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = a(i, j) * (half * scale);
  // Taylor series in Horner form; the scaled norm keeps truncation error
  // far below double rounding.
  const int kTerms = 30;
  Matrix<S> p = Matrix<S>::identity(n);
  for (int k = kTerms; k >= 1; --k) {
    Matrix<S> bp = b * p;
    double inv = 1.0 / k;
    for (S& v : bp.data()) v = v * (half * inv);
    p = Matrix<S>::identity(n) + bp;
  }
  for (int k = 0; k < s; ++k) p = p * p;
  return p;
}

}  // namespace

Matrix<double> matrix_exp(const Matrix<double>& a) { return matrix_exp_impl(a); }
Matrix<Complex> matrix_exp(const Matrix<Complex>& a) { return matrix_exp_impl(a); }

Matrix<double> matrix_log_spd(const Matrix<double>& a) {
  if (!a.is_square()) throw DomainError("matrix logarithm requires a square matrix");
  double scale = std::max(1.0, max_abs(a));
  if (max_abs_diff(a, a.transpose()) > 1e-9 * scale)
    throw DomainError("matrix is not symmetric");
  Eigen::MatrixXd m = to_eigen(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i) <= 0.0)
      throw DomainError("matrix is not positive definite: eigenvalue " +
                        format_double(ev(i)));
  Eigen::MatrixXd lg =
      es.eigenvectors() * ev.array().log().matrix().asDiagonal() *
      es.eigenvectors().transpose();
  Matrix<double> r = from_eigen<double>(lg);
  // Symmetrize away rounding noise.
  for (int i = 0; i < r.rows(); ++i)
    for (int j = i + 1; j < r.cols(); ++j) {
      double v = 0.5 * (r(i, j) + r(j, i));
      r(i, j) = r(j, i) = v;
    }
  return r;
}

std::vector<Complex> eigenvalues(const Matrix<double>& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(a), false);
  std::vector<Complex> v(a.rows());
  for (int i = 0; i < a.rows(); ++i) v[i] = es.eigenvalues()(i);
  return v;
}

std::vector<double> symmetric_eigenvalues(const Matrix<double>& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(a),
                                                    Eigen::EigenvaluesOnly);
  std::vector<double> v(a.rows());
  for (int i = 0; i < a.rows(); ++i) v[i] = es.eigenvalues()(i);
  return v;
}

double operator_norm(const Matrix<double>& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
  return svd.singularValues()(0);
}

double operator_norm(const Matrix<Complex>& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
  return svd.singularValues()(0);
}

Matrix<double> solve_lu(const Matrix<double>& a, const Matrix<double>& b) {
  return from_eigen<double>(
      Eigen::MatrixXd(to_eigen(a).partialPivLu().solve(to_eigen(b))));
}

Matrix<Complex> solve_lu(const Matrix<Complex>& a, const Matrix<Complex>& b) {
  return from_eigen<Complex>(
      Eigen::MatrixXcd(to_eigen(a).partialPivLu().solve(to_eigen(b))));
}

Matrix<double> inverse_lu(const Matrix<double>& a) {
  return solve_lu(a, Matrix<double>::identity(a.rows()));
}

Matrix<Complex> inverse_lu(const Matrix<Complex>& a) {
  return solve_lu(a, Matrix<Complex>::identity(a.rows()));
}

double determinant_lu(const Matrix<double>& a) {
  return to_eigen(a).partialPivLu().determinant();
}

Complex determinant_lu(const Matrix<Complex>& a) {
  return to_eigen(a).partialPivLu().determinant();
}

int rank_numeric(const Matrix<double>& a, double tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++r;
  return r;
}

int rank_numeric(const Matrix<Complex>& a, double tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++r;
  return r;
}

// ---------------------------------------------------------------------------
// Additive spectral splitting
// ---------------------------------------------------------------------------

namespace {

struct Cluster {
  Complex rep;      // mean of member eigenvalues
  int multiplicity;
  double diameter;
};

std::vector<Cluster> cluster_eigenvalues(const std::vector<Complex>& ev,
                                         double radius) {
  int n = static_cast<int>(ev.size());
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  // Transitive closure of the "within radius" relation.
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    comp[i] = ncomp;
    std::vector<int> stack{i};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        if (comp[v] >= 0) continue;
        if (std::abs(ev[u] - ev[v]) <= radius) {
          comp[v] = ncomp;
          stack.push_back(v);
        }
      }
    }
    ++ncomp;
  }
  std::vector<Cluster> out(ncomp);
  for (int c = 0; c < ncomp; ++c) {
    Complex sum = 0.0;
    int count = 0;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) { sum += ev[i]; ++count; }
    out[c].rep = sum / static_cast<double>(count);
    out[c].multiplicity = count;
    double diam = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (comp[i] == c && comp[j] == c)
          diam = std::max(diam, std::abs(ev[i] - ev[j]));
    out[c].diameter = diam;
  }
  return out;
}

/// Divided-difference table for Hermite interpolation with repeated nodes.
/// nodes[k] are listed with multiplicity; values[k][d] is the d-th derivative
/// value at that node divided by d! is NOT pre-applied (plain derivatives).
struct HermiteData {
  std::vector<Complex> nodes;   // length = total multiplicity
  std::vector<Complex> coeffs;  // Newton-form coefficients
};

HermiteData hermite_newton(const std::vector<Cluster>& clusters,
                           const std::vector<std::vector<Complex>>& derivs) {
  std::vector<Complex> z;
  std::vector<Complex> f0;
  std::vector<int> which;  // cluster index per repeated node
  for (size_t c = 0; c < clusters.size(); ++c)
    for (int k = 0; k < clusters[c].multiplicity; ++k) {
      z.push_back(clusters[c].rep);
      which.push_back(static_cast<int>(c));
      f0.push_back(derivs[c][0]);
    }
  int n = static_cast<int>(z.size());
  // dd[i] holds the current column of the divided-difference table.
  std::vector<Complex> dd = f0;
  std::vector<Complex> coeffs(n);
  coeffs[0] = dd[0];
  std::vector<double> fact(n + 1, 1.0);
  for (int k = 1; k <= n; ++k) fact[k] = fact[k - 1] * k;
  std::vector<Complex> prev = dd;
  for (int order = 1; order < n; ++order) {
    std::vector<Complex> cur(n - order);
    for (int i = 0; i + order < n; ++i) {
      if (z[i] == z[i + order]) {
        int c = which[i];
        cur[i] = derivs[c][order] / fact[order];
      } else {
        cur[i] = (prev[i + 1] - prev[i]) / (z[i + order] - z[i]);
      }
    }
    coeffs[order] = cur[0];
    prev = cur;
  }
  return {z, coeffs};
}

Matrix<Complex> newton_eval(const HermiteData& h, const Matrix<Complex>& x) {
  int n = x.rows();
  int d = static_cast<int>(h.coeffs.size());
  Matrix<Complex> p(n, n);
  for (int i = 0; i < n; ++i) p(i, i) = h.coeffs[d - 1];
  for (int k = d - 2; k >= 0; --k) {
    Matrix<Complex> shifted = x;
    for (int i = 0; i < n; ++i) shifted(i, i) -= h.nodes[k];
    p = p * shifted;
    for (int i = 0; i < n; ++i) p(i, i) += h.coeffs[k];
  }
  return p;
}

struct SplitAttempt {
  bool ok = false;
  JordanParts parts;
};

SplitAttempt try_split(const Matrix<double>& a, const std::vector<Complex>& ev,
                       double radius, double tol) {
  int n = a.rows();
  std::vector<Cluster> clusters = cluster_eigenvalues(ev, radius);
  Matrix<Complex> ac = to_complex(a);
  Matrix<Complex> hyperc(n, n), ellipc(n, n);
  int total = 0;
  for (const Cluster& c : clusters) total += c.multiplicity;
  // Spectral projector for each cluster via Hermite interpolation of the
  // indicator function (value 1 on the cluster, 0 with flat derivatives
  // elsewhere).
  for (size_t c = 0; c < clusters.size(); ++c) {
    std::vector<std::vector<Complex>> derivs(clusters.size());
    for (size_t k = 0; k < clusters.size(); ++k)
      derivs[k].assign(total, Complex(0.0));
    derivs[c][0] = Complex(1.0);
    HermiteData h = hermite_newton(clusters, derivs);
    Matrix<Complex> proj = newton_eval(h, ac);
    Complex lam = clusters[c].rep;
    hyperc += Complex(lam.real(), 0.0) * proj;
    ellipc += Complex(0.0, lam.imag()) * proj;
  }
  double scale = std::max(1.0, max_abs(a));
  if (max_abs(imag_part(hyperc)) > tol * scale) return {};
  if (max_abs(imag_part(ellipc)) > tol * scale) return {};
  JordanParts parts;
  parts.hyperbolic = real_part(hyperc);
  parts.elliptic = real_part(ellipc);
  parts.nilpotent = a - parts.hyperbolic - parts.elliptic;
  // Certify the splitting a posteriori.
  if (max_abs(commutator(parts.hyperbolic, parts.elliptic)) > tol * scale) return {};
  if (max_abs(commutator(parts.hyperbolic, parts.nilpotent)) > tol * scale) return {};
  if (max_abs(commutator(parts.elliptic, parts.nilpotent)) > tol * scale) return {};
  Matrix<double> npow = parts.nilpotent;
  for (int k = 1; k < n; ++k) npow = npow * parts.nilpotent;
  double nscale = std::max(1.0, std::pow(std::max(1.0, max_abs(parts.nilpotent)),
                                         static_cast<double>(n)));
  if (max_abs(npow) > tol * nscale) return {};
  std::vector<Complex> hev = eigenvalues(parts.hyperbolic);
  for (const Complex& l : hev)
    if (std::fabs(l.imag()) > 1e-7 * scale) return {};
  return {true, parts};
}

}  // namespace

JordanParts jordan_decompose(const Matrix<double>& a) {
  if (!a.is_square()) throw DomainError("splitting requires a square matrix");
  int n = a.rows();
  if (n == 0) return {Matrix<double>(0, 0), Matrix<double>(0, 0), Matrix<double>(0, 0)};
  std::vector<Complex> ev = eigenvalues(a);
  const double kSeparation = 1e-8;
  // Eigenvalues merged only through chains longer than the separation
  // tolerance mark a genuinely ambiguous spectrum.
  std::vector<Cluster> strict = cluster_eigenvalues(ev, kSeparation);
  bool chained = false;
  for (const Cluster& c : strict)
    if (c.diameter > kSeparation) chained = true;
  if (chained) throw DomainError("ill-conditioned decomposition");

  SplitAttempt attempt = try_split(a, ev, kSeparation, 1e-9);
  if (attempt.ok) return attempt.parts;
  // Defective eigenvalues scatter numerically; retry with wider merges.
  double scale = std::max(1.0, max_abs(a));
  for (double radius : {1e-6 * scale, 1e-4 * scale, 1e-3 * scale}) {
    attempt = try_split(a, ev, radius, 1e-9);
    if (attempt.ok) return attempt.parts;
  }
  throw DomainError("ill-conditioned decomposition");
}

const char* to_string(ElementClass c) {
  switch (c) {
    case ElementClass::Nilpotent: return "nilpotent";
    case ElementClass::Hyperbolic: return "hyperbolic";
    case ElementClass::Elliptic: return "elliptic";
    case ElementClass::SemisimpleMixed: return "semisimple-mixed";
    case ElementClass::General: return "general";
  }
  return "?";
}

ElementClass classify_element(const Matrix<double>& a, double tol) {
  if (!a.is_square()) throw DomainError("classification requires a square matrix");
  int n = a.rows();
  if (n == 0) return ElementClass::Nilpotent;
  double scale = std::max(1.0, max_abs(a));
  // Nilpotency via the n-th power.
  Matrix<double> p = a;
  for (int k = 1; k < n; ++k) p = p * a;
  double pscale = std::max(1.0, std::pow(scale, static_cast<double>(n)));
  if (max_abs(p) <= tol * pscale) return ElementClass::Nilpotent;

  std::vector<Complex> ev = eigenvalues(a);
  std::vector<Cluster> clusters = cluster_eigenvalues(ev, std::max(tol, 1e-8) * scale);
  bool semisimple = true;
  Matrix<Complex> ac = to_complex(a);
  for (const Cluster& c : clusters) {
    Matrix<Complex> shifted = ac;
    for (int i = 0; i < n; ++i) shifted(i, i) -= c.rep;
    // Semisimple in this cluster iff the eigenspace has full multiplicity.
    int r = rank_numeric(shifted, std::max(tol, 1e-8) * scale * n);
    if (r > n - c.multiplicity) { semisimple = false; break; }
  }
  bool all_real = true, all_imag = true;
  for (const Complex& l : ev) {
    if (std::fabs(l.imag()) > tol * scale) all_real = false;
    if (std::fabs(l.real()) > tol * scale) all_imag = false;
  }
  if (semisimple) {
    if (all_real) return ElementClass::Hyperbolic;
    if (all_imag) return ElementClass::Elliptic;
    return ElementClass::SemisimpleMixed;
  }
  return ElementClass::General;
}

}  // namespace orbitkit
