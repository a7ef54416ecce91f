#include "orbitkit/jacobi_forms.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "orbitkit/linalg.hpp"
#include "orbitkit/symplectic.hpp"

namespace orbitkit {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_integral(const Rational& q) { return q.get_den() == 1; }

bool is_even_integer(const Rational& q) {
  return is_integral(q) && q.get_num() % 2 == 0;
}

/// Kronecker product with row-major pair index (a, i) -> a * inner + i.
Matrix<double> kron(const Matrix<double>& outer, const Matrix<double>& inner) {
  int p = outer.rows(), q = inner.rows();
  Matrix<double> out(p * q, p * q);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
          out(a * q + i, b * q + j) = outer(a, b) * inner(i, j);
  return out;
}

/// Lower-triangular factor M with t(M) M = G, eliminating from the last
/// index so that partial sums of squares follow the enumeration prefix.
Matrix<double> prefix_cholesky(const Matrix<double>& g) {
  int d = g.rows();
  Matrix<double> work = g;
  Matrix<double> m(d, d);
  for (int j = d - 1; j >= 0; --j) {
    double piv = work(j, j);
    if (piv <= 0.0) throw DomainError("theta form must be positive definite");
    double root = std::sqrt(piv);
    m(j, j) = root;
    for (int i = 0; i < j; ++i) m(j, i) = work(i, j) / root;
    for (int a = 0; a < j; ++a)
      for (int b = 0; b < j; ++b) work(a, b) -= m(j, a) * m(j, b);
  }
  return m;
}

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

/// Depth-first lexicographic walk over the integer box [-r, r]^d pruning
/// subtrees whose terms are all provably below the magnitude cutoff.
class LatticeSum {
 public:
  LatticeSum(const Matrix<double>& chol, const std::vector<double>& shift,
             double shift_norm2, const Matrix<double>& phase_form,
             const std::vector<double>& phase_lin, int radius, double cut)
      : m_(chol),
        s_(shift),
        s2_(shift_norm2),
        gx_(phase_form),
        lin_(phase_lin),
        r_(radius),
        cut_(cut),
        d_(chol.rows()),
        u_(chol.rows(), 0) {}

  void run() { descend(0, 0.0, 0.0); }

  Complex value() const { return {re_.sum, im_.sum}; }
  double kept() const { return kept_; }

 private:
  void descend(int j, double partial, double phase) {
    if (j == d_) {
      Complex term = std::exp(Complex(-kPi * (partial - s2_), kPi * phase));
      re_.add(term.real());
      im_.add(term.imag());
      kept_ += 1.0;
      return;
    }
    double cdot = s_[j];
    double cross = lin_[j];
    for (int l = 0; l < j; ++l) {
      cdot += m_(j, l) * u_[l];
      cross += 2.0 * gx_(j, l) * u_[l];
    }
    for (int t = -r_; t <= r_; ++t) {
      double v = m_(j, j) * t + cdot;
      double next = partial + v * v;
      if (next - s2_ > cut_) continue;
      u_[j] = t;
      descend(j + 1, next, phase + t * (gx_(j, j) * t + cross));
    }
  }

  const Matrix<double>& m_;
  const std::vector<double>& s_;
  double s2_;
  const Matrix<double>& gx_;
  const std::vector<double>& lin_;
  int r_;
  double cut_;
  int d_;
  std::vector<int> u_;
  KahanSum re_, im_;
  double kept_ = 0.0;
};

/// Geometric-series bound on the mass outside the enumeration box, using
/// the smallest eigenvalue of the positive part of the exponent and the
/// Euclidean size of its linear part.
double box_tail_bound(double sigma_min, double lin_norm, int radius, int d) {
  if (sigma_min <= 0.0) return HUGE_VAL;
  double t0 = radius + 1.0;
  if (2.0 * sigma_min * t0 <= lin_norm) return HUGE_VAL;
  auto shell = [&](double t) {
    double exponent = -kPi * (sigma_min * t * t - lin_norm * t);
    return 2.0 * d * std::pow(2.0 * t + 1.0, d - 1) * std::exp(exponent);
  };
  double ratio = std::pow((2.0 * t0 + 3.0) / (2.0 * t0 + 1.0), d - 1) *
                 std::exp(-kPi * (sigma_min * (2.0 * t0 + 1.0) - lin_norm));
  if (ratio >= 1.0) return HUGE_VAL;
  return shell(t0) / (1.0 - ratio);
}

Complex integer_power(Complex base, int k) {
  Complex out{1.0, 0.0};
  for (int i = 0; i < k; ++i) out *= base;
  for (int i = 0; i > k; --i) out /= base;
  return out;
}

}  // namespace

SlashContext make_slash_context(int n, int m, int k,
                                const Matrix<Rational>& index) {
  if (n < 1 || m < 1) throw DomainError("dimensions must be positive");
  if (index.rows() != m || index.cols() != m)
    throw DomainError("dimension mismatch between operands");
  if (index.transpose() != index)
    throw DomainError("index matrix must be symmetric");
  for (int i = 0; i < m; ++i) {
    if (!is_integral(index(i, i)))
      throw DomainError("index matrix must be half-integral with integral diagonal");
    for (int j = 0; j < m; ++j)
      if (!is_integral(Rational(2) * index(i, j)))
        throw DomainError("index matrix must be half-integral with integral diagonal");
  }
  std::vector<double> eigs = symmetric_eigenvalues(to_double(index));
  if (!eigs.empty() && eigs.front() < -1e-9)
    throw DomainError("index matrix must be positive semidefinite");
  return SlashContext{n, m, k, index};
}

Complex automorphy_factor(const SlashContext& ctx, const JacobiElement& g,
                          const JacobiPoint& pt) {
  int n = ctx.n, m = ctx.m;
  if (g.n() != n || g.m() != m || pt.Z.n != n || pt.W.rows() != m)
    throw DomainError("dimension mismatch between operands");
  Matrix<Complex> c = to_complex(g.M.M.block(n, 0, n, n));
  Matrix<Complex> d = to_complex(g.M.M.block(n, n, n, n));
  Matrix<Complex> den = c * pt.Z.Z + d;
  Complex det_den = determinant_lu(den);
  if (std::abs(det_den) < 1e-12)
    throw DomainError("action denominator is singular");

  Matrix<Complex> lam = to_complex(g.heis.lambda);
  Matrix<Complex> mu = to_complex(g.heis.mu);
  Matrix<Complex> kap = to_complex(g.heis.kappa);
  Matrix<Complex> idx = to_complex(to_double(ctx.index));

  Matrix<Complex> shifted = pt.W + lam * pt.Z.Z + mu;
  Matrix<Complex> den_inv_c = solve_lu(den, c);
  Complex quad = trace(shifted.transpose() * idx * shifted * den_inv_c);
  Matrix<Complex> central = lam * pt.Z.Z * lam.transpose() +
                            Complex(2.0) * (lam * pt.W.transpose()) + kap +
                            mu * lam.transpose();
  Complex cent = trace(idx * central);
  // One combined exponential: the two twists can have huge opposite
  // magnitudes whose separate evaluation would overflow to inf * 0.
  Complex twist = std::exp(Complex(0.0, -2.0 * kPi) * quad +
                           Complex(0.0, 2.0 * kPi) * cent);
  return twist * integer_power(det_den, -ctx.k);
}

Complex slash_apply(const SlashContext& ctx, const PointFunction& f,
                    const JacobiElement& g, const JacobiPoint& pt) {
  return automorphy_factor(ctx, g, pt) * f(jacobi_action(g, pt));
}

ThetaSpec make_theta_spec(const Matrix<Rational>& S, const Matrix<Rational>& c,
                          int radius) {
  if (S.rows() < 1 || c.cols() < 1)
    throw DomainError("dimensions must be positive");
  if (S.rows() != S.cols() || c.rows() != S.rows())
    throw DomainError("dimension mismatch between operands");
  if (S.rows() % 2 != 0) throw DomainError("theta form must have even rank");
  if (S.transpose() != S) throw DomainError("theta form must be symmetric");
  for (int i = 0; i < S.rows(); ++i)
    for (int j = 0; j < S.cols(); ++j)
      if (!is_integral(S(i, j))) throw DomainError("theta data must be integral");
  for (int i = 0; i < c.rows(); ++i)
    for (int j = 0; j < c.cols(); ++j)
      if (!is_integral(c(i, j))) throw DomainError("theta data must be integral");
  for (int i = 0; i < S.rows(); ++i)
    if (!is_even_integer(S(i, i)))
      throw DomainError("theta form must have even diagonal");
  std::vector<double> eigs = symmetric_eigenvalues(to_double(S));
  if (eigs.empty() || eigs.front() <= 0.0)
    throw DomainError("theta form must be positive definite");
  if (radius < 0) throw DomainError("truncation radius must be nonnegative");
  return ThetaSpec{S, c, radius};
}

Matrix<Rational> theta_index(const ThetaSpec& spec) {
  Matrix<Rational> prod = spec.c.transpose() * spec.S * spec.c;
  Matrix<Rational> half(prod.rows(), prod.cols());
  for (int i = 0; i < prod.rows(); ++i)
    for (int j = 0; j < prod.cols(); ++j)
      half(i, j) = prod(i, j) / Rational(2);
  return half;
}

int theta_weight(const ThetaSpec& spec) { return spec.S.rows() / 2; }

ThetaResult theta_eval(const ThetaSpec& spec, const JacobiPoint& pt,
                       double tol) {
  ThetaSpec checked = make_theta_spec(spec.S, spec.c, spec.radius);
  int rank = checked.S.rows();
  int n = pt.Z.n;
  int m = checked.c.cols();
  if (pt.W.rows() != m || pt.W.cols() != n)
    throw DomainError("dimension mismatch between operands");
  make_siegel_point(pt.Z.Z);

  Matrix<double> x(n, n), y(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      x(i, j) = pt.Z.Z(i, j).real();
      y(i, j) = pt.Z.Z(i, j).imag();
    }
  Matrix<double> s_d = to_double(checked.S);
  Matrix<double> c_d = to_double(checked.c);

  int d = rank * n;
  Matrix<double> g = kron(s_d, y);
  Matrix<double> gx = kron(s_d, x);
  Matrix<Complex> pair = to_complex(s_d * c_d) * pt.W;  // rank x n
  std::vector<double> lin_re(d), lin_im(d);
  for (int a = 0; a < rank; ++a)
    for (int i = 0; i < n; ++i) {
      lin_re[a * n + i] = 2.0 * pair(a, i).real();
      lin_im[a * n + i] = 2.0 * pair(a, i).imag();
    }

  Matrix<double> chol = prefix_cholesky(g);
  // Complete the square: exponent = |M u + s|^2 - |s|^2 with t(M) s = b/2.
  std::vector<double> shift(d, 0.0);
  for (int i = d - 1; i >= 0; --i) {
    double acc = lin_im[i] / 2.0;
    for (int j = i + 1; j < d; ++j) acc -= chol(j, i) * shift[j];
    shift[i] = acc / chol(i, i);
  }
  double shift_norm2 = 0.0;
  for (double v : shift) shift_norm2 += v * v;

  double cut = -std::log(kThetaPruneMagnitude) / kPi;
  LatticeSum walker(chol, shift, shift_norm2, gx, lin_re, checked.radius, cut);
  walker.run();

  double sigma_min = symmetric_eigenvalues(s_d).front() *
                     symmetric_eigenvalues(y).front();
  double lin_norm = 0.0;
  for (double v : lin_im) lin_norm += v * v;
  lin_norm = std::sqrt(lin_norm);
  double outside = box_tail_bound(sigma_min, lin_norm, checked.radius, d);
  double box_points = std::pow(2.0 * checked.radius + 1.0, d);
  double pruned = (box_points - walker.kept()) * kThetaPruneMagnitude;

  ThetaResult out;
  out.value = walker.value();
  out.tail_bound = outside + pruned;
  out.tail_ok = out.tail_bound <= tol;
  return out;
}

InvarianceReport theta_slash_invariance(const ThetaSpec& spec,
                                        const JacobiElement& g, double tol) {
  ThetaSpec checked = make_theta_spec(spec.S, spec.c, spec.radius);
  if (checked.c.cols() != 1 || g.n() != 1 || g.m() != 1)
    throw DomainError("the invariance grid is defined for the scalar case n = m = 1");
  bool inversion = max_abs(g.M.M.block(1, 0, 1, 1)) > 0.0;
  if (inversion) {
    Rational det = determinant_exact(checked.S);
    if (det != 1 && det != -1)
      throw DomainError("inversion requires a unimodular theta form");
  }
  SlashContext ctx =
      make_slash_context(1, 1, theta_weight(checked), theta_index(checked));

  const Complex grid[5] = {{0.0, 0.0},
                           {0.25, 0.0},
                           {0.0, 0.1},
                           {0.25, 0.1},
                           {-0.3, 0.05}};
  InvarianceReport rep;
  rep.tolerance = tol;
  rep.points = 5;
  for (const Complex& w : grid) {
    Matrix<Complex> z(1, 1), ww(1, 1);
    z(0, 0) = Complex(0.0, 1.0);
    ww(0, 0) = w;
    JacobiPoint pt{SiegelPoint{1, z}, ww};
    ThetaResult direct = theta_eval(checked, pt, tol);
    ThetaResult moved = theta_eval(checked, jacobi_action(g, pt), tol);
    Complex slashed = automorphy_factor(ctx, g, pt) * moved.value;
    rep.residual = std::max(rep.residual, std::abs(slashed - direct.value));
    rep.tail_bound = std::max(rep.tail_bound,
                              std::max(direct.tail_bound, moved.tail_bound));
  }
  rep.tail_ok = rep.tail_bound <= tol;
  rep.pass = rep.residual <= tol;
  return rep;
}

Complex fourier_coefficient(const PointFunction& f, const Rational& T, long R,
                            double Y, double V, int grid) {
  if (T < 0) throw DomainError("frequency must be nonnegative");
  if (!is_integral(Rational(2) * T))
    throw DomainError("frequency must be half-integral");
  if (grid < 64)
    throw DomainError("quadrature grid must be at least 64 points per axis");
  if (Y <= 0.0 || V <= 0.0)
    throw DomainError("quadrature offsets must be positive");

  double t_d = to_double(T);
  KahanSum re, im;
  for (int a = 0; a < grid; ++a) {
    double xx = static_cast<double>(a) / grid;
    for (int b = 0; b < grid; ++b) {
      double uu = static_cast<double>(b) / grid;
      Matrix<Complex> z(1, 1), w(1, 1);
      z(0, 0) = Complex(xx, Y);
      w(0, 0) = Complex(uu, V);
      JacobiPoint pt{SiegelPoint{1, z}, w};
      Complex val = f(pt) * std::exp(Complex(0.0, -2.0 * kPi) *
                                     Complex(t_d * xx + R * uu));
      re.add(val.real());
      im.add(val.imag());
    }
  }
  double count = static_cast<double>(grid) * grid;
  Complex mean{re.sum / count, im.sum / count};
  return mean * std::exp(2.0 * kPi * (t_d * Y + R * V));
}

}  // namespace orbitkit
