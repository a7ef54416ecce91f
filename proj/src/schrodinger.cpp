#include "orbitkit/schrodinger.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "orbitkit/linalg.hpp"

namespace orbitkit {

namespace {

long mod_reduce(long v, long n) { return ((v % n) + n) % n; }

Matrix<long> reduce(const Matrix<long>& m, long n) {
  Matrix<long> out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = mod_reduce(m(i, j), n);
  return out;
}

long det_mod(const Matrix<long>& c, long n) {
  // Exact integer determinant via rational elimination, then reduced.
  Matrix<Rational> q(c.rows(), c.cols());
  for (int i = 0; i < c.rows(); ++i)
    for (int j = 0; j < c.cols(); ++j) q(i, j) = Rational(c(i, j));
  Rational det = determinant_exact(q);
  long num = det.get_num().get_si();
  return mod_reduce(num, n);
}

void check_shape(const Matrix<long>& m, int rows, int cols,
                 const char* what) {
  if (m.rows() != rows || m.cols() != cols)
    throw DomainError(std::string(what) +
                      ": block shape does not match the grid dimensions");
}

/// Row-major lexicographic index of a grid point, most significant entry
/// first.
long point_index(const Matrix<long>& xi, long n) {
  long idx = 0;
  for (int i = 0; i < xi.rows(); ++i)
    for (int j = 0; j < xi.cols(); ++j) idx = idx * n + xi(i, j);
  return idx;
}

Matrix<long> point_from_index(long idx, int h, int g, long n) {
  Matrix<long> xi(h, g);
  for (int i = h - 1; i >= 0; --i)
    for (int j = g - 1; j >= 0; --j) {
      xi(i, j) = idx % n;
      idx /= n;
    }
  return xi;
}

/// Phase index of π(x) at grid point ξ:
/// σ(c(κ + µᵗλ)) + 2·Σ ξ⊙(cµ) mod N.
long phase_at(const GridRep& rep, const GridHeisElement& x,
              const Matrix<long>& xi) {
  Matrix<long> inner = x.kappa + x.mu * x.lambda.transpose();
  long base = 0;
  Matrix<long> ci = rep.c * inner;
  for (int i = 0; i < rep.h; ++i) base += ci(i, i);
  Matrix<long> w = rep.c * x.mu;
  long cross = 0;
  for (int i = 0; i < rep.h; ++i)
    for (int j = 0; j < rep.g; ++j) cross += xi(i, j) * w(i, j);
  return mod_reduce(base + 2 * cross, rep.N);
}

std::vector<Complex> unit_roots(int n) {
  std::vector<Complex> roots(n);
  for (int k = 0; k < n; ++k) {
    double t = 2.0 * M_PI * k / n;
    roots[k] = Complex(std::cos(t), std::sin(t));
  }
  return roots;
}

long checked_dimension(const GridRep& rep, long cap, const char* what) {
  long d = 1;
  for (int i = 0; i < rep.h * rep.g; ++i) {
    d *= rep.N;
    if (d > cap)
      throw DomainError(std::string(what) +
                        ": grid dimension exceeds the supported size");
  }
  return d;
}

}  // namespace

GridRep make_grid_rep(int N, int g, int h, const Matrix<long>& c) {
  if (N < 3 || N % 2 == 0)
    throw DomainError("modulus must be an odd integer >= 3");
  if (g <= 0 || h <= 0) throw DomainError("dimensions must be positive");
  check_shape(c, h, h, "central form");
  Matrix<long> cr = reduce(c, N);
  if (!(cr == cr.transpose()))
    throw DomainError("central form must be symmetric mod N");
  if (std::gcd(det_mod(cr, N), static_cast<long>(N)) != 1)
    throw DomainError("central form determinant must be invertible mod N");
  return {N, g, h, cr};
}

GridHeisElement make_grid_element(const GridRep& rep,
                                  const Matrix<long>& lambda,
                                  const Matrix<long>& mu,
                                  const Matrix<long>& kappa) {
  check_shape(lambda, rep.h, rep.g, "lambda");
  check_shape(mu, rep.h, rep.g, "mu");
  check_shape(kappa, rep.h, rep.h, "kappa");
  Matrix<long> kr = reduce(kappa, rep.N);
  if (!(kr == reduce(kr.transpose(), rep.N)))
    throw DomainError("kappa must be symmetric mod N");
  return {reduce(lambda, rep.N), reduce(mu, rep.N), kr};
}

GridHeisElement grid_mul(const GridRep& rep, const GridHeisElement& x,
                         const GridHeisElement& y) {
  Matrix<long> kappa = x.kappa + y.kappa + x.lambda * y.mu.transpose() -
                       x.mu * y.lambda.transpose();
  return {reduce(x.lambda + y.lambda, rep.N), reduce(x.mu + y.mu, rep.N),
          reduce(kappa, rep.N)};
}

GridHeisElement grid_inv(const GridRep& rep, const GridHeisElement& x) {
  Matrix<long> kappa = -x.kappa + x.lambda * x.mu.transpose() -
                       x.mu * x.lambda.transpose();
  return {reduce(-x.lambda, rep.N), reduce(-x.mu, rep.N),
          reduce(kappa, rep.N)};
}

long grid_dimension(const GridRep& rep) {
  return checked_dimension(rep, 1L << 40, "grid_dimension");
}

Matrix<Complex> rep_matrix(const GridRep& rep, const GridHeisElement& x) {
  long d = checked_dimension(rep, 4096, "rep_matrix");
  std::vector<Complex> roots = unit_roots(rep.N);
  Matrix<Complex> m(static_cast<int>(d), static_cast<int>(d));
  for (long row = 0; row < d; ++row) {
    Matrix<long> xi = point_from_index(row, rep.h, rep.g, rep.N);
    long col = point_index(reduce(xi + x.lambda, rep.N), rep.N);
    m(static_cast<int>(row), static_cast<int>(col)) =
        roots[phase_at(rep, x, xi)];
  }
  return m;
}

namespace {

/// Union-find with phase labels in Z/N: each entry stores its parent and
/// the phase offset of the entry relative to its parent.  Inconsistent
/// cycles kill the whole class (the entry is forced to zero).
struct PhasedUnionFind {
  std::vector<long> parent;
  std::vector<long> offset;  // phase of element relative to parent
  std::vector<bool> dead;
  long n_mod;

  PhasedUnionFind(long size, long n)
      : parent(size), offset(size, 0), dead(size, false), n_mod(n) {
    for (long i = 0; i < size; ++i) parent[i] = i;
  }

  // Returns (root, phase of v relative to root).
  std::pair<long, long> find(long v) {
    long root = v, ph = 0;
    while (parent[root] != root) {
      ph += offset[root];
      root = parent[root];
    }
    ph = mod_reduce(ph, n_mod);
    long cur = v, acc = ph;
    while (parent[cur] != cur) {
      long next = parent[cur];
      long saved = offset[cur];
      parent[cur] = root;
      offset[cur] = acc;
      acc = mod_reduce(acc - saved, n_mod);
      cur = next;
    }
    return {root, ph};
  }

  // Impose value(a) = ω^{delta}·value(b).
  void link(long a, long b, long delta) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) {
      if (mod_reduce(pa - pb, n_mod) != mod_reduce(delta, n_mod))
        dead[ra] = true;
      return;
    }
    // phase(a) = pa + phase(ra); want pa + phase(ra) = delta + pb + phase(rb).
    parent[ra] = rb;
    offset[ra] = mod_reduce(delta + pb - pa, n_mod);
    if (dead[ra]) dead[rb] = true;
  }
};

}  // namespace

int commutant_dimension(const GridRep& rep) {
  long d = checked_dimension(rep, 125, "commutant_dimension");
  std::vector<Matrix<long>> points(d);
  for (long i = 0; i < d; ++i)
    points[i] = point_from_index(i, rep.h, rep.g, rep.N);

  PhasedUnionFind uf(d * d, rep.N);
  // Unit generators: single-entry λ and single-entry µ.
  for (int which = 0; which < 2; ++which)
    for (int p = 0; p < rep.h; ++p)
      for (int q = 0; q < rep.g; ++q) {
        GridHeisElement gen{Matrix<long>(rep.h, rep.g),
                            Matrix<long>(rep.h, rep.g),
                            Matrix<long>(rep.h, rep.h)};
        (which == 0 ? gen.lambda : gen.mu)(p, q) = 1;
        // π(gen) M = M π(gen) forces
        // M[ξ][η] = ω^{p(ξ)−p(η)} M[ξ+λ][η+λ] for all ξ, η.
        for (long a = 0; a < d; ++a) {
          long pa = phase_at(rep, gen, points[a]);
          long sa = point_index(reduce(points[a] + gen.lambda, rep.N), rep.N);
          for (long b = 0; b < d; ++b) {
            long pb = phase_at(rep, gen, points[b]);
            long sb =
                point_index(reduce(points[b] + gen.lambda, rep.N), rep.N);
            uf.link(a * d + b, sa * d + sb, pa - pb);
          }
        }
      }
  int live = 0;
  for (long v = 0; v < d * d; ++v) {
    auto [root, ph] = uf.find(v);
    (void)ph;
    if (root == v && !uf.dead[root]) ++live;
  }
  return live;
}

Complex rep_trace(const GridRep& rep, const GridHeisElement& x) {
  Matrix<Complex> m = rep_matrix(rep, x);
  Complex t = 0.0;
  for (int i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

}  // namespace orbitkit
