#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace orbitkit {

/// Exact rational scalar (arbitrary precision, always canonicalized).
using Rational = mpq_class;

/// Complex scalar backed by doubles.
using Complex = std::complex<double>;

/// Thrown when an input is syntactically or structurally malformed.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an input is well-formed but outside an operation's domain.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "p/q" (or a plain integer string) into a canonical rational.
inline Rational rational_from_string(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw ParseError("invalid rational literal: '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

/// Builds p/q in canonical form (the raw two-argument constructor does not
/// reduce the fraction).
inline Rational make_rational(long p, long q = 1) {
  if (q == 0) throw DomainError("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q", q>0.
inline std::string rational_to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Complex number with exact rational real and imaginary parts.
struct GaussianRational {
  Rational re, im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(const Rational& r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(int v) : re(v), im(0) {}              // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussianRational conj() const { return {re, -im}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n = b.re * b.re + b.im * b.im;
    if (n == 0) throw DomainError("division by zero");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
  GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
    return !(a == b);
  }
};

/// The exact imaginary unit.
inline GaussianRational gauss_i() { return {Rational(0), Rational(1)}; }

// ---------------------------------------------------------------------------
// Uniform scalar helpers used by the generic matrix code.
// ---------------------------------------------------------------------------

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_zero(double v) { return v == 0.0; }
  static double abs_approx(double v) { return std::fabs(v); }
  static double conj(double v) { return v; }
};

template <>
struct scalar_traits<Complex> {
  static constexpr bool exact = false;
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static bool is_zero(const Complex& v) { return v == Complex(0.0, 0.0); }
  static double abs_approx(const Complex& v) { return std::abs(v); }
  static Complex conj(const Complex& v) { return std::conj(v); }
};

template <>
struct scalar_traits<long> {
  static constexpr bool exact = true;
  static long zero() { return 0; }
  static long one() { return 1; }
  static bool is_zero(long v) { return v == 0; }
  static double abs_approx(long v) { return static_cast<double>(std::labs(v)); }
  static long conj(long v) { return v; }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& v) { return v == 0; }
  static double abs_approx(const Rational& v) { return std::fabs(v.get_d()); }
  static Rational conj(const Rational& v) { return v; }
};

template <>
struct scalar_traits<GaussianRational> {
  static constexpr bool exact = true;
  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return GaussianRational(1); }
  static bool is_zero(const GaussianRational& v) { return v.is_zero(); }
  static double abs_approx(const GaussianRational& v) {
    return std::hypot(v.re.get_d(), v.im.get_d());
  }
  static GaussianRational conj(const GaussianRational& v) { return v.conj(); }
};

/// Exact conversion: every double is a dyadic rational.
inline Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite value cannot be made exact");
  return mpq_class(v);
}

inline double to_double(const Rational& r) { return r.get_d(); }
inline Complex to_complex(const GaussianRational& z) {
  return {z.re.get_d(), z.im.get_d()};
}

}  // namespace orbitkit
