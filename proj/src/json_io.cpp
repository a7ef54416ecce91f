#include "orbitkit/json_io.hpp"

#include <cmath>

namespace orbitkit {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

void require_rectangular(const ojson& j) {
  if (!j.is_array() || j.empty()) bad("matrix must be a non-empty array of rows");
  size_t cols = 0;
  bool first = true;
  for (const ojson& row : j) {
    if (!row.is_array()) bad("matrix row must be an array");
    if (first) {
      cols = row.size();
      first = false;
    } else if (row.size() != cols) {
      bad("matrix rows have unequal lengths");
    }
  }
  if (cols == 0) bad("matrix rows must be non-empty");
}

template <class S, class FromEntry>
Matrix<S> matrix_from(const ojson& j, FromEntry from_entry) {
  if (!j.is_array()) {  // bare scalar shorthand for a 1-by-1 matrix
    Matrix<S> m(1, 1);
    m(0, 0) = from_entry(j);
    return m;
  }
  require_rectangular(j);
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  Matrix<S> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) m(i, c) = from_entry(j[i][c]);
  return m;
}

template <class S, class ToEntry>
ojson matrix_to(const Matrix<S>& m, ToEntry to_entry) {
  ojson rows = ojson::array();
  for (int i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_entry(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Rational rational_from_json(const ojson& j) {
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) return rational_from_double(j.get<double>());
  bad("expected a rational (\"p/q\" string or integer)");
}

ojson rational_to_json(const Rational& r) { return rational_to_string(r); }

double double_from_json(const ojson& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return rational_from_string(j.get<std::string>()).get_d();
  bad("expected a real number");
}

ojson double_to_json(double v) {
  if (!std::isfinite(v)) bad("non-finite value in response");
  if (v == std::floor(v) && std::abs(v) <= 9.0e15)
    return static_cast<long long>(v);
  return v;
}

Complex complex_from_json(const ojson& j) {
  if (j.is_object()) {
    double re = j.contains("re") ? double_from_json(j.at("re")) : 0.0;
    double im = j.contains("im") ? double_from_json(j.at("im")) : 0.0;
    return {re, im};
  }
  return {double_from_json(j), 0.0};
}

ojson complex_to_json(const Complex& z) {
  ojson j;
  j["re"] = double_to_json(z.real());
  j["im"] = double_to_json(z.imag());
  return j;
}

GaussianRational gaussian_from_json(const ojson& j) {
  if (j.is_object()) {
    GaussianRational z;
    if (j.contains("re")) z.re = rational_from_json(j.at("re"));
    if (j.contains("im")) z.im = rational_from_json(j.at("im"));
    return z;
  }
  return GaussianRational(rational_from_json(j));
}

ojson gaussian_to_json(const GaussianRational& z) {
  ojson j;
  j["re"] = rational_to_json(z.re);
  j["im"] = rational_to_json(z.im);
  return j;
}

Matrix<Rational> rational_matrix_from_json(const ojson& j) {
  return matrix_from<Rational>(j, [](const ojson& e) { return rational_from_json(e); });
}

ojson rational_matrix_to_json(const Matrix<Rational>& m) {
  return matrix_to(m, [](const Rational& v) { return rational_to_json(v); });
}

Matrix<double> double_matrix_from_json(const ojson& j) {
  return matrix_from<double>(j, [](const ojson& e) { return double_from_json(e); });
}

ojson double_matrix_to_json(const Matrix<double>& m) {
  return matrix_to(m, [](double v) { return double_to_json(v); });
}

Matrix<Complex> complex_matrix_from_json(const ojson& j) {
  return matrix_from<Complex>(j, [](const ojson& e) { return complex_from_json(e); });
}

ojson complex_matrix_to_json(const Matrix<Complex>& m) {
  return matrix_to(m, [](const Complex& v) { return complex_to_json(v); });
}

Matrix<GaussianRational> gaussian_matrix_from_json(const ojson& j) {
  return matrix_from<GaussianRational>(
      j, [](const ojson& e) { return gaussian_from_json(e); });
}

ojson gaussian_matrix_to_json(const Matrix<GaussianRational>& m) {
  return matrix_to(m, [](const GaussianRational& v) { return gaussian_to_json(v); });
}

Matrix<long> long_matrix_from_json(const ojson& j) {
  return matrix_from<long>(j, [](const ojson& e) -> long {
    if (!e.is_number_integer()) bad("expected an integer entry");
    return e.get<long>();
  });
}

ojson long_matrix_to_json(const Matrix<long>& m) {
  return matrix_to(m, [](long v) { return ojson(v); });
}

const ojson& require_field(const ojson& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    bad(std::string("missing required field '") + name + "'");
  return j.at(name);
}

bool field_bool(const ojson& j, const char* name, bool fallback) {
  if (!j.is_object() || !j.contains(name)) return fallback;
  const ojson& v = j.at(name);
  if (!v.is_boolean()) bad(std::string("field '") + name + "' must be a boolean");
  return v.get<bool>();
}

double field_double(const ojson& j, const char* name, double fallback) {
  if (!j.is_object() || !j.contains(name)) return fallback;
  return double_from_json(j.at(name));
}

int field_int(const ojson& j, const char* name, int fallback) {
  if (!j.is_object() || !j.contains(name)) return fallback;
  const ojson& v = j.at(name);
  if (!v.is_number_integer()) bad(std::string("field '") + name + "' must be an integer");
  return v.get<int>();
}

int require_int(const ojson& j, const char* name) {
  const ojson& v = require_field(j, name);
  if (!v.is_number_integer()) bad(std::string("field '") + name + "' must be an integer");
  return v.get<int>();
}

}  // namespace orbitkit
