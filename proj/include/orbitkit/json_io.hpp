#pragma once

#include <json.hpp>

#include "orbitkit/matrix.hpp"

namespace orbitkit {

/// Order-preserving JSON document; all responses are built with it so output
/// bytes are deterministic.
using ojson = nlohmann::ordered_json;

// Scalars ------------------------------------------------------------------

/// Accepts "p/q" strings and plain JSON integers.
Rational rational_from_json(const ojson& j);
ojson rational_to_json(const Rational& r);

/// Accepts numbers, rational strings, and {"re":..,"im":..} with zero im.
double double_from_json(const ojson& j);

/// Accepts {"re":..,"im":..} objects and bare reals.
Complex complex_from_json(const ojson& j);
ojson complex_to_json(const Complex& z);

GaussianRational gaussian_from_json(const ojson& j);
ojson gaussian_to_json(const GaussianRational& z);

/// Emitted as a plain number when exactly representable, so float-mode
/// responses stay readable.
ojson double_to_json(double v);

// Matrices (nested row arrays; a bare scalar is accepted as 1-by-1) ---------

Matrix<Rational> rational_matrix_from_json(const ojson& j);
ojson rational_matrix_to_json(const Matrix<Rational>& m);

Matrix<double> double_matrix_from_json(const ojson& j);
ojson double_matrix_to_json(const Matrix<double>& m);

Matrix<Complex> complex_matrix_from_json(const ojson& j);
ojson complex_matrix_to_json(const Matrix<Complex>& m);

Matrix<GaussianRational> gaussian_matrix_from_json(const ojson& j);
ojson gaussian_matrix_to_json(const Matrix<GaussianRational>& m);

/// Integer matrix with range checks.
Matrix<long> long_matrix_from_json(const ojson& j);
ojson long_matrix_to_json(const Matrix<long>& m);

// Request helpers ----------------------------------------------------------

/// Fetches a required field, raising ParseError when absent.
const ojson& require_field(const ojson& j, const char* name);

bool field_bool(const ojson& j, const char* name, bool fallback);
double field_double(const ojson& j, const char* name, double fallback);
int field_int(const ojson& j, const char* name, int fallback);
int require_int(const ojson& j, const char* name);

}  // namespace orbitkit
