#pragma once

#include <string>
#include <vector>

#include "orbitkit/json_io.hpp"
#include "orbitkit/scalar.hpp"

namespace orbitkit {

/// Raised by run_op when the operation name is not in the table; the C API
/// and the CLI map it to their "unknown operation" status (64) instead of
/// the generic parse/domain codes.
struct UnknownOpError : ParseError {
  using ParseError::ParseError;
};

/// Executes the named operation on a JSON request and returns the response
/// document {"op":…, "inputs":…, "result":…} plus, for checking-style
/// operations, top-level "residual"/"tolerance"/"pass" fields.  Throws
/// ParseError for malformed requests, DomainError for precondition
/// violations, UnknownOpError for names outside the table.
ojson run_op(const std::string& op, const ojson& request);

/// Stable, sorted list of every operation name (aliases included).
const std::vector<std::string>& op_names();

bool has_op(const std::string& op);

}  // namespace orbitkit
