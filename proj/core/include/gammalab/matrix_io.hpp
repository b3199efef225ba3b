#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "gammalab/linalg.hpp"

namespace gammalab {

/// Violation of the matrix JSON schema
/// { "n": int, "field": "real"|"complex", "re": [[...]], "im": [[...]] }
/// ("im" omitted when field is real).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

HermitianMatrix parse_matrix_json(const std::string& text);
HermitianMatrix read_matrix_json(std::istream& in);

std::string write_matrix_json(const HermitianMatrix& m);

}  // namespace gammalab
