#pragma once

#include <json.hpp>

#include <string>
#include <variant>

#include "tpflow/electrical.hpp"
#include "tpflow/matrix.hpp"
#include "tpflow/plucker.hpp"

namespace tpflow {

using Json = nlohmann::ordered_json;

/// Matrix with its scalar backend tag, as read from the wire format
/// {"rows": r, "cols": c, "data": [[...]], "scalar": "rational"|"float"}.
/// Rational entries are "p/q" strings.
struct MatrixValue {
  std::variant<Matrix<Rat>, Matrix<double>> value;

  bool is_rational() const { return std::holds_alternative<Matrix<Rat>>(value); }
  const Matrix<Rat>& rational() const { return std::get<Matrix<Rat>>(value); }
  const Matrix<double>& real() const { return std::get<Matrix<double>>(value); }
  Matrix<double> as_real() const {
    return is_rational() ? to_double_matrix(rational()) : real();
  }
};

MatrixValue matrix_from_json(const Json& j);
Json matrix_to_json(const Matrix<Rat>& m);
Json matrix_to_json(const Matrix<double>& m);

struct PluckerValue {
  std::variant<PluckerVector<Rat>, PluckerVector<double>> value;

  bool is_rational() const { return std::holds_alternative<PluckerVector<Rat>>(value); }
  const PluckerVector<Rat>& rational() const { return std::get<PluckerVector<Rat>>(value); }
  const PluckerVector<double>& real() const { return std::get<PluckerVector<double>>(value); }
};

/// {"k": k, "n": n, "coords": {"1,2": ...}}; rational values as strings,
/// float values as numbers. Keys must be sorted subsets; errors name the
/// offending key.
PluckerValue plucker_from_json(const Json& j);
Json plucker_to_json(const PluckerVector<Rat>& p);
Json plucker_to_json(const PluckerVector<double>& p);

/// {"boundary": [ids], "edges": [[u, v, "c"], ...]} with rational
/// conductances as strings.
ResistorNetwork network_from_json(const Json& j);
Json network_to_json(const ResistorNetwork& net);

/// Reads a JSON document from a file path, or from stdin when path is "-".
Json read_json_input(const std::string& path);

}  // namespace tpflow
