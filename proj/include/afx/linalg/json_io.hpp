#pragma once

#include "afx/linalg/int_matrix.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace afx {

using json = nlohmann::ordered_json;

/// Input document does not match the expected shape; `pointer` is the JSON
/// pointer of the offending value.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string pointer, const std::string& message)
      : std::runtime_error(pointer + ": " + message), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

std::string child_pointer(const std::string& parent, const std::string& key);
std::string child_pointer(const std::string& parent, std::size_t index);

const json& require_field(const json& obj, const std::string& key, const std::string& ptr);

/// Integers are accepted as decimal strings or as JSON integers.
Int int_from_json(const json& j, const std::string& ptr);
/// Rationals: "p/q", decimal strings, or JSON integers.
Rat rat_from_json(const json& j, const std::string& ptr);
IntVector int_vector_from_json(const json& j, const std::string& ptr);
RatVector rat_vector_from_json(const json& j, const std::string& ptr);
/// Array of rows. `cols_hint` fixes the column count of a matrix with no rows.
IntMatrix int_matrix_from_json(const json& j, const std::string& ptr, std::size_t cols_hint = 0);
std::size_t count_from_json(const json& j, const std::string& ptr);
bool bool_from_json(const json& j, const std::string& ptr);

json to_json(const Int& v);
json to_json(const Rat& v);
json to_json(const IntVector& v);
json to_json(const RatVector& v);
json to_json(const IntMatrix& m);

}  // namespace afx
