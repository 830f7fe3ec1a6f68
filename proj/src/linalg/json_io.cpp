#include "afx/linalg/json_io.hpp"

namespace afx {

std::string child_pointer(const std::string& parent, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') escaped += "~0";
    else if (c == '/') escaped += "~1";
    else escaped += c;
  }
  return parent + "/" + escaped;
}

std::string child_pointer(const std::string& parent, std::size_t index) {
  return parent + "/" + std::to_string(index);
}

const json& require_field(const json& obj, const std::string& key, const std::string& ptr) {
  if (!obj.is_object()) throw SchemaError(ptr.empty() ? "/" : ptr, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(child_pointer(ptr, key), "missing required field");
  return *it;
}

Int int_from_json(const json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Int(j.dump());
  if (j.is_string()) {
    try {
      return parse_int(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(ptr, e.what());
    }
  }
  throw SchemaError(ptr, "expected an integer (decimal string or number)");
}

Rat rat_from_json(const json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Rat(Int(j.dump()));
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(ptr, e.what());
    }
  }
  throw SchemaError(ptr, "expected a rational (\"p/q\" string or integer)");
}

IntVector int_vector_from_json(const json& j, const std::string& ptr) {
  if (!j.is_array()) throw SchemaError(ptr, "expected an array of integers");
  IntVector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(int_from_json(j[i], child_pointer(ptr, i)));
  return out;
}

RatVector rat_vector_from_json(const json& j, const std::string& ptr) {
  if (!j.is_array()) throw SchemaError(ptr, "expected an array of rationals");
  RatVector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rat_from_json(j[i], child_pointer(ptr, i)));
  return out;
}

IntMatrix int_matrix_from_json(const json& j, const std::string& ptr, std::size_t cols_hint) {
  if (!j.is_array()) throw SchemaError(ptr, "expected an array of rows");
  if (j.empty()) return IntMatrix(0, cols_hint);
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(int_vector_from_json(j[i], child_pointer(ptr, i)));
  const std::size_t cols = rows[0].size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != cols) throw SchemaError(child_pointer(ptr, i), "ragged matrix row");
  return IntMatrix::from_rows(rows, cols);
}

std::size_t count_from_json(const json& j, const std::string& ptr) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw SchemaError(ptr, "expected a nonnegative integer");
  return static_cast<std::size_t>(j.get<long long>());
}

bool bool_from_json(const json& j, const std::string& ptr) {
  if (!j.is_boolean()) throw SchemaError(ptr, "expected a boolean");
  return j.get<bool>();
}

json to_json(const Int& v) { return v.get_str(); }
json to_json(const Rat& v) { return v.get_str(); }

json to_json(const IntVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

json to_json(const RatVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

json to_json(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

}  // namespace afx
