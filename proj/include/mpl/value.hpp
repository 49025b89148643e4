#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mpl {

struct Value;

// Arrays are reference values: copying a Value that holds an array shares
// the underlying storage. Scalars copy.
using ArrayRef = std::shared_ptr<std::vector<Value>>;

struct Value {
  std::variant<std::monostate, int64_t, double, bool, ArrayRef> v;

  Value() = default;
  Value(int64_t i) : v(i) {}
  Value(double d) : v(d) {}
  Value(bool b) : v(b) {}
  Value(ArrayRef a) : v(std::move(a)) {}

  bool is_unit() const { return std::holds_alternative<std::monostate>(v); }
  bool is_int() const { return std::holds_alternative<int64_t>(v); }
  bool is_float() const { return std::holds_alternative<double>(v); }
  bool is_bool() const { return std::holds_alternative<bool>(v); }
  bool is_array() const { return std::holds_alternative<ArrayRef>(v); }

  int64_t as_int() const { return std::get<int64_t>(v); }
  double as_float() const { return std::get<double>(v); }
  bool as_bool() const { return std::get<bool>(v); }
  const ArrayRef& as_array() const { return std::get<ArrayRef>(v); }
};

inline std::string to_string(const Value& val) {
  if (val.is_unit()) return "void";
  if (val.is_int()) return std::to_string(val.as_int());
  if (val.is_bool()) return val.as_bool() ? "true" : "false";
  if (val.is_float()) {
    char buf[64];
    snprintf(buf, sizeof(buf), "%.12g", val.as_float());
    return buf;
  }
  const auto& arr = *val.as_array();
  std::string s = "[";
  for (size_t i = 0; i < arr.size(); ++i) {
    if (i) s += ", ";
    s += to_string(arr[i]);
  }
  return s + "]";
}

// Fault raised by interpreters for runtime errors in the mini-language
// (division by zero, index out of bounds, ...).
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mpl
