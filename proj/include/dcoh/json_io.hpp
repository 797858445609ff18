#pragma once

#include "dcoh/complex.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace dcoh {

/// Malformed or inconsistent input file. `where()` names the file/JSON path.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Reads a JSON document; parse errors are reported with path and byte offset.
nlohmann::json read_json_file(const std::string& path);

/// Rationals are serialized as decimal "p/q" strings; JSON integers are also accepted.
Rational json_to_rational(const nlohmann::json& j, const std::string& where);
Integer json_to_integer(const nlohmann::json& j, const std::string& where);
nlohmann::json rational_to_json(const Rational& q);
nlohmann::json rationals_to_json(const RatVec& v);
nlohmann::json integers_to_json(const IntVec& v);
RatVec json_to_rationals(const nlohmann::json& j, const std::string& where);
IntVec json_to_integers(const nlohmann::json& j, const std::string& where);

/// {ring, lo, hi, ranks: [...], differentials: [[row-major entries], ...]}
/// where differentials[i] is d^{lo+i}.
nlohmann::json complex_to_json(const Complex& c);
Complex complex_from_json(const nlohmann::json& j, const std::string& where = "complex");

nlohmann::json group_to_json(const FgAbGroup& g);

}  // namespace dcoh
