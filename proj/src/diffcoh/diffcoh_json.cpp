#include "dcoh/diffcoh_json.hpp"

#include <sstream>

namespace dcoh {

nlohmann::json diff_cochain_to_json(const DiffCochain& x) {
  return {{"m", x.m}, {"n", x.n}, {"c", integers_to_json(x.c)}, {"h", rationals_to_json(x.h)},
          {"omega", rationals_to_json(x.omega)}};
}

DiffCochain diff_cochain_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where, "expected an object {m, n, c, h, omega}");
  for (const char* key : {"m", "n", "c", "h", "omega"})
    if (!j.contains(key)) throw InputError(where, std::string("missing field '") + key + "'");
  if (!j["m"].is_number_integer() || !j["n"].is_number_integer())
    throw InputError(where, "fields 'm' and 'n' must be integers");
  DiffCochain x;
  x.m = j["m"].get<int>();
  x.n = j["n"].get<int>();
  x.c = json_to_integers(j["c"], where + ".c");
  x.h = json_to_rationals(j["h"], where + ".h");
  x.omega = json_to_rationals(j["omega"], where + ".omega");
  return x;
}

nlohmann::json report_to_json(const Report& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"checked", c.checked}, {"detail", c.detail}});
  nlohmann::json facts = nlohmann::json::object();
  for (const auto& [key, value] : r.facts) facts[key] = value;
  return {{"title", r.title}, {"pass", r.all_pass()}, {"checks", checks}, {"facts", facts}};
}

std::string report_to_table(const Report& r) {
  std::ostringstream os;
  os << r.title << "\n";
  for (const auto& [key, value] : r.facts) os << "  " << key << " = " << value << "\n";
  for (const auto& c : r.checks) {
    os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << " (" << c.checked << " checked)";
    if (!c.detail.empty()) os << " -- " << c.detail;
    os << "\n";
  }
  os << (r.all_pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace dcoh
