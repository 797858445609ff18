#include "dcoh/json_io.hpp"

#include <fstream>
#include <sstream>

namespace dcoh {

using nlohmann::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw InputError(path, "JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Rational json_to_rational(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(parse_integer(j.dump()));
  } catch (const std::invalid_argument& e) {
    throw InputError(where, e.what());
  }
  throw InputError(where, "expected a rational as \"p/q\" string or integer, found " + j.dump());
}

Integer json_to_integer(const json& j, const std::string& where) {
  Rational q = json_to_rational(j, where);
  if (!is_integral(q)) throw InputError(where, "expected an integer, found " + to_string(q));
  return q.get_num();
}

json rational_to_json(const Rational& q) { return to_string(q); }

json rationals_to_json(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json integers_to_json(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

RatVec json_to_rationals(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where, "expected an array");
  RatVec v;
  for (size_t i = 0; i < j.size(); ++i) v.push_back(json_to_rational(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

IntVec json_to_integers(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where, "expected an array");
  IntVec v;
  for (size_t i = 0; i < j.size(); ++i) v.push_back(json_to_integer(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

json complex_to_json(const Complex& c) {
  json out;
  out["ring"] = to_string(c.ring());
  out["lo"] = c.lo();
  out["hi"] = c.hi();
  json ranks = json::array();
  json diffs = json::array();
  for (int n = c.lo(); n <= c.hi(); ++n) {
    ranks.push_back(c.rank(n));
    if (n < c.hi()) {
      json flat = json::array();
      const RatMatrix d = c.differential(n);
      for (const auto& x : d.data()) flat.push_back(to_string(x));
      diffs.push_back(flat);
    }
  }
  out["ranks"] = ranks;
  out["differentials"] = diffs;
  return out;
}

Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where, "expected an object");
  for (const char* key : {"ring", "lo", "hi", "ranks", "differentials"})
    if (!j.contains(key)) throw InputError(where, std::string("missing field '") + key + "'");
  Ring ring;
  try {
    ring = parse_ring(j["ring"].get<std::string>());
  } catch (const std::exception& e) {
    throw InputError(where + ".ring", e.what());
  }
  const int lo = j["lo"].get<int>();
  const int hi = j["hi"].get<int>();
  std::vector<size_t> ranks = j["ranks"].get<std::vector<size_t>>();
  const auto& dj = j["differentials"];
  if (!dj.is_array()) throw InputError(where + ".differentials", "expected an array");
  if (ranks.size() != static_cast<size_t>(std::max(0, hi - lo + 1)))
    throw InputError(where + ".ranks", "length does not match window [lo, hi]");
  std::vector<RatMatrix> diffs;
  for (size_t i = 0; i < dj.size(); ++i) {
    const std::string w = where + ".differentials[" + std::to_string(i) + "]";
    if (i + 1 >= ranks.size()) throw InputError(w, "more differentials than the window allows");
    const size_t rows = ranks[i + 1], cols = ranks[i];
    RatMatrix m(rows, cols);
    const auto& flat = dj[i];
    if (!flat.is_array() || flat.size() != rows * cols)
      throw InputError(w, "expected " + std::to_string(rows * cols) + " row-major entries");
    for (size_t k = 0; k < flat.size(); ++k)
      m(k / cols, k % cols) = json_to_rational(flat[k], w + "[" + std::to_string(k) + "]");
    diffs.push_back(std::move(m));
  }
  try {
    return Complex(ring, lo, hi, std::move(ranks), std::move(diffs));
  } catch (const std::invalid_argument& e) {
    throw InputError(where, e.what());
  }
}

json group_to_json(const FgAbGroup& g) {
  json out;
  out["ring"] = to_string(g.ring);
  out["rank"] = g.rank;
  out["torsion"] = integers_to_json(g.torsion);
  if (g.divisible) out["divisible"] = g.divisible;
  out["text"] = to_string(g);
  return out;
}

}  // namespace dcoh
