#include "dcoh/geom_json.hpp"

#include "dcoh/cells_json.hpp"

#include <filesystem>
#include <sstream>

namespace dcoh {

using nlohmann::json;

namespace {

Expr expr_from_json(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_expr(j.get<std::string>());
    if (j.is_number_integer()) return Expr(j.get<long>());
    if (j.is_number()) {
      std::ostringstream s;
      s.precision(17);
      s << j.get<double>();
      return parse_expr(s.str());
    }
  } catch (const ParseError& e) {
    throw InputError(where, e.what());
  }
  throw InputError(where, "expected an expression string or a number");
}

CExpr entry_from_json(const json& j, const std::string& where) {
  if (j.is_array()) {
    if (j.size() != 2) throw InputError(where, "complex entries are [re, im]");
    return {expr_from_json(j[0], where + "[0]"), expr_from_json(j[1], where + "[1]")};
  }
  return {expr_from_json(j, where)};
}

std::string base_dir_of(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  return parent.empty() ? "." : parent.string();
}

std::vector<double> point_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError(where, "expected a point [s, t]");
  return {j[0].get<double>(), j[1].get<double>()};
}

template <size_t N>
std::array<std::vector<double>, N> points_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != N) throw InputError(where, "expected " + std::to_string(N) + " points");
  std::array<std::vector<double>, N> out;
  for (size_t i = 0; i < N; ++i) out[i] = point_from_json(j[i], where + "[" + std::to_string(i) + "]");
  return out;
}

}  // namespace

SmoothConnection connection_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where, "expected an object");
  if (!j.contains("rank") || !j["rank"].is_number_unsigned() || j["rank"].get<size_t>() == 0)
    throw InputError(where + ".rank", "expected a positive integer");
  if (!j.contains("coords") || !j["coords"].is_array() || j["coords"].empty())
    throw InputError(where + ".coords", "expected a nonempty array of names");
  SmoothConnection c;
  c.rank = j["rank"].get<size_t>();
  for (const auto& name : j["coords"]) {
    if (!name.is_string()) throw InputError(where + ".coords", "coordinate names must be strings");
    c.coords.push_back(name.get<std::string>());
  }
  const json domain = j.value("domain", json::object());
  for (const auto& name : c.coords) {
    const std::string w = where + ".domain." + name;
    if (!domain.contains(name)) throw InputError(w, "missing interval");
    const auto& iv = domain[name];
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
      throw InputError(w, "expected [lo, hi]");
    c.domain.emplace_back(iv[0].get<double>(), iv[1].get<double>());
  }
  const json a = j.value("A", json::object());
  if (!a.is_object()) throw InputError(where + ".A", "expected an object keyed by coordinate");
  for (const auto& [name, _] : a.items())
    if (std::find(c.coords.begin(), c.coords.end(), name) == c.coords.end())
      throw InputError(where + ".A." + name, "not a coordinate");
  for (const auto& name : c.coords) {
    CMatrix m(c.rank);
    if (a.contains(name)) {
      const std::string w = where + ".A." + name;
      const auto& rows = a[name];
      if (!rows.is_array() || rows.size() != c.rank) throw InputError(w, "expected " + std::to_string(c.rank) + " rows");
      for (size_t r = 0; r < c.rank; ++r) {
        if (!rows[r].is_array() || rows[r].size() != c.rank)
          throw InputError(w + "[" + std::to_string(r) + "]", "expected " + std::to_string(c.rank) + " entries");
        for (size_t s = 0; s < c.rank; ++s)
          m(r, s) = entry_from_json(rows[r][s], w + "[" + std::to_string(r) + "][" + std::to_string(s) + "]");
      }
    }
    c.a.push_back(std::move(m));
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(where, e.what());
  }
  return c;
}

json connection_to_json(const SmoothConnection& c) {
  json j{{"rank", c.rank}, {"coords", c.coords}, {"domain", json::object()}, {"A", json::object()}};
  for (size_t mu = 0; mu < c.coords.size(); ++mu) {
    j["domain"][c.coords[mu]] = {c.domain[mu].first, c.domain[mu].second};
    if (c.a[mu].is_zero()) continue;
    json rows = json::array();
    for (size_t r = 0; r < c.rank; ++r) {
      json row = json::array();
      for (size_t s = 0; s < c.rank; ++s) {
        const CExpr& e = c.a[mu](r, s);
        row.push_back(e.im.is_zero() ? json(e.re.str()) : json{e.re.str(), e.im.str()});
      }
      rows.push_back(row);
    }
    j["A"][c.coords[mu]] = rows;
  }
  return j;
}

SmoothConnection load_connection(const std::string& path) { return connection_from_json(read_json_file(path), path); }

Loop loop_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("coords") || !j["coords"].is_object() || j["coords"].empty())
    throw InputError(where + ".coords", "expected an object {coordinate: expression}");
  Loop l;
  const json periods = j.value("periods", json::object());
  for (const auto& [name, e] : j["coords"].items()) {
    l.coords.push_back(name);
    l.x.push_back(expr_from_json(e, where + ".coords." + name));
    for (const auto& v : l.x.back().variables())
      if (v != "u") throw InputError(where + ".coords." + name, "loop expressions may only use u, found '" + v + "'");
    double p = 0;
    if (periods.contains(name)) {
      if (!periods[name].is_number()) throw InputError(where + ".periods." + name, "expected a number");
      p = periods[name].get<double>();
    }
    l.periods.push_back(p);
  }
  if (j.contains("tolerance")) {
    if (!j["tolerance"].is_number()) throw InputError(where + ".tolerance", "expected a number");
    l.tolerance = j["tolerance"].get<double>();
  }
  try {
    l.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(where, e.what());
  }
  return l;
}

Loop load_loop(const std::string& path) { return loop_from_json(read_json_file(path), path); }

LatticeLineBundle lattice_bundle_from_json(const json& j, const std::string& base_dir, const std::string& where) {
  if (!j.is_object() || !j.contains("complex")) throw InputError(where, "expected {complex, ...}");
  CellComplex k;
  if (j["complex"].is_string()) {
    std::filesystem::path p(j["complex"].get<std::string>());
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    k = load_cell_complex(p.string());
  } else {
    k = cell_complex_from_json(j["complex"], where + ".complex");
  }
  try {
    if (j.contains("monopole")) {
      if (!j["monopole"].is_number_integer()) throw InputError(where + ".monopole", "expected an integer charge");
      return monopole(k, j["monopole"].get<long>());
    }
    if (j.contains("wilson")) return wilson_lines(k, json_to_rationals(j["wilson"], where + ".wilson"));
    if (!j.contains("n") || !j.contains("a")) throw InputError(where, "expected n and a, monopole, or wilson");
    LatticeLineBundle l{k, json_to_integers(j["n"], where + ".n"), json_to_rationals(j["a"], where + ".a")};
    l.validate();
    return l;
  } catch (const std::invalid_argument& e) {
    throw InputError(where, e.what());
  }
}

LatticeLineBundle load_lattice_bundle(const std::string& path) {
  return lattice_bundle_from_json(read_json_file(path), base_dir_of(path), path);
}

SurfaceChart chart_from_json(const json& j, const CellComplex& k, const std::string& where) {
  if (!j.is_object()) throw InputError(where, "expected an object");
  if (j.contains("builtin")) {
    if (j["builtin"] != "csaszar_torus") throw InputError(where + ".builtin", "unknown chart " + j["builtin"].dump());
    try {
      return csaszar_torus_chart(k);
    } catch (const std::invalid_argument& e) {
      throw InputError(where, e.what());
    }
  }
  if (k.dim() != 2) throw InputError(where, "charts need a 2-dimensional complex");
  if (!j.contains("edges") || !j.contains("faces")) throw InputError(where, "expected edges and faces");
  SurfaceChart chart;
  for (size_t e = 0; e < k.count(1); ++e) {
    const std::string& label = k.cell(1, e).label;
    if (!j["edges"].contains(label)) throw InputError(where + ".edges", "missing edge " + label);
    chart.edges.push_back(points_from_json<2>(j["edges"][label], where + ".edges." + label));
  }
  for (size_t f = 0; f < k.count(2); ++f) {
    const std::string& label = k.cell(2, f).label;
    if (!j["faces"].contains(label)) throw InputError(where + ".faces", "missing face " + label);
    chart.faces.push_back(points_from_json<3>(j["faces"][label], where + ".faces." + label));
  }
  return chart;
}

SurfaceChart load_chart(const std::string& path, const CellComplex& k) {
  return chart_from_json(read_json_file(path), k, path);
}

json complex_matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index s = 0; s < m.cols(); ++s) row.push_back({m(r, s).real(), m(r, s).imag()});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dcoh
