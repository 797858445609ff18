#include "dcoh/cells_json.hpp"

#include <map>

namespace dcoh {

using nlohmann::json;

namespace {

std::string key_of(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

CellComplex from_triangulation(const json& j, const std::string& where) {
  if (!j["vertices"].is_array() || !j["facets"].is_array())
    throw InputError(where, "'vertices' and 'facets' must be arrays");
  std::map<std::string, int> index;
  for (const auto& v : j["vertices"]) {
    if (!index.emplace(key_of(v), static_cast<int>(index.size())).second)
      throw InputError(where + ".vertices", "duplicate vertex " + v.dump());
  }
  std::vector<std::vector<int>> facets;
  for (size_t i = 0; i < j["facets"].size(); ++i) {
    const auto& f = j["facets"][i];
    const std::string w = where + ".facets[" + std::to_string(i) + "]";
    if (!f.is_array()) throw InputError(w, "expected an array of vertices");
    std::vector<int> facet;
    for (const auto& v : f) {
      auto it = index.find(key_of(v));
      if (it == index.end()) throw InputError(w, "unknown vertex " + v.dump());
      facet.push_back(it->second);
    }
    facets.push_back(std::move(facet));
  }
  try {
    return simplicial_from_facets(facets);
  } catch (const std::invalid_argument& e) {
    throw InputError(where, e.what());
  }
}

CellComplex from_cells(const json& j, const std::string& where) {
  const json& list = j["cells"];
  if (!list.is_array()) throw InputError(where + ".cells", "expected an array");
  std::vector<std::vector<Cell>> cells;
  std::map<std::string, std::pair<int, size_t>> index;
  // Cells may be listed in any order; place them by dimension first.
  for (size_t i = 0; i < list.size(); ++i) {
    const std::string w = where + ".cells[" + std::to_string(i) + "]";
    const auto& c = list[i];
    if (!c.is_object() || !c.contains("id") || !c.contains("dim") || !c["dim"].is_number_integer())
      throw InputError(w, "expected {id, dim, boundary}");
    const int d = c["dim"].get<int>();
    if (d < 0) throw InputError(w, "negative dimension");
    if (cells.size() <= static_cast<size_t>(d)) cells.resize(static_cast<size_t>(d) + 1);
    Cell cell;
    cell.label = key_of(c["id"]);
    if (!index.emplace(cell.label, std::make_pair(d, cells[d].size())).second)
      throw InputError(w, "duplicate id " + cell.label);
    cells[d].push_back(std::move(cell));
  }
  for (size_t i = 0; i < list.size(); ++i) {
    const std::string w = where + ".cells[" + std::to_string(i) + "]";
    const auto& c = list[i];
    const auto [d, pos] = index.at(key_of(c["id"]));
    if (!c.contains("boundary")) continue;
    for (const auto& entry : c["boundary"]) {
      if (!entry.is_array() || entry.size() != 2 || !entry[1].is_number_integer())
        throw InputError(w, "boundary entries must be [id, incidence]");
      auto it = index.find(key_of(entry[0]));
      if (it == index.end()) throw InputError(w, "unknown boundary cell " + entry[0].dump());
      if (it->second.first != d - 1) throw InputError(w, "boundary cell " + entry[0].dump() + " has the wrong dimension");
      cells[d][pos].boundary.emplace_back(it->second.second, entry[1].get<int>());
    }
  }
  for (size_t d = 0; d < cells.size(); ++d)
    if (cells[d].empty()) throw InputError(where, "no cells of dimension " + std::to_string(d));
  try {
    return CellComplex(std::move(cells));
  } catch (const std::invalid_argument& e) {
    throw InputError(where, e.what());
  }
}

}  // namespace

CellComplex cell_complex_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where, "expected an object");
  if (j.contains("facets")) {
    if (!j.contains("vertices")) throw InputError(where, "missing field 'vertices'");
    return from_triangulation(j, where);
  }
  if (j.contains("cells")) return from_cells(j, where);
  throw InputError(where, "expected 'facets' (triangulation) or 'cells' (general format)");
}

CellComplex load_cell_complex(const std::string& path) { return cell_complex_from_json(read_json_file(path), path); }

json cell_complex_to_json(const CellComplex& k) {
  json cells = json::array();
  for (int d = 0; d <= k.dim(); ++d)
    for (size_t i = 0; i < k.count(d); ++i) {
      const Cell& c = k.cell(d, i);
      json b = json::array();
      for (const auto& [f, inc] : c.boundary) b.push_back({k.cell(d - 1, f).label, inc});
      cells.push_back({{"id", c.label}, {"dim", d}, {"boundary", b}});
    }
  return {{"cells", cells}};
}

}  // namespace dcoh
