#pragma once

#include "dcoh/cells.hpp"
#include "dcoh/json_io.hpp"

namespace dcoh {

/// Accepts either {vertices: [...], facets: [[v, ...], ...]} or
/// {cells: [{id, dim, boundary: [[id, inc], ...]}, ...]}.
CellComplex cell_complex_from_json(const nlohmann::json& j, const std::string& where = "complex");
CellComplex load_cell_complex(const std::string& path);

/// General cell format; ids are the cell labels.
nlohmann::json cell_complex_to_json(const CellComplex& k);

}  // namespace dcoh
