#pragma once

#include "dcoh/connection.hpp"
#include "dcoh/json_io.hpp"
#include "dcoh/lattice.hpp"

namespace dcoh {

/// {rank, coords: [...], domain: {coord: [lo, hi]}, A: {coord: matrix}} where a matrix
/// is a list of rows and an entry is an expression string, a number or [re, im].
/// Coordinates missing from A carry a zero component.
SmoothConnection connection_from_json(const nlohmann::json& j, const std::string& where = "connection");
nlohmann::json connection_to_json(const SmoothConnection& c);
SmoothConnection load_connection(const std::string& path);

/// {coords: {name: "expression in u"}, periods: {name: number}, tolerance: number}
Loop loop_from_json(const nlohmann::json& j, const std::string& where = "loop");
Loop load_loop(const std::string& path);

/// {complex: path or inline complex, then one of
///   n: [...] with a: ["p/q", ...];  monopole: d;  wilson: ["p/q", ...]}.
/// Relative complex paths are resolved against `base_dir`.
LatticeLineBundle lattice_bundle_from_json(const nlohmann::json& j, const std::string& base_dir,
                                           const std::string& where = "bundle");
LatticeLineBundle load_lattice_bundle(const std::string& path);

/// {builtin: "csaszar_torus"} or {edges: {label: [[s, t], [s, t]]}, faces: {label: [[s, t] x 3]}}
/// keyed by cell labels, points in sorted vertex order.
SurfaceChart chart_from_json(const nlohmann::json& j, const CellComplex& k, const std::string& where = "chart");
SurfaceChart load_chart(const std::string& path, const CellComplex& k);

nlohmann::json complex_matrix_to_json(const Eigen::MatrixXcd& m);

}  // namespace dcoh
