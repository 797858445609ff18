#pragma once

#include "dcoh/diffcoh.hpp"
#include "dcoh/json_io.hpp"

namespace dcoh {

/// {m, n, c: [...], h: [...], omega: [...]} with rationals as "p/q" strings.
nlohmann::json diff_cochain_to_json(const DiffCochain& x);
DiffCochain diff_cochain_from_json(const nlohmann::json& j, const std::string& where = "cochain");

/// {title, pass, checks: [{name, pass, checked, detail}], facts: {key: value}}
nlohmann::json report_to_json(const Report& r);
/// Plain-text table, one check per line.
std::string report_to_table(const Report& r);

}  // namespace dcoh
