#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ot/laguerre.hpp"
#include "ot/measures.hpp"

namespace otcli {

using json = nlohmann::json;

/// Parses JSON text. Syntax errors become ot::InputError with
/// "origin:line:column: message".
json parse_json(const std::string& text, const std::string& origin);
json read_json(const std::string& path);

/// {"matrix": [[...], ...]}
ot::CostMatrix cost_from_json(const json& doc, const std::string& origin);
/// {"weights": [...], "points": [[x, y], ...] (optional)}
ot::DiscreteMeasure measure_from_json(const json& doc, const std::string& origin);
/// {"sites": [[x, y], ...]}
ot::SiteSet sites_from_json(const json& doc, const std::string& origin);
/// {"polygon": [[x, y], ...], "vertices": [[x, y], ...] (optional),
///  "triangles": [[i, j, k], ...], "densities": [...]}
/// Without "vertices" the triangle indices refer to the polygon corners;
/// without "triangles" the density is uniform on the polygon.
ot::PolygonalDensity density_from_json(const json& doc, const std::string& origin);
/// {"psi": [...]}
ot::Vec potential_from_json(const json& doc, const std::string& origin);

json to_json(const ot::Vec& v);
json to_json(const ot::Mat& m);

/// Writes text to a file; throws ot::InputError when it cannot be opened.
void write_text(const std::string& path, const std::string& text);

}  // namespace otcli
