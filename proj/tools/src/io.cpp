#include "otcli/io.hpp"

#include <fstream>
#include <sstream>

#include "ot/error.hpp"

namespace otcli {

namespace {

[[noreturn]] void field_error(const std::string& origin, const json::json_pointer& where,
                              const std::string& what) {
  const std::string p = where.to_string();
  throw ot::InputError(origin + ": " + (p.empty() ? "/" : p) + ": " + what);
}

const json& member(const json& doc, const char* key, const std::string& origin) {
  if (!doc.is_object()) field_error(origin, json::json_pointer(), "expected an object");
  const auto it = doc.find(key);
  if (it == doc.end())
    field_error(origin, json::json_pointer(), std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& v, const std::string& origin, const json::json_pointer& where) {
  if (!v.is_number()) field_error(origin, where, "expected a number, got " + std::string(v.type_name()));
  return v.get<double>();
}

std::vector<double> numbers(const json& v, const std::string& origin,
                            const json::json_pointer& where) {
  if (!v.is_array()) field_error(origin, where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], origin, where / i));
  return out;
}

std::vector<ot::Point> points(const json& v, const std::string& origin,
                              const json::json_pointer& where) {
  if (!v.is_array()) field_error(origin, where, "expected an array of [x, y] pairs");
  std::vector<ot::Point> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const json& p = v[i];
    if (!p.is_array() || p.size() != 2) field_error(origin, where / i, "expected [x, y]");
    out.emplace_back(number(p[0], origin, where / i / 0), number(p[1], origin, where / i / 1));
  }
  return out;
}

ot::Vec as_vec(const std::vector<double>& v) {
  return Eigen::Map<const ot::Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string with_origin(const std::string& origin, const ot::Error& e) {
  return origin + ": " + e.what();
}

}  // namespace

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is the 1-based offset of the offending character.
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    const auto pos = msg.find("syntax error");
    if (pos != std::string::npos) msg = msg.substr(pos);
    throw ot::InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ot::InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

ot::CostMatrix cost_from_json(const json& doc, const std::string& origin) {
  const json& m = member(doc, "matrix", origin);
  const json::json_pointer at("/matrix");
  if (!m.is_array() || m.empty()) field_error(origin, at, "expected a non-empty array of rows");
  std::size_t cols = 0;
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < m.size(); ++i) {
    rows.push_back(numbers(m[i], origin, at / i));
    if (i == 0) cols = rows[0].size();
    if (rows.back().size() != cols || cols == 0)
      field_error(origin, at / i, "rows must be non-empty and of equal length");
  }
  ot::Mat c(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  try {
    return ot::CostMatrix(std::move(c));
  } catch (const ot::Error& e) {
    throw ot::InputError(with_origin(origin, e));
  }
}

ot::DiscreteMeasure measure_from_json(const json& doc, const std::string& origin) {
  const ot::Vec w = as_vec(numbers(member(doc, "weights", origin), origin, json::json_pointer("/weights")));
  std::vector<ot::Point> pts;
  if (doc.contains("points")) pts = points(doc["points"], origin, json::json_pointer("/points"));
  try {
    return ot::DiscreteMeasure(w, std::move(pts));
  } catch (const ot::Error& e) {
    throw ot::InputError(with_origin(origin, e));
  }
}

ot::SiteSet sites_from_json(const json& doc, const std::string& origin) {
  auto pts = points(member(doc, "sites", origin), origin, json::json_pointer("/sites"));
  if (pts.empty()) field_error(origin, json::json_pointer("/sites"), "expected at least one site");
  try {
    return ot::SiteSet(std::move(pts));
  } catch (const ot::Error& e) {
    throw ot::InputError(with_origin(origin, e));
  }
}

ot::PolygonalDensity density_from_json(const json& doc, const std::string& origin) {
  auto polygon = points(member(doc, "polygon", origin), origin, json::json_pointer("/polygon"));
  try {
    if (!doc.contains("triangles")) return ot::PolygonalDensity::uniform(std::move(polygon));
    std::vector<ot::Point> vertices =
        doc.contains("vertices") ? points(doc["vertices"], origin, json::json_pointer("/vertices"))
                                 : polygon;
    const json& tris = doc["triangles"];
    const json::json_pointer at("/triangles");
    if (!tris.is_array()) field_error(origin, at, "expected an array of [i, j, k]");
    std::vector<std::array<int, 3>> triangles;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (!tris[t].is_array() || tris[t].size() != 3) field_error(origin, at / t, "expected [i, j, k]");
      std::array<int, 3> ids{};
      for (std::size_t k = 0; k < 3; ++k) {
        if (!tris[t][k].is_number_integer()) field_error(origin, at / t / k, "expected an integer");
        ids[k] = tris[t][k].get<int>();
      }
      triangles.push_back(ids);
    }
    std::vector<double> dens =
        numbers(member(doc, "densities", origin), origin, json::json_pointer("/densities"));
    if (dens.size() != triangles.size())
      field_error(origin, json::json_pointer("/densities"), "expected one density per triangle");
    return ot::PolygonalDensity(std::move(polygon), std::move(vertices), std::move(triangles),
                                std::move(dens));
  } catch (const ot::InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(origin, 0) == 0) throw;
    throw ot::InputError(origin + ": " + msg);
  }
}

ot::Vec potential_from_json(const json& doc, const std::string& origin) {
  return as_vec(numbers(member(doc, "psi", origin), origin, json::json_pointer("/psi")));
}

json to_json(const ot::Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json to_json(const ot::Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(ot::Vec(m.row(i).transpose())));
  return rows;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ot::InputError(path + ": cannot open file for writing");
  out << text;
  if (!out) throw ot::InputError(path + ": write failed");
}

}  // namespace otcli
