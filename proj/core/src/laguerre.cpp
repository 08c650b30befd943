#include "ot/laguerre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ot/error.hpp"
#include "ot/parallel.hpp"

namespace ot {

namespace {

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

bool boxes_overlap(const std::array<Point, 2>& a, const std::array<Point, 2>& b) {
  return a[0].x() <= b[1].x() && b[0].x() <= a[1].x() && a[0].y() <= b[1].y() &&
         b[0].y() <= a[1].y();
}

std::array<Point, 2> bounds_of(const std::vector<Point>& pts) {
  std::array<Point, 2> b{pts.front(), pts.front()};
  for (const Point& p : pts) {
    b[0] = b[0].cwiseMin(p);
    b[1] = b[1].cwiseMax(p);
  }
  return b;
}

}  // namespace

PolygonalDensity::PolygonalDensity(std::vector<Point> polygon, std::vector<Point> vertices,
                                   std::vector<std::array<int, 3>> triangles,
                                   std::vector<double> densities)
    : polygon_(std::move(polygon)),
      vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      densities_(std::move(densities)) {
  if (polygon_.size() < 3) throw InputError("density: polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < polygon_.size(); ++i)
    for (std::size_t j = i + 1; j < polygon_.size(); ++j)
      diameter_ = std::max(diameter_, (polygon_[i] - polygon_[j]).norm());
  if (!is_convex_ccw(polygon_, 1e-12 * diameter_ * diameter_)) {
    throw InputError("density: polygon must be convex with counterclockwise vertices");
  }
  area_ = signed_area(polygon_);
  if (triangles_.empty()) throw InputError("density: empty triangulation");
  if (densities_.size() != triangles_.size()) {
    throw_dimension_mismatch("density (densities per triangle)", static_cast<long>(triangles_.size()),
                             static_cast<long>(densities_.size()));
  }

  double area_sum = 0.0;
  double mass = 0.0;
  corners_.reserve(triangles_.size());
  bounds_.reserve(triangles_.size());
  const double inside_tol = 1e-10 * std::max(1.0, diameter_);
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    std::array<Point, 3> tri;
    for (std::size_t k = 0; k < 3; ++k) {
      const int v = triangles_[t][k];
      if (v < 0 || static_cast<std::size_t>(v) >= vertices_.size()) {
        std::ostringstream os;
        os << "density: triangle " << t << " references vertex " << v << " out of range";
        throw InputError(os.str());
      }
      tri[k] = vertices_[static_cast<std::size_t>(v)];
      if (squared_distance_to_polygon(tri[k], polygon_) > inside_tol * inside_tol) {
        std::ostringstream os;
        os << "density: triangle " << t << " has a vertex outside the polygon";
        throw InputError(os.str());
      }
    }
    double a = 0.5 * cross(tri[1] - tri[0], tri[2] - tri[0]);
    if (a < 0.0) {
      std::swap(tri[1], tri[2]);
      a = -a;
    }
    const double d = densities_[t];
    if (!std::isfinite(d) || d < 0.0) {
      std::ostringstream os;
      os << "density: triangle " << t << " has a negative or non-finite density";
      throw InputError(os.str());
    }
    area_sum += a;
    mass += d * a;
    corners_.push_back(tri);
    bounds_.push_back(bounds_of({tri[0], tri[1], tri[2]}));
  }
  if (std::abs(area_sum - area_) > kTolerance * std::max(1.0, area_)) {
    std::ostringstream os;
    os.precision(17);
    os << "density: triangle areas sum to " << area_sum << " but the polygon area is " << area_;
    throw InputError(os.str());
  }
  if (std::abs(mass - 1.0) > kTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "density: total mass is " << mass << ", expected 1";
    throw InputError(os.str());
  }
}

PolygonalDensity PolygonalDensity::uniform(std::vector<Point> polygon) {
  const double area = signed_area(polygon);
  if (!(area > 0.0)) throw InputError("density: polygon must have positive counterclockwise area");
  std::vector<std::array<int, 3>> tris;
  for (std::size_t i = 1; i + 1 < polygon.size(); ++i)
    tris.push_back({0, static_cast<int>(i), static_cast<int>(i + 1)});
  std::vector<double> dens(tris.size(), 1.0 / area);
  std::vector<Point> verts = polygon;
  return PolygonalDensity(std::move(polygon), std::move(verts), std::move(tris), std::move(dens));
}

PolygonalDensity PolygonalDensity::unit_square() {
  return uniform({Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)});
}

PolygonalDensity PolygonalDensity::from_box_weights(Point lo, Point hi, int n,
                                                    const std::vector<double>& w) {
  if (n <= 0) throw InputError("density: grid resolution must be positive");
  std::vector<Point> verts;
  verts.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      verts.emplace_back(lo.x() + (hi.x() - lo.x()) * i / n, lo.y() + (hi.y() - lo.y()) * j / n);
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::array<int, 3>> tris;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  double total = 0.0;
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Point& a = verts[static_cast<std::size_t>(tris[t][0])];
    const Point& b = verts[static_cast<std::size_t>(tris[t][1])];
    const Point& c = verts[static_cast<std::size_t>(tris[t][2])];
    total += w[t] * 0.5 * std::abs(cross(b - a, c - a));
  }
  if (!(total > 0.0)) throw InputError("density: grid weights integrate to zero");
  std::vector<double> dens(w.size());
  for (std::size_t t = 0; t < w.size(); ++t) dens[t] = w[t] / total;
  std::vector<Point> poly{lo, Point(hi.x(), lo.y()), hi, Point(lo.x(), hi.y())};
  return PolygonalDensity(std::move(poly), std::move(verts), std::move(tris), std::move(dens));
}

double PolygonalDensity::max_density() const {
  return *std::max_element(densities_.begin(), densities_.end());
}

double PolygonalDensity::entropy() const {
  double e = 0.0;
  for (std::size_t t = 0; t < corners_.size(); ++t) {
    const double d = densities_[t];
    if (d <= 0.0) continue;
    const auto& tri = corners_[t];
    e += d * std::log(d) * 0.5 * cross(tri[1] - tri[0], tri[2] - tri[0]);
  }
  return e;
}

double PolygonalDensity::density_at(const Point& x) const {
  for (std::size_t t = 0; t < corners_.size(); ++t) {
    const auto& tri = corners_[t];
    if (cross(tri[1] - tri[0], x - tri[0]) >= 0.0 && cross(tri[2] - tri[1], x - tri[1]) >= 0.0 &&
        cross(tri[0] - tri[2], x - tri[2]) >= 0.0) {
      return densities_[t];
    }
  }
  return 0.0;
}

SiteSet::SiteSet(std::vector<Point> sites) : sites_(std::move(sites)) {
  if (sites_.empty()) throw InputError("sites: empty site set");
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (!sites_[i].allFinite()) throw InputError("sites: non-finite coordinate");
    for (std::size_t j = 0; j < i; ++j) {
      if (sites_[i] == sites_[j]) {
        std::ostringstream os;
        os << "sites: duplicate sites " << j << " and " << i;
        throw InputError(os.str());
      }
    }
  }
}

double SiteSet::min_distance() const {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sites_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) d = std::min(d, (sites_[i] - sites_[j]).norm());
  return d;
}

LabeledPolygon build_cell(const SiteSet& sites, const Potential& psi,
                          const PolygonalDensity& domain, std::size_t i) {
  if (static_cast<std::size_t>(psi.size()) != sites.size())
    throw_dimension_mismatch("build_cell", static_cast<long>(sites.size()), psi.size());
  const double merge_tol = 1e-14 * domain.diameter();
  LabeledPolygon cell = make_labeled(domain.polygon());
  const Point& yi = sites[i];
  const double wi = psi[static_cast<Eigen::Index>(i)] + 0.5 * yi.squaredNorm();
  for (std::size_t j = 0; j < sites.size() && !cell.empty(); ++j) {
    if (j == i) continue;
    const Point& yj = sites[j];
    const double wj = psi[static_cast<Eigen::Index>(j)] + 0.5 * yj.squaredNorm();
    cell = clip_halfplane(cell, yj - yi, wj - wi, static_cast<int>(j), merge_tol);
  }
  if (!cell.empty() && signed_area(cell.vertices) < kEmptyCellFraction * domain.area()) {
    cell = LabeledPolygon{};
  }
  return cell;
}

LaguerreDiagram build_diagram(const SiteSet& sites, const Potential& psi,
                              const PolygonalDensity& domain) {
  if (static_cast<std::size_t>(psi.size()) != sites.size())
    throw_dimension_mismatch("build_diagram", static_cast<long>(sites.size()), psi.size());
  if (!psi.allFinite()) throw InputError("build_diagram: non-finite potential");
  const std::size_t n = sites.size();
  LaguerreDiagram d;
  d.sites = sites.points();
  d.psi = psi;
  d.domain_area = domain.area();
  d.domain_diameter = domain.diameter();
  d.cells.resize(n);
  d.neighbors.resize(n);
  parallel_for(n, [&](std::size_t i) { d.cells[i] = build_cell(sites, psi, domain, i); });

  const double min_len = kShortEdgeFraction * domain.diameter();
  for (std::size_t i = 0; i < n; ++i) {
    const LabeledPolygon& cell = d.cells[i];
    for (std::size_t k = 0; k < cell.size(); ++k) {
      const int j = cell.labels[k];
      if (j <= static_cast<int>(i) || d.cells[static_cast<std::size_t>(j)].empty()) continue;
      const Point& a = cell.vertices[k];
      const Point& b = cell.vertices[(k + 1) % cell.size()];
      if ((b - a).norm() < min_len) continue;
      d.edges.push_back({static_cast<int>(i), j, a, b});
    }
  }
  for (const auto& e : d.edges) {
    auto& ni = d.neighbors[static_cast<std::size_t>(e.i)];
    if (std::find(ni.begin(), ni.end(), e.j) == ni.end()) ni.push_back(e.j);
    auto& nj = d.neighbors[static_cast<std::size_t>(e.j)];
    if (std::find(nj.begin(), nj.end(), e.i) == nj.end()) nj.push_back(e.i);
  }
  for (auto& nb : d.neighbors) std::sort(nb.begin(), nb.end());
  return d;
}

double polygon_mass(const std::vector<Point>& poly, const PolygonalDensity& rho) {
  if (poly.size() < 3) return 0.0;
  const auto box = bounds_of(poly);
  double m = 0.0;
  for (std::size_t t = 0; t < rho.triangle_count(); ++t) {
    if (rho.density(t) == 0.0 || !boxes_overlap(box, rho.triangle_bounds(t))) continue;
    const std::vector<Point> piece = clip_to_triangle(poly, rho.triangle(t));
    m += rho.density(t) * polygon_area(piece);
  }
  return m;
}

Vec cell_masses(const LaguerreDiagram& diagram, const PolygonalDensity& rho) {
  Vec g(static_cast<Eigen::Index>(diagram.cells.size()));
  parallel_for(diagram.cells.size(), [&](std::size_t i) {
    g[static_cast<Eigen::Index>(i)] = polygon_mass(diagram.cells[i].vertices, rho);
  });
  return g;
}

double cell_mass(const SiteSet& sites, const Potential& psi, const PolygonalDensity& rho,
                 std::size_t y) {
  return polygon_mass(build_cell(sites, psi, rho, y).vertices, rho);
}

Vec cell_masses(const SiteSet& sites, const Potential& psi, const PolygonalDensity& rho) {
  if (static_cast<std::size_t>(psi.size()) != sites.size())
    throw_dimension_mismatch("cell_masses", static_cast<long>(sites.size()), psi.size());
  Vec g(psi.size());
  parallel_for(sites.size(), [&](std::size_t i) {
    g[static_cast<Eigen::Index>(i)] = cell_mass(sites, psi, rho, i);
  });
  return g;
}

SparseMat edge_integrals(const LaguerreDiagram& diagram, const PolygonalDensity& rho) {
  const auto n = static_cast<Eigen::Index>(diagram.sites.size());
  const double side_tol = 1e-12 * std::max(1.0, rho.diameter());
  std::vector<Eigen::Triplet<double>> entries;
  Vec diag = Vec::Zero(n);
  for (const LaguerreEdge& e : diagram.edges) {
    const Point& yi = diagram.sites[static_cast<std::size_t>(e.i)];
    const Point& yj = diagram.sites[static_cast<std::size_t>(e.j)];
    const double dist = (yi - yj).norm();
    if (dist == 0.0) throw InputError("edge_integrals: coincident sites");
    const auto box = bounds_of({e.a, e.b});
    const double len = e.length();
    double weighted = 0.0;
    for (std::size_t t = 0; t < rho.triangle_count(); ++t) {
      if (rho.density(t) == 0.0 || !boxes_overlap(box, rho.triangle_bounds(t))) continue;
      double t0 = 0.0;
      double t1 = 0.0;
      if (!clip_segment_to_triangle(e.a, e.b, rho.triangle(t), t0, t1)) continue;
      // A segment on a side shared by two triangles is seen by both.
      const double w = segment_on_triangle_side(e.a, e.b, rho.triangle(t), side_tol) ? 0.5 : 1.0;
      weighted += w * rho.density(t) * (t1 - t0) * len;
    }
    const double v = weighted / dist;
    if (v == 0.0) continue;
    entries.emplace_back(e.i, e.j, v);
    entries.emplace_back(e.j, e.i, v);
    diag[e.i] -= v;
    diag[e.j] -= v;
  }
  for (Eigen::Index i = 0; i < n; ++i) entries.emplace_back(i, i, diag[i]);
  SparseMat h(n, n);
  h.setFromTriplets(entries.begin(), entries.end());
  return h;
}

SdKantorovich sd_kantorovich(const Potential& psi, const SiteSet& sites,
                             const PolygonalDensity& rho, const Vec& nu) {
  if (nu.size() != psi.size()) throw_dimension_mismatch("sd_kantorovich (nu)", psi.size(), nu.size());
  const LaguerreDiagram d = build_diagram(sites, psi, rho);
  SdKantorovich r;
  r.gradient = cell_masses(d, rho) - nu;
  double value = 0.0;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const auto& cell = d.cells[i].vertices;
    if (cell.size() < 3) continue;
    const auto box = bounds_of(cell);
    for (std::size_t t = 0; t < rho.triangle_count(); ++t) {
      if (rho.density(t) == 0.0 || !boxes_overlap(box, rho.triangle_bounds(t))) continue;
      const std::vector<Point> piece = clip_to_triangle(cell, rho.triangle(t));
      value += rho.density(t) *
               integrate_half_squared_distance(piece, sites[i], psi[static_cast<Eigen::Index>(i)]);
    }
  }
  r.value = value - nu.dot(psi);
  return r;
}

double cost_oscillation(const SiteSet& sites, const PolygonalDensity& domain) {
  double cmax = 0.0;
  double cmin = std::numeric_limits<double>::infinity();
  for (const Point& y : sites.points()) {
    for (const Point& v : domain.polygon()) cmax = std::max(cmax, 0.5 * (v - y).squaredNorm());
    cmin = std::min(cmin, 0.5 * squared_distance_to_polygon(y, domain.polygon()));
  }
  return cmax - cmin;
}

}  // namespace ot
