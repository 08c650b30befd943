#pragma once

#include <array>
#include <vector>

#include <Eigen/SparseCore>

#include "ot/polygon.hpp"
#include "ot/types.hpp"

namespace ot {

using SparseMat = Eigen::SparseMatrix<double>;

/// Probability density on a convex polygon, constant on each triangle of a
/// triangulation. Cost convention for everything built on it:
/// c(x, y) = 1/2 |x - y|^2.
class PolygonalDensity {
 public:
  static constexpr double kTolerance = 1e-10;

  /// `vertices` are the triangulation nodes referenced by `triangles`;
  /// `densities` holds mass per unit area for each triangle. Throws InputError
  /// unless the polygon is convex and counterclockwise, the triangles tile it,
  /// densities are >= 0 and the total mass is 1 (all within kTolerance).
  PolygonalDensity(std::vector<Point> polygon, std::vector<Point> vertices,
                   std::vector<std::array<int, 3>> triangles, std::vector<double> densities);

  /// Constant density 1/area on a fan triangulation of the polygon.
  static PolygonalDensity uniform(std::vector<Point> polygon);
  static PolygonalDensity unit_square();

  /// Axis-aligned box split into n x n squares (two triangles each). The density
  /// on each triangle is proportional to weight(centroid) and the result is
  /// normalized to mass 1.
  template <class F>
  static PolygonalDensity box_grid(Point lo, Point hi, int n, F weight);

  const std::vector<Point>& polygon() const { return polygon_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangle_indices() const { return triangles_; }
  const std::vector<double>& densities() const { return densities_; }
  std::size_t triangle_count() const { return triangles_.size(); }
  /// Counterclockwise corners of triangle t.
  const std::array<Point, 3>& triangle(std::size_t t) const { return corners_[t]; }
  double density(std::size_t t) const { return densities_[t]; }

  double area() const { return area_; }
  double diameter() const { return diameter_; }
  double max_density() const;
  /// int rho log rho.
  double entropy() const;
  /// Density at a point (0 outside the polygon). On shared sides the first
  /// containing triangle wins.
  double density_at(const Point& x) const;

  /// Axis-aligned bounds of triangle t: {min, max}.
  const std::array<Point, 2>& triangle_bounds(std::size_t t) const { return bounds_[t]; }

 private:
  static PolygonalDensity from_box_weights(Point lo, Point hi, int n, const std::vector<double>& w);

  std::vector<Point> polygon_;
  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<double> densities_;
  std::vector<std::array<Point, 3>> corners_;
  std::vector<std::array<Point, 2>> bounds_;
  double area_ = 0.0;
  double diameter_ = 0.0;
};

/// Pairwise distinct sites in the plane. Newton-type solvers additionally
/// assume no three sites are collinear; this is not verified.
class SiteSet {
 public:
  explicit SiteSet(std::vector<Point> sites);

  std::size_t size() const { return sites_.size(); }
  const Point& operator[](std::size_t i) const { return sites_[i]; }
  const std::vector<Point>& points() const { return sites_; }
  /// Smallest pairwise distance (infinity for a single site).
  double min_distance() const;

 private:
  std::vector<Point> sites_;
};

/// Piece of the common boundary of cells i < j; a -> b runs counterclockwise
/// around cell i.
struct LaguerreEdge {
  int i = 0;
  int j = 0;
  Point a;
  Point b;

  double length() const { return (b - a).norm(); }
};

struct LaguerreDiagram {
  std::vector<Point> sites;
  Potential psi;
  /// Cells clipped to the domain; empty cells have no vertices.
  std::vector<LabeledPolygon> cells;
  std::vector<LaguerreEdge> edges;
  /// Site adjacency through edges.
  std::vector<std::vector<int>> neighbors;
  double domain_area = 0.0;
  double domain_diameter = 0.0;
};

/// Cells with area below this fraction of the domain area are reported empty.
inline constexpr double kEmptyCellFraction = 1e-14;
/// Edges shorter than this fraction of the domain diameter are dropped.
inline constexpr double kShortEdgeFraction = 1e-12;

/// Laguerre cell of site i: domain intersected with the half-planes
/// <x, y_j - y_i> <= (psi_j + |y_j|^2/2) - (psi_i + |y_i|^2/2).
LabeledPolygon build_cell(const SiteSet& sites, const Potential& psi,
                          const PolygonalDensity& domain, std::size_t i);

LaguerreDiagram build_diagram(const SiteSet& sites, const Potential& psi,
                              const PolygonalDensity& domain);

/// rho(P) for a convex polygon P.
double polygon_mass(const std::vector<Point>& poly, const PolygonalDensity& rho);

/// G(psi): mass of every cell.
Vec cell_masses(const LaguerreDiagram& diagram, const PolygonalDensity& rho);

/// G_y(psi) for a single site, without building the other cells.
double cell_mass(const SiteSet& sites, const Potential& psi, const PolygonalDensity& rho,
                 std::size_t y);

/// Convenience: G(psi) straight from sites and prices.
Vec cell_masses(const SiteSet& sites, const Potential& psi, const PolygonalDensity& rho);

/// Jacobian of G: off-diagonal entries are the edge integrals of rho / |y - z|
/// (length measure), the diagonal is minus the off-diagonal row sum.
SparseMat edge_integrals(const LaguerreDiagram& diagram, const PolygonalDensity& rho);

struct SdKantorovich {
  double value = 0.0;
  Vec gradient;
};

/// Semi-discrete Kantorovich functional
///   sum_i int_{Lag_i} (c(x, y_i) + psi_i) rho(x) dx - <psi, nu>
/// and its gradient G(psi) - nu.
SdKantorovich sd_kantorovich(const Potential& psi, const SiteSet& sites,
                             const PolygonalDensity& rho, const Vec& nu);

/// max c - min c over domain x sites.
double cost_oscillation(const SiteSet& sites, const PolygonalDensity& domain);

template <class F>
PolygonalDensity PolygonalDensity::box_grid(Point lo, Point hi, int n, F weight) {
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(2 * n * n));
  const Point h((hi.x() - lo.x()) / n, (hi.y() - lo.y()) / n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Point p00 = lo + Point(i * h.x(), j * h.y());
      const Point p10 = p00 + Point(h.x(), 0.0);
      const Point p01 = p00 + Point(0.0, h.y());
      const Point p11 = p00 + h;
      w.push_back(weight(Point((p00 + p10 + p11) / 3.0)));
      w.push_back(weight(Point((p00 + p11 + p01) / 3.0)));
    }
  }
  return from_box_weights(lo, hi, n, w);
}

}  // namespace ot
