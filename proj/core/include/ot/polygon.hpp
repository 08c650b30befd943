#pragma once

#include <array>
#include <vector>

#include "ot/types.hpp"

namespace ot {

/// Edge label of a polygon side that lies on the domain boundary.
inline constexpr int kBoundaryLabel = -1;

/// Convex polygon with counterclockwise vertices. labels[k] tags the side from
/// vertices[k] to vertices[k + 1]: either the index of the half-plane that
/// created it or kBoundaryLabel.
struct LabeledPolygon {
  std::vector<Point> vertices;
  std::vector<int> labels;

  bool empty() const { return vertices.size() < 3; }
  std::size_t size() const { return vertices.size(); }
};

double signed_area(const std::vector<Point>& poly);
double polygon_area(const std::vector<Point>& poly);
bool is_convex_ccw(const std::vector<Point>& poly, double tol = 0.0);

LabeledPolygon make_labeled(const std::vector<Point>& poly, int label = kBoundaryLabel);

/// Keeps {x : <normal, x> <= offset}. The new side along the clipping line gets
/// `label`. Consecutive vertices closer than `merge_tol` are merged.
LabeledPolygon clip_halfplane(const LabeledPolygon& poly, const Point& normal, double offset,
                              int label, double merge_tol = 0.0);

/// Intersection of a convex polygon with a triangle.
std::vector<Point> clip_to_triangle(const std::vector<Point>& poly, const std::array<Point, 3>& tri);

/// Integral over a convex polygon of 1/2 |x - y|^2 + shift, exact (degree-2
/// quadrature on a fan triangulation).
double integrate_half_squared_distance(const std::vector<Point>& poly, const Point& y, double shift);

/// Parameter interval [t0, t1] of the segment a + t (b - a), t in [0, 1], that
/// lies inside the triangle. Returns false when empty.
bool clip_segment_to_triangle(const Point& a, const Point& b, const std::array<Point, 3>& tri,
                              double& t0, double& t1);

/// True if the segment lies on the supporting line of one of the triangle's sides.
bool segment_on_triangle_side(const Point& a, const Point& b, const std::array<Point, 3>& tri,
                              double tol);

/// Squared distance from p to a closed convex polygon (0 inside).
double squared_distance_to_polygon(const Point& p, const std::vector<Point>& poly);

}  // namespace ot
