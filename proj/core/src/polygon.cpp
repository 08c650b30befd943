#include "ot/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ot {

namespace {

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

double signed_area(const std::vector<Point>& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return 0.0;
  double a = 0.0;
  for (std::size_t i = 0; i < n; ++i) a += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * a;
}

double polygon_area(const std::vector<Point>& poly) { return std::abs(signed_area(poly)); }

bool is_convex_ccw(const std::vector<Point>& poly, double tol) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  if (signed_area(poly) <= 0.0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    const Point& c = poly[(i + 2) % n];
    if (cross(b - a, c - b) < -tol) return false;
  }
  return true;
}

LabeledPolygon make_labeled(const std::vector<Point>& poly, int label) {
  return LabeledPolygon{poly, std::vector<int>(poly.size(), label)};
}

LabeledPolygon clip_halfplane(const LabeledPolygon& poly, const Point& normal, double offset,
                              int label, double merge_tol) {
  LabeledPolygon out;
  const std::size_t n = poly.vertices.size();
  if (n == 0) return out;
  out.vertices.reserve(n + 1);
  out.labels.reserve(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    const Point& p = poly.vertices[k];
    const Point& q = poly.vertices[(k + 1) % n];
    const double dp = normal.dot(p) - offset;
    const double dq = normal.dot(q) - offset;
    const bool in_p = dp <= 0.0;
    const bool in_q = dq <= 0.0;
    if (in_p) {
      out.vertices.push_back(p);
      out.labels.push_back(poly.labels[k]);
      if (!in_q) {
        out.vertices.push_back(p + (dp / (dp - dq)) * (q - p));
        out.labels.push_back(label);
      }
    } else if (in_q) {
      out.vertices.push_back(p + (dp / (dp - dq)) * (q - p));
      out.labels.push_back(poly.labels[k]);
    }
  }
  // Merge coincident consecutive vertices; the side leaving the removed vertex
  // disappears and its predecessor's label is kept.
  if (out.vertices.size() > 1) {
    const double tol2 = merge_tol * merge_tol;
    std::size_t k = 0;
    while (k < out.vertices.size() && out.vertices.size() > 1) {
      const std::size_t next = (k + 1) % out.vertices.size();
      if ((out.vertices[k] - out.vertices[next]).squaredNorm() <= tol2) {
        out.vertices.erase(out.vertices.begin() + static_cast<std::ptrdiff_t>(k));
        out.labels.erase(out.labels.begin() + static_cast<std::ptrdiff_t>(k));
      } else {
        ++k;
      }
    }
  }
  if (out.vertices.size() < 3) {
    out.vertices.clear();
    out.labels.clear();
  }
  return out;
}

std::vector<Point> clip_to_triangle(const std::vector<Point>& poly, const std::array<Point, 3>& tri) {
  LabeledPolygon p = make_labeled(poly);
  for (int k = 0; k < 3 && !p.empty(); ++k) {
    const Point& a = tri[static_cast<std::size_t>(k)];
    const Point& b = tri[static_cast<std::size_t>((k + 1) % 3)];
    // Outward normal of a counterclockwise triangle side.
    const Point normal(b.y() - a.y(), a.x() - b.x());
    p = clip_halfplane(p, normal, normal.dot(a), kBoundaryLabel);
  }
  return p.vertices;
}

double integrate_half_squared_distance(const std::vector<Point>& poly, const Point& y, double shift) {
  const std::size_t n = poly.size();
  if (n < 3) return 0.0;
  auto f = [&](const Point& x) { return 0.5 * (x - y).squaredNorm() + shift; };
  double total = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Point& a = poly[0];
    const Point& b = poly[i];
    const Point& c = poly[i + 1];
    const double area = 0.5 * std::abs(cross(b - a, c - a));
    // Edge-midpoint rule, exact for quadratics.
    total += area / 3.0 * (f(0.5 * (a + b)) + f(0.5 * (b + c)) + f(0.5 * (c + a)));
  }
  return total;
}

bool clip_segment_to_triangle(const Point& a, const Point& b, const std::array<Point, 3>& tri,
                              double& t0, double& t1) {
  t0 = 0.0;
  t1 = 1.0;
  const Point d = b - a;
  const double orient = cross(tri[1] - tri[0], tri[2] - tri[0]) >= 0.0 ? 1.0 : -1.0;
  for (int k = 0; k < 3; ++k) {
    const Point& p = tri[static_cast<std::size_t>(k)];
    const Point& q = tri[static_cast<std::size_t>((k + 1) % 3)];
    const Point normal = orient * Point(q.y() - p.y(), p.x() - q.x());
    const double num = normal.dot(a - p);  // <= 0 inside
    const double den = normal.dot(d);
    if (den == 0.0) {
      if (num > 0.0) return false;
      continue;
    }
    const double t = -num / den;
    if (den > 0.0) {
      t1 = std::min(t1, t);
    } else {
      t0 = std::max(t0, t);
    }
    if (t0 > t1) return false;
  }
  return t1 > t0;
}

bool segment_on_triangle_side(const Point& a, const Point& b, const std::array<Point, 3>& tri,
                              double tol) {
  for (int k = 0; k < 3; ++k) {
    const Point& p = tri[static_cast<std::size_t>(k)];
    const Point& q = tri[static_cast<std::size_t>((k + 1) % 3)];
    const Point e = q - p;
    const double len = e.norm();
    if (len == 0.0) continue;
    const double da = std::abs(cross(e, a - p)) / len;
    const double db = std::abs(cross(e, b - p)) / len;
    if (da <= tol && db <= tol) return true;
  }
  return false;
}

double squared_distance_to_polygon(const Point& p, const std::vector<Point>& poly) {
  const std::size_t n = poly.size();
  bool inside = n >= 3;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    if (cross(b - a, p - a) < 0.0) inside = false;
    const Point ab = b - a;
    const double len2 = ab.squaredNorm();
    double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, (a + t * ab - p).squaredNorm());
  }
  return inside ? 0.0 : best;
}

}  // namespace ot
