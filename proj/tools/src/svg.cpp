#include "otcli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace otcli {

namespace {

constexpr double kViewport = 1000.0;

struct Frame {
  ot::Point lo;
  double scale = 1.0;

  ot::Point operator()(const ot::Point& p) const {
    return {(p.x() - lo.x()) * scale, kViewport - (p.y() - lo.y()) * scale};
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string point_list(const std::vector<ot::Point>& poly, const Frame& f) {
  std::string s;
  for (const ot::Point& p : poly) {
    const ot::Point q = f(p);
    if (!s.empty()) s += ' ';
    s += num(q.x()) + ',' + num(q.y());
  }
  return s;
}

// Light to dark blue.
std::string shade(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const auto mix = [t](int a, int b) { return static_cast<int>(std::lround(a + (b - a) * t)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(0xf7, 0x08), mix(0xfb, 0x30), mix(0xff, 0x6b));
  return buf;
}

}  // namespace

std::string render_svg(const ot::LaguerreDiagram& diagram, const ot::Vec& masses,
                       const ot::PolygonalDensity& rho) {
  const auto& poly = rho.polygon();
  ot::Point lo = poly.front();
  ot::Point hi = poly.front();
  for (const ot::Point& p : poly) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double extent = std::max(hi.x() - lo.x(), hi.y() - lo.y());
  const Frame f{lo, extent > 0.0 ? kViewport / extent : 1.0};
  const double top = masses.size() > 0 ? masses.maxCoeff() : 1.0;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" "
        "viewBox=\"0 0 1000 1000\">\n";
  os << "<polygon class=\"domain\" points=\"" << point_list(poly, f)
     << "\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n";
  for (std::size_t i = 0; i < diagram.cells.size(); ++i) {
    const auto& cell = diagram.cells[i];
    if (cell.empty()) continue;
    const double m = masses[static_cast<Eigen::Index>(i)];
    os << "<polygon class=\"cell\" data-site=\"" << i << "\" data-mass=\"" << m << "\" points=\""
       << point_list(cell.vertices, f) << "\" fill=\"" << shade(top > 0.0 ? m / top : 0.0)
       << "\" stroke=\"none\"/>\n";
  }
  for (const ot::LaguerreEdge& e : diagram.edges) {
    const ot::Point a = f(e.a);
    const ot::Point b = f(e.b);
    os << "<line class=\"edge\" x1=\"" << num(a.x()) << "\" y1=\"" << num(a.y()) << "\" x2=\""
       << num(b.x()) << "\" y2=\"" << num(b.y()) << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  }
  for (const ot::Point& s : diagram.sites) {
    const ot::Point q = f(s);
    os << "<circle class=\"site\" cx=\"" << num(q.x()) << "\" cy=\"" << num(q.y())
       << "\" r=\"4\" fill=\"#d62728\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace otcli
