#pragma once

#include <string>

#include "ot/laguerre.hpp"

namespace otcli {

/// Laguerre diagram as SVG. The bounding box of the domain is mapped to a
/// 1000 x 1000 viewport with the y axis pointing up. Each nonempty cell is one
/// <polygon class="cell"> shaded by its mass; edges are stroked, sites drawn
/// as dots.
std::string render_svg(const ot::LaguerreDiagram& diagram, const ot::Vec& masses,
                       const ot::PolygonalDensity& rho);

}  // namespace otcli
