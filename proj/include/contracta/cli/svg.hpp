#pragma once

#include <string>
#include <vector>

#include "contracta/polytope.hpp"

namespace contracta::cli {

/// Draws 2-D sets largest-area first. Output bytes depend only on the input.
/// Throws DimensionMismatch for any set that is not 2-D.
std::string render_svg(const std::vector<CSetPolytope>& sets);

void write_svg(const std::vector<CSetPolytope>& sets, const std::string& path);

}  // namespace contracta::cli
