#pragma once

#include "tccc/divisors.hpp"

#include <string>

namespace tccc {

struct RenderOptions {
    double scale = 60.0; // pixels per unit
    bool color_stalks = true;
};

/// SVG of a two-dimensional twisted polytope: shard boundary lines, polytope
/// edges with co-orientation hairs, and cells shaded by stalk degree.
/// Throws Unsupported for other dimensions.
std::string render_svg(const Divisor& chi, const RenderOptions& options = {});

} // namespace tccc
