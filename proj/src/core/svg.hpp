#ifndef ELASTICA_CORE_SVG_HPP
#define ELASTICA_CORE_SVG_HPP

#include <string>

#include "path_gradient.hpp"

namespace elastica {

// One row of slice outlines, left to right in time order.
void write_path_svg(const PathOfChains& path, const std::string& file);

// Slice outlines with negative-gradient arrows at the vertices. With
// uniform_scale all arrows share one scale factor across the whole path,
// otherwise each slice is normalized on its own.
void write_gradient_svg(const PathOfChains& path, const GradientField& grad,
                        const std::string& file, bool uniform_scale);

}  // namespace elastica

#endif
