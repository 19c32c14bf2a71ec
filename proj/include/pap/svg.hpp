#pragma once

#include <filesystem>
#include <string>

#include "pap/pwi2d.hpp"

namespace pap {

/// Value-shaded rendering of a cell complex; floats appear only here, at the
/// emission boundary. Output bytes are deterministic.
std::string svg_render(const PolyDensity& density, const ConvexPoly& frame, int pixel_width = 640);
std::string svg_render(const PolySet& set, const ConvexPoly& frame, int pixel_width = 640);

void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace pap
