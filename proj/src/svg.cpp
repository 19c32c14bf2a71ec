#include "pap/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pap {

namespace {

struct Frame {
  double x0, y0, w, h, scale;
  int px, py;
};

Frame fit(const ConvexPoly& frame, int pixel_width) {
  auto [lo, hi] = frame.bounds();
  Frame f;
  f.x0 = lo.x.get_d();
  f.y0 = lo.y.get_d();
  f.w = hi.x.get_d() - f.x0;
  f.h = hi.y.get_d() - f.y0;
  f.px = pixel_width;
  f.scale = pixel_width / f.w;
  f.py = static_cast<int>(f.h * f.scale + 0.5);
  return f;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void emit_poly(std::ostringstream& os, const ConvexPoly& p, const Frame& f,
               const std::string& fill) {
  os << "<polygon points=\"";
  bool first = true;
  for (const auto& v : p.vertices()) {
    if (!first) os << ' ';
    first = false;
    // y flipped: SVG grows downward.
    os << coord((v.x.get_d() - f.x0) * f.scale) << ','
       << coord(f.py - (v.y.get_d() - f.y0) * f.scale);
  }
  os << "\" fill=\"" << fill << "\" stroke=\"#333\" stroke-width=\"0.5\"/>\n";
}

std::string shade(double t) {
  // light blue (low) to dark blue (high)
  int c = static_cast<int>(235 - 180 * std::clamp(t, 0.0, 1.0));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02xe6", c, c);
  return buf;
}

std::string header(const Frame& f) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.px << "\" height=\"" << f.py
     << "\" viewBox=\"0 0 " << f.px << ' ' << f.py << "\">\n";
  return os.str();
}

}  // namespace

std::string svg_render(const PolyDensity& density, const ConvexPoly& frame, int pixel_width) {
  Frame f = fit(frame, pixel_width);
  double lo = 0, hi = 0;
  bool any = false;
  for (const auto& c : density.cells()) {
    double v = c.value.to_double();
    lo = any ? std::min(lo, v) : v;
    hi = any ? std::max(hi, v) : v;
    any = true;
  }
  std::ostringstream os;
  os << header(f);
  for (const auto& c : density.cells()) {
    double v = c.value.to_double();
    double t = hi > lo ? (v - lo) / (hi - lo) : 1.0;
    emit_poly(os, c.poly, f, shade(t));
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_render(const PolySet& set, const ConvexPoly& frame, int pixel_width) {
  Frame f = fit(frame, pixel_width);
  std::ostringstream os;
  os << header(f);
  for (const auto& p : set) emit_poly(os, p, f, shade(1.0));
  os << "</svg>\n";
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::IoError, "cannot write " + path.string());
  out << bytes;
}

}  // namespace pap
