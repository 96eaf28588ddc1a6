#include "foldmap/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace foldmap::cli {

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::optional<std::string> render_svg(const Figure& f) {
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_x;
  std::size_t count = 0;
  auto extend = [&](const Point& p) {
    lo_x = std::min(lo_x, p[0]);
    hi_x = std::max(hi_x, p[0]);
    lo_y = std::min(lo_y, p[1]);
    hi_y = std::max(hi_y, p[1]);
  };
  for (const auto& layer : f.layers)
    for (const auto& p : layer.points) {
      if (p.size() != 2) return std::nullopt;
      extend(p);
      ++count;
    }
  if (count == 0) return std::nullopt;
  for (const auto& poly : f.polygons)
    for (const auto& p : poly) {
      if (p.size() != 2) return std::nullopt;
      extend(p);
    }

  const double size = 480., pad = 30.;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double scale = (size - 2. * pad) / span;
  auto sx = [&](double x) { return fixed(pad + (x - lo_x) * scale); };
  auto sy = [&](double y) { return fixed(size - pad - (y - lo_y) * scale); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size + 20
      << "\" viewBox=\"0 0 " << size << ' ' << size + 20 << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << pad << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">" << escape(f.title)
      << "</text>\n";
  for (std::size_t i = 0; i < f.polygons.size(); ++i) {
    if (f.polygons[i].empty()) continue;
    const std::string color = i < f.polygon_colors.size() ? f.polygon_colors[i] : "black";
    out << "<polygon fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t k = 0; k < f.polygons[i].size(); ++k)
      out << (k ? " " : "") << sx(f.polygons[i][k][0]) << ',' << sy(f.polygons[i][k][1]);
    out << "\"/>\n";
  }
  for (const auto& layer : f.layers) {
    out << "<g fill=\"" << layer.color << "\" fill-opacity=\"0.6\">\n";
    for (const auto& p : layer.points) out << "<circle cx=\"" << sx(p[0]) << "\" cy=\"" << sy(p[1]) << "\" r=\"1.6\"/>\n";
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace foldmap::cli
