#include "contracta/cli/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "contracta/error.hpp"

namespace contracta::cli {

namespace {

constexpr double kCanvas = 480.0;
constexpr double kMargin = 20.0;
constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

std::vector<Vector> ordered_outline(const CSetPolytope& c) {
  std::vector<Vector> vs = vertices(c.base());
  double cx = 0.0, cy = 0.0;
  for (const auto& v : vs) {
    cx += v[0];
    cy += v[1];
  }
  cx /= static_cast<double>(vs.size());
  cy /= static_cast<double>(vs.size());
  std::sort(vs.begin(), vs.end(), [&](const Vector& a, const Vector& b) {
    return std::atan2(a[1] - cy, a[0] - cx) < std::atan2(b[1] - cy, b[0] - cx);
  });
  return vs;
}

double area(const std::vector<Vector>& poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vector& p = poly[i];
    const Vector& q = poly[(i + 1) % poly.size()];
    s += p[0] * q[1] - q[0] * p[1];
  }
  return std::abs(s) / 2.0;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string render_svg(const std::vector<CSetPolytope>& sets) {
  std::vector<std::vector<Vector>> outlines;
  for (const auto& s : sets) {
    if (s.dimension() != 2)
      throw Error(ErrorCode::DimensionMismatch, "SVG rendering needs 2-D sets, got dimension " + std::to_string(s.dimension()));
    outlines.push_back(ordered_outline(s));
  }
  std::vector<std::size_t> order(outlines.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return area(outlines[a]) > area(outlines[b]); });

  double extent = 0.0;
  for (const auto& o : outlines)
    for (const auto& v : o) extent = std::max({extent, std::abs(v[0]), std::abs(v[1])});
  if (extent == 0.0) extent = 1.0;
  const double unit = (kCanvas / 2.0 - kMargin) / extent;
  auto sx = [&](double x) { return kCanvas / 2.0 + unit * x; };
  auto sy = [&](double y) { return kCanvas / 2.0 - unit * y; };

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kCanvas) + "\" height=\"" + fmt(kCanvas) +
         "\" viewBox=\"0 0 " + fmt(kCanvas) + " " + fmt(kCanvas) + "\">\n";
  if (!outlines.empty()) {
    out += "  <line x1=\"0\" y1=\"" + fmt(sy(0)) + "\" x2=\"" + fmt(kCanvas) + "\" y2=\"" + fmt(sy(0)) +
           "\" stroke=\"#bbbbbb\" stroke-width=\"0.5\"/>\n";
    out += "  <line x1=\"" + fmt(sx(0)) + "\" y1=\"0\" x2=\"" + fmt(sx(0)) + "\" y2=\"" + fmt(kCanvas) +
           "\" stroke=\"#bbbbbb\" stroke-width=\"0.5\"/>\n";
  }
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const std::size_t idx = order[rank];
    const char* color = kPalette[idx % kPalette.size()];
    std::string pts;
    for (const auto& v : outlines[idx]) {
      if (!pts.empty()) pts += ' ';
      pts += fmt(sx(v[0])) + "," + fmt(sy(v[1]));
    }
    out += "  <polygon data-index=\"" + std::to_string(idx) + "\" points=\"" + pts + "\" fill=\"" + color +
           "\" fill-opacity=\"0.15\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
    for (const auto& v : outlines[idx])
      out += "  <circle cx=\"" + fmt(sx(v[0])) + "\" cy=\"" + fmt(sy(v[1])) + "\" r=\"2\" fill=\"" + color + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

void write_svg(const std::vector<CSetPolytope>& sets, const std::string& path) {
  const std::string text = render_svg(sets);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  f << text;
}

}  // namespace contracta::cli
