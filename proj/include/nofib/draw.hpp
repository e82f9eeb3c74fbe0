#pragma once

// Schematic band-and-tube drawings of trisection diagrams as static SVG.
// One horizontal band stands for the page, crosscap markers for its genus,
// notches for its boundary, and one tube per core curve triple carrying the
// alpha/beta/gamma strokes. Arc-derived curves are listed in the legend.

#include <sstream>
#include <string>

#include "nofib/trisect.hpp"

namespace nofib {

inline std::string draw_diagram_svg(const TrisectionDiagram& d) {
  int tubes = d.core;
  int genus = d.surface.genus;
  int width = 160 + std::max(tubes, genus) * 70 + 120;
  int height = 240;
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
    << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
    << height << "\">\n";
  o << "  <title>" << (d.relative ? "relative " : "")
    << "trisection diagram, " << d.surface.to_string() << "</title>\n";

  int band_y = 150, band_h = 50;
  o << "  <rect x=\"40\" y=\"" << band_y << "\" width=\"" << width - 80
    << "\" height=\"" << band_h
    << "\" fill=\"#f2e8d5\" stroke=\"#555\" stroke-width=\"2\"/>\n";

  // crosscap markers along the band
  for (int g = 0; g < genus && g < 24; ++g) {
    int cx = 70 + g * 26;
    int cy = band_y + band_h / 2;
    o << "  <circle cx=\"" << cx << "\" cy=\"" << cy
      << "\" r=\"9\" fill=\"none\" stroke=\"#555\"/>\n";
    o << "  <line x1=\"" << cx - 6 << "\" y1=\"" << cy - 6 << "\" x2=\""
      << cx + 6 << "\" y2=\"" << cy + 6 << "\" stroke=\"#555\"/>\n";
    o << "  <line x1=\"" << cx - 6 << "\" y1=\"" << cy + 6 << "\" x2=\""
      << cx + 6 << "\" y2=\"" << cy - 6 << "\" stroke=\"#555\"/>\n";
  }

  // boundary notches on the right edge
  for (int b = 0; b < d.surface.boundary && b < 12; ++b) {
    int cy = band_y + 10 + (b * 30) % band_h;
    o << "  <circle cx=\"" << width - 40 << "\" cy=\"" << cy
      << "\" r=\"7\" fill=\"#fff\" stroke=\"#555\"/>\n";
  }

  // one tube per core triple
  for (int i = 0; i < tubes; ++i) {
    int x = 120 + i * 70;
    const char* colors[3] = {"#c0392b", "#2471a3", "#1e8449"};
    for (int s = 0; s < 3; ++s) {
      int r = 28 - s * 7;
      o << "  <path d=\"M " << x - r << ' ' << band_y << " A " << r << ' '
        << r << " 0 0 1 " << x + r << ' ' << band_y
        << "\" fill=\"none\" stroke=\"" << colors[s]
        << "\" stroke-width=\"2\"/>\n";
    }
    o << "  <text x=\"" << x << "\" y=\"" << band_y - 36
      << "\" font-size=\"11\" text-anchor=\"middle\">" << d.gamma[i]
      << "</text>\n";
  }

  // legend
  o << "  <text x=\"40\" y=\"24\" font-size=\"12\">alpha: red, beta: blue, "
       "gamma: green; core " << d.core << " of " << d.size()
    << " curves per system</text>\n";
  if (d.size() > d.core)
    o << "  <text x=\"40\" y=\"42\" font-size=\"12\">" << d.size() - d.core
      << " doubled cut-arc curves per system (parallel triples)</text>\n";
  if (d.relative)
    o << "  <text x=\"40\" y=\"60\" font-size=\"12\">cut arcs: "
      << d.arcs_alpha << ' ' << d.arcs_beta << ' ' << d.arcs_gamma
      << "</text>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace nofib
