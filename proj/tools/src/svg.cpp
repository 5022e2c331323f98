// Copyright 2026 The hbdcover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hbd_cli/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

namespace hbd::cli {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

// Linear blend from blue to red.
std::string gradient(double u) {
  const int r0 = 0x2c, g0 = 0x7b, b0 = 0xb6;
  const int r1 = 0xd7, g1 = 0x19, b1 = 0x1c;
  const auto mix = [u](int a, int b) {
    return static_cast<int>(a + (b - a) * u + 0.5);
  };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(r0, r1), mix(g0, g1), mix(b0, b1));
  return buf;
}

}  // namespace

std::string render_svg(std::span<const SvgCell> cells, const std::string& title,
                       double width_px) {
  Box view{{0, 0}, {1, 1}};
  if (!cells.empty()) {
    view = cells.front().box;
    for (const SvgCell& c : cells) {
      view.lo = {std::min(view.lo.x, c.box.lo.x), std::min(view.lo.y, c.box.lo.y)};
      view.hi = {std::max(view.hi.x, c.box.hi.x), std::max(view.hi.y, c.box.hi.y)};
    }
  }
  const double extent = std::max({view.width(), view.height(), 1e-12});
  const double margin = 0.02 * extent;
  const double vx = view.lo.x - margin;
  const double vy = view.lo.y - margin;
  const double vw = view.width() + 2 * margin;
  const double vh = view.height() + 2 * margin;
  const double height_px = width_px * vh / std::max(vw, 1e-12);
  const double stroke = extent / 400.0;

  // y grows upwards in the model; flip around the view box.
  const auto y_of = [&](double y) { return vy + vh - (y - vy); };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width_px) + "\" height=\"" +
       fmt(height_px) + "\" viewBox=\"" + fmt(vx) + " " + fmt(vy) + " " + fmt(vw) + " " +
       fmt(vh) + "\">\n";
  s += "<title>" + escape(title) + "</title>\n";
  s += "<g fill-opacity=\"0.35\" stroke=\"#333333\" stroke-width=\"" + fmt(stroke) + "\">\n";
  const double last = cells.size() > 1 ? static_cast<double>(cells.size() - 1) : 1.0;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const Box& b = cells[k].box;
    s += "<rect x=\"" + fmt(b.lo.x) + "\" y=\"" + fmt(y_of(b.hi.y)) + "\" width=\"" +
         fmt(b.width()) + "\" height=\"" + fmt(b.height()) + "\" fill=\"" +
         gradient(static_cast<double>(k) / last) + "\"><title>" + std::to_string(k + 1) +
         "</title></rect>\n";
  }
  s += "</g>\n";
  if (cells.size() > 1) {
    s += "<polyline fill=\"none\" stroke=\"#000000\" stroke-width=\"" + fmt(stroke) +
         "\" points=\"";
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) s += ' ';
      s += fmt(cells[k].marker.x) + "," + fmt(y_of(cells[k].marker.y));
    }
    s += "\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace hbd::cli
