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

#pragma once

#include <span>
#include <string>

#include "hbd/geometry.hpp"

namespace hbd::cli {

struct SvgCell {
  Box box;
  Vec2 marker;  // point joined by the enumeration polyline
};

// Cells drawn in the given order, filled on a gradient by position, with a
// polyline through their markers. Empty input gives a valid empty document.
std::string render_svg(std::span<const SvgCell> cells, const std::string& title,
                       double width_px = 800.0);

}  // namespace hbd::cli
