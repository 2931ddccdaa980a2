// Copyright 2026 The bidir-bounds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bidir/weyl.hpp"

#include <cmath>
#include <numbers>

namespace bidir {

CMatrix heisenberg_weyl(int d, int a, int b) {
  if (d < 1) throw std::invalid_argument("heisenberg_weyl: d must be positive");
  if (a < 0 || a >= d || b < 0 || b >= d) {
    throw std::invalid_argument("heisenberg_weyl: exponents must lie in [0, d)");
  }
  CMatrix out = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((b * j) % d) / d;
    out((j + a) % d, j) = std::polar(1.0, angle);
  }
  return out;
}

std::vector<CMatrix> heisenberg_weyl_group(int d) {
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(d) * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) out.push_back(heisenberg_weyl(d, a, b));
  }
  return out;
}

}  // namespace bidir
