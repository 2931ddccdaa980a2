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

#pragma once

#include "bidir/operator.hpp"

namespace bidir {

/// X^a Z^b with X|j> = |j+1 mod d> and Z|j> = exp(2 pi i j / d)|j>.
CMatrix heisenberg_weyl(int d, int a, int b);

/// All d^2 operators X^a Z^b, indexed a * d + b.
std::vector<CMatrix> heisenberg_weyl_group(int d);

}  // namespace bidir
