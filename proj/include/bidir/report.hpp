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

#include <ostream>
#include <string>
#include <vector>

#include "bidir/bounds.hpp"

namespace bidir {

/// Pretty-printed JSON with sorted keys; contains no timing, so identical
/// inputs give identical bytes. Non-finite numbers become null.
std::string report_json(const BoundReport& report);

struct SweepRow {
  double param = 0.0;
  double value_bits = 0.0;
  double gap = 0.0;
  double wall_time_ms = 0.0;
};

inline const char* const kCsvHeader = "param,value_bits,gap,wall_time_ms";

/// Writes kCsvHeader and one line per row. With timing off the last column is 0.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool timing = true);

}  // namespace bidir
