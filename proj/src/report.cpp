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

#include "bidir/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace bidir {

namespace {

nlohmann::json number(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

}  // namespace

std::string report_json(const BoundReport& r) {
  nlohmann::json j;
  j["quantity"] = r.quantity;
  j["channel"] = r.channel;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : r.params) params[k] = number(v);
  j["params"] = params;
  j["value_bits"] = number(r.value_bits);
  j["optimum"] = number(r.optimum);
  j["gap"] = number(r.gap);
  j["iterations"] = r.iterations;
  j["feasible_set"] = r.feasible_set;
  j["provenance"] = r.provenance;
  if (r.optimizer) {
    const OptimizerDiagnostics& d = *r.optimizer;
    nlohmann::json starts = nlohmann::json::array();
    for (const auto& s : d.per_start) {
      nlohmann::json e{{"index", s.index}, {"ok", s.ok}, {"value_bits", number(s.value_bits)},
                       {"evaluations", s.evaluations}};
      if (!s.error.empty()) e["error"] = s.error;
      starts.push_back(e);
    }
    nlohmann::json trace = nlohmann::json::array();
    for (double v : d.best_trace) trace.push_back(number(v));
    j["optimizer"] = {{"starts", d.starts}, {"seed", d.seed},      {"best_index", d.best_index},
                      {"per_start", starts}, {"best_trace", trace}};
  }
  return j.dump(2) + "\n";
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool timing) {
  out << kCsvHeader << '\n';
  for (const auto& row : rows) {
    out << fmt("%.10g", row.param) << ',' << fmt("%.10f", row.value_bits) << ',' << fmt("%.3e", row.gap) << ','
        << (timing ? fmt("%.1f", row.wall_time_ms) : std::string("0")) << '\n';
  }
}

}  // namespace bidir
