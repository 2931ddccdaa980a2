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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bidir/bounds.hpp"
#include "bidir/reading.hpp"
#include "bidir/report.hpp"
#include "bidir/version.hpp"
#include "bidir/weyl.hpp"
#include "bidir/zoo.hpp"

#ifdef BIDIR_WITH_CLI
#include "cli.hpp"
#endif

namespace py = pybind11;
using namespace bidir;

namespace {

DenseOperator as_operator(const CMatrix& m, const LabelSet& labels, const std::vector<int>& dims) {
  return DenseOperator(m, SystemDims(labels, dims));
}

py::dict value_dict(const EntanglementValue& v) {
  py::dict d;
  d["value_bits"] = v.value_bits;
  d["optimum"] = v.optimum;
  d["gap"] = v.gap;
  d["iterations"] = v.iterations;
  d["feasible_set"] = v.feasible_set;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bounds on entanglement and secret key from bidirectional channels";
  m.attr("__version__") = kVersion;

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<conic::SizeLimitError>(m, "SizeLimitError", PyExc_RuntimeError);
  py::register_exception<conic::SolveError>(m, "SolveError", PyExc_RuntimeError);

  py::class_<BidirectionalChannel>(m, "BidirectionalChannel")
      .def_property_readonly("name", &BidirectionalChannel::name)
      .def_property_readonly("params", &BidirectionalChannel::params)
      .def_property_readonly("input_labels", [](const BidirectionalChannel& c) { return c.in_dims().labels(); })
      .def_property_readonly("input_dims", [](const BidirectionalChannel& c) { return c.in_dims().dims(); })
      .def_property_readonly("output_labels", [](const BidirectionalChannel& c) { return c.out_dims().labels(); })
      .def_property_readonly("output_dims", [](const BidirectionalChannel& c) { return c.out_dims().dims(); })
      .def_property_readonly("kraus",
                             [](const BidirectionalChannel& c) {
                               std::vector<CMatrix> out;
                               for (const auto& k : c.kraus()) out.push_back(k.matrix());
                               return out;
                             })
      .def("completeness_residual", &BidirectionalChannel::completeness_residual)
      .def("choi", [](const BidirectionalChannel& c) { return choi_of_channel(c).matrix(); })
      .def("apply", [](const BidirectionalChannel& c, const CMatrix& rho) {
        return apply_channel(c, DenseOperator(rho, c.in_dims())).matrix();
      })
      .def("__repr__", [](const BidirectionalChannel& c) { return "<BidirectionalChannel " + c.name() + ">"; });

  m.def("swap_channel", &swap_channel, py::arg("d") = 2);
  m.def("identity_channel", &identity_channel, py::arg("d_a") = 2, py::arg("d_b") = 2);
  m.def("completely_depolarizing", &completely_depolarizing, py::arg("d_a") = 2, py::arg("d_b") = 2);
  m.def("partial_swap", &partial_swap, py::arg("p"));
  m.def("partial_swap_traceout", &partial_swap_traceout, py::arg("p"));
  m.def("collective_dephasing_swap", &collective_dephasing_swap, py::arg("p"), py::arg("phi"));
  m.def("cnot_channel", &cnot_channel);
  m.def("noisy_cnot", &noisy_cnot, py::arg("q"));
  m.def("erasure_cell_channel", [](int d, double p) { return induced_bidirectional_channel(erasure_wiretap_cell(d, p)); },
        py::arg("d"), py::arg("p"));

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("quantity", &BoundReport::quantity)
      .def_readonly("channel", &BoundReport::channel)
      .def_readonly("params", &BoundReport::params)
      .def_readonly("value_bits", &BoundReport::value_bits)
      .def_readonly("optimum", &BoundReport::optimum)
      .def_readonly("gap", &BoundReport::gap)
      .def_readonly("iterations", &BoundReport::iterations)
      .def_readonly("feasible_set", &BoundReport::feasible_set)
      .def_readonly("provenance", &BoundReport::provenance)
      .def("to_json", &report_json)
      .def("__repr__", [](const BoundReport& r) {
        std::ostringstream o;
        o << "<BoundReport " << r.quantity << " " << r.channel << " " << r.value_bits << " bits>";
        return o.str();
      });

  m.def("bidirectional_max_rains", [](const BidirectionalChannel& c) { return bidirectional_max_rains(c); },
        py::arg("channel"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "bidirectional_emax",
      [](const BidirectionalChannel& c, int starts, std::uint64_t seed, int max_evaluations, int threads) {
        OptimizerConfig cfg;
        cfg.starts = starts;
        cfg.seed = seed;
        cfg.max_evaluations = max_evaluations;
        cfg.threads = threads;
        return bidirectional_emax(c, cfg);
      },
      py::arg("channel"), py::arg("starts") = 32, py::arg("seed") = 1, py::arg("max_evaluations") = 400,
      py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

  m.def(
      "max_rains_state",
      [](const CMatrix& rho, const LabelSet& labels, const std::vector<int>& dims, const LabelSet& left,
         const LabelSet& right) { return value_dict(max_rains_state(as_operator(rho, labels, dims), {left, right})); },
      py::arg("rho"), py::arg("labels"), py::arg("dims"), py::arg("left"), py::arg("right"));
  m.def(
      "emax_ppt_state",
      [](const CMatrix& rho, const LabelSet& labels, const std::vector<int>& dims, const LabelSet& left,
         const LabelSet& right) { return value_dict(emax_ppt_state(as_operator(rho, labels, dims), {left, right})); },
      py::arg("rho"), py::arg("labels"), py::arg("dims"), py::arg("left"), py::arg("right"));
  m.def(
      "is_ppt",
      [](const CMatrix& rho, const LabelSet& labels, const std::vector<int>& dims, const LabelSet& left,
         const LabelSet& right) {
        const PptTest t = is_ppt(as_operator(rho, labels, dims), {left, right});
        return py::make_tuple(t.ppt, t.min_eigenvalue);
      },
      py::arg("rho"), py::arg("labels"), py::arg("dims"), py::arg("left"), py::arg("right"));

  m.def("heisenberg_weyl", &heisenberg_weyl, py::arg("d"), py::arg("a"), py::arg("b"));
  m.def("erasure_private_reading_bound", &erasure_private_reading_bound, py::arg("d"), py::arg("p"));
  m.def("strong_converse_error", &strong_converse_error, py::arg("bound_bits"), py::arg("n"), py::arg("rate_bits"));

  m.def(
      "dephasing_achievability_sim",
      [](bool measure_a_and_lb) {
        const AchievabilityReport r = dephasing_achievability_sim(measure_a_and_lb);
        py::list branches;
        for (const auto& b : r.branches) {
          py::dict d;
          d["outcomes"] = py::make_tuple(b.outcome_first, b.outcome_second);
          d["probability"] = b.probability;
          d["fidelity_before"] = b.fidelity_before;
          d["fidelity_corrected"] = b.fidelity_corrected;
          branches.append(d);
        }
        py::dict out;
        out["mixture_deviation"] = r.mixture_deviation;
        out["max_fidelity_error"] = r.max_fidelity_error;
        out["branches"] = branches;
        return out;
      },
      py::arg("measure_a_and_lb") = true);

#ifdef BIDIR_WITH_CLI
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");
#endif
}
