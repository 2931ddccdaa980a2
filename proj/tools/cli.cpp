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

#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "bidir/bounds.hpp"
#include "bidir/parallel.hpp"
#include "bidir/reading.hpp"
#include "bidir/report.hpp"
#include "bidir/version.hpp"
#include "bidir/zoo.hpp"

namespace bidir::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Request {
  std::string channel = "swap";
  std::string quantity = "max-rains";
  double p = 0.5;
  double phi = std::numbers::pi;
  double q = 0.8;
  int d = 2;
  std::uint64_t seed = 1;
  int starts = 32;
  int evals = 400;
  int optimizer_threads = 0;
};

BidirectionalChannel make_channel(const Request& r) {
  const std::string& c = r.channel;
  if (c == "swap") return swap_channel(r.d);
  if (c == "identity") return identity_channel(r.d, r.d);
  if (c == "depolarizing") return completely_depolarizing(r.d, r.d);
  if (c == "partial-swap") return partial_swap(r.p);
  if (c == "partial-swap-traceout") return partial_swap_traceout(r.p);
  if (c == "collective-dephasing" || c == "dephasing") return collective_dephasing_swap(r.p, r.phi);
  if (c == "cnot") return cnot_channel();
  if (c == "noisy-cnot") return noisy_cnot(r.q);
  if (c == "erasure-cell") return induced_bidirectional_channel(erasure_wiretap_cell(r.d, r.p));
  throw UsageError("unknown channel '" + c + "'");
}

OptimizerConfig optimizer(const Request& r) {
  OptimizerConfig c;
  c.seed = r.seed;
  c.starts = r.starts;
  c.max_evaluations = r.evals;
  c.threads = r.optimizer_threads;
  return c;
}

BoundReport compute(const Request& r) {
  const bool cell = r.channel == "erasure-cell";
  if (r.quantity == "max-rains") return bidirectional_max_rains(make_channel(r));
  if (r.quantity == "emax") return bidirectional_emax(make_channel(r), optimizer(r));
  if (r.quantity == "reading-bound" || r.quantity == "erasure-formula") {
    if (!cell) throw UsageError(r.quantity + " requires --channel erasure-cell");
    if (r.quantity == "erasure-formula") return erasure_formula_report(r.d, r.p);
    return reading_bound_via_emax(erasure_wiretap_cell(r.d, r.p), optimizer(r));
  }
  throw UsageError("unknown quantity '" + r.quantity + "'");
}

struct Grid {
  double start = 0.0;
  double stop = 1.0;
  int steps = 21;

  double at(int i) const { return i == steps - 1 ? stop : start + (stop - start) * i / (steps - 1); }
};

Grid parse_grid(const std::string& text) {
  Grid g;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> g.start >> c1 >> g.stop >> c2 >> g.steps) || c1 != ':' || c2 != ':' || !in.eof()) {
    throw UsageError("--grid expects start:stop:steps, got '" + text + "'");
  }
  if (g.steps < 2) throw UsageError("--grid needs at least 2 steps");
  if (!(g.start < g.stop)) throw UsageError("--grid needs start < stop");
  return g;
}

void set_param(Request& r, const std::string& name, double value) {
  if (name == "p") {
    r.p = value;
  } else if (name == "phi") {
    r.phi = value;
  } else if (name == "q") {
    r.q = value;
  } else {
    throw UsageError("cannot sweep parameter '" + name + "' (use p, phi or q)");
  }
}

// Writes to --out when given, otherwise to the default stream.
void emit(const std::string& path, std::ostream& fallback, const std::string& text) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << text;
}

int cmd_bound(const Request& r, const std::string& out_path, std::ostream& out) {
  emit(out_path, out, report_json(compute(r)));
  return kExitOk;
}

int cmd_sweep(const Request& base, const std::string& param, const Grid& grid, bool timing,
              const std::string& out_path, std::ostream& out) {
  std::vector<SweepRow> rows(static_cast<std::size_t>(grid.steps));
  Request inner = base;
  inner.optimizer_threads = 1;
  parallel_for(rows.size(), [&](std::size_t i) {
    Request r = inner;
    const double x = grid.at(static_cast<int>(i));
    set_param(r, param, x);
    const auto t0 = std::chrono::steady_clock::now();
    const BoundReport rep = compute(r);
    const auto t1 = std::chrono::steady_clock::now();
    rows[i] = {x, rep.value_bits, std::isfinite(rep.gap) ? rep.gap : 0.0,
               std::chrono::duration<double, std::milli>(t1 - t0).count()};
  });
  std::ostringstream csv;
  write_sweep_csv(csv, rows, timing);
  emit(out_path, out, csv.str());
  return kExitOk;
}

int verify_amortization(const Request& r, bool channel_given, int trials, std::ostream& out) {
  std::vector<BidirectionalChannel> channels;
  if (channel_given) {
    channels.push_back(make_channel(r));
  } else {
    channels = {partial_swap(0.3), noisy_cnot(0.8), collective_dephasing_swap(0.5, std::numbers::pi)};
  }
  std::vector<double> bits;
  for (const auto& ch : channels) bits.push_back(bidirectional_max_rains(ch).value_bits);

  Rng rng(r.seed);
  int ok = 0;
  double worst = std::numeric_limits<double>::infinity();
  out << std::setprecision(8);
  for (int t = 0; t < trials; ++t) {
    const std::size_t k = static_cast<std::size_t>(t) % channels.size();
    const BidirectionalChannel& ch = channels[k];
    const SystemDims& in = ch.in_dims();
    const SystemDims dims({kRefA, in.label(0), in.label(1), kRefB}, {in.dim_at(0), in.dim_at(0), in.dim_at(1), in.dim_at(1)});
    const DenseOperator rho = random_density(dims, rng, 1 + t % 4);
    const AmortizationResult a = amortization_check(ch, rho, bits[k]);
    const double slack = a.rhs - a.lhs;
    worst = std::min(worst, slack);
    ok += a.satisfied ? 1 : 0;
    out << "trial " << t << ' ' << ch.name() << " lhs " << a.lhs << " rhs " << a.rhs << " slack " << slack
        << (a.satisfied ? " ok" : " VIOLATED") << '\n';
  }
  out << "amortization: " << ok << '/' << trials << " satisfied, min slack " << worst << '\n';
  return ok == trials ? kExitOk : kExitNumerical;
}

int verify_achievability(std::ostream& out) {
  const AchievabilityReport rep = dephasing_achievability_sim();
  out << std::setprecision(3) << std::scientific;
  out << "mixture deviation " << rep.mixture_deviation << '\n';
  for (const auto& b : rep.branches) {
    out << "outcome (" << (b.outcome_first ? '-' : '+') << ',' << (b.outcome_second ? '-' : '+') << ") probability "
        << std::defaultfloat << b.probability << std::scientific << " fidelity before " << b.fidelity_before
        << " corrected " << b.fidelity_corrected << '\n';
  }
  const bool pass = rep.mixture_deviation < 1e-12 && rep.max_fidelity_error < 1e-12;
  out << "achievability: " << (pass ? "all branches fidelity 1" : "FAILED") << ", max fidelity error "
      << rep.max_fidelity_error << '\n';
  return pass ? kExitOk : kExitNumerical;
}

int verify_bicovariance(const Request& r, int trials, std::ostream& out) {
  const BidirectionalChannel ch = make_channel(r);
  BicovarianceReps reps;
  if (r.channel == "cnot" || r.channel == "noisy-cnot") {
    reps = cnot_pauli_reps();
  } else if (r.channel == "identity" || r.channel == "depolarizing") {
    reps = trivial_output_reps(r.d, r.d);
  } else {
    throw UsageError("no bicovariance representations known for '" + r.channel + "'");
  }
  const double deviation = check_bicovariance(ch, reps);
  Rng rng(r.seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const DenseOperator rho = random_density(ch.in_dims(), rng);
    worst = std::max(worst, trace_distance(teleportation_simulate(ch, reps, rho), apply_channel(ch, rho)));
  }
  const bool pass = deviation < 1e-12 && worst < 1e-8;
  out << std::setprecision(3) << std::scientific << "bicovariance deviation " << deviation << '\n'
      << "teleportation max trace distance " << worst << " over " << trials << " inputs\n"
      << "bicovariance: " << (pass ? "ok" : "FAILED") << '\n';
  return pass ? kExitOk : kExitNumerical;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounds on entanglement and key generation over bidirectional channels", "bidir_bounds"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "Flat key=value file; command-line flags win");
  app.require_subcommand(1);

  Request req;
  std::string out_path, grid_text = "0:1:21", param = "p";
  int trials = -1;
  bool no_timing = false;
  auto* channel_opt = app.add_option("--channel", req.channel, "Channel name")->capture_default_str();
  app.add_option("--quantity", req.quantity, "max-rains | emax | reading-bound | erasure-formula")
      ->capture_default_str();
  app.add_option("--p", req.p, "Channel parameter p")->capture_default_str();
  app.add_option("--phi", req.phi, "Dephasing angle")->capture_default_str();
  app.add_option("--q", req.q, "noisy-cnot probability")->capture_default_str();
  app.add_option("--d", req.d, "Local dimension")->capture_default_str();
  app.add_option("--seed", req.seed, "Random seed")->capture_default_str();
  app.add_option("--starts", req.starts, "Optimizer starts (emax)")->capture_default_str();
  app.add_option("--evals", req.evals, "Inner evaluations per start (emax)")->capture_default_str();
  app.add_option("--grid", grid_text, "Sweep grid start:stop:steps")->capture_default_str();
  app.add_option("--param", param, "Swept parameter (p, phi, q)")->capture_default_str();
  app.add_option("--trials", trials, "Random trials for verify");
  app.add_option("--out", out_path, "Output file (default stdout)");
  app.add_flag("--no-timing", no_timing, "Write 0 in the wall_time_ms column");

  auto* bound = app.add_subcommand("bound", "Compute one bound and print it as JSON")->fallthrough();
  auto* sweep = app.add_subcommand("sweep", "Tabulate a bound over a parameter grid as CSV")->fallthrough();
  auto* verify = app.add_subcommand("verify", "Run a consistency check")->fallthrough();
  std::string suite;
  verify->add_option("suite", suite, "amortization | achievability | bicovariance")
      ->required()
      ->check(CLI::IsMember({"amortization", "achievability", "bicovariance"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, ee;
    const int code = app.exit(e, o, ee);
    out << o.str();
    err << ee.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (req.starts < 1 || req.evals < 1) throw UsageError("--starts and --evals must be positive");
    if (*bound) return cmd_bound(req, out_path, out);
    if (*sweep) return cmd_sweep(req, param, parse_grid(grid_text), !no_timing, out_path, out);
    if (suite == "amortization") return verify_amortization(req, channel_opt->count() > 0, trials < 0 ? 50 : trials, out);
    if (suite == "achievability") return verify_achievability(out);
    if (channel_opt->count() == 0) req.channel = "cnot";
    return verify_bicovariance(req, trials < 0 ? 20 : trials, out);
  } catch (const conic::SolveError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const conic::SizeLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace bidir::cli
