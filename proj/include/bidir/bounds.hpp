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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bidir/channel.hpp"
#include "bidir/conic.hpp"
#include "bidir/entanglement.hpp"

namespace bidir {

struct StartRecord {
  int index = 0;
  bool ok = false;
  double value_bits = 0.0;
  int evaluations = 0;
  std::string error;
};

struct OptimizerDiagnostics {
  int starts = 0;
  std::uint64_t seed = 0;
  int best_index = -1;
  std::vector<StartRecord> per_start;
  /// best_trace[i] = best value over starts 0..i; non-decreasing.
  std::vector<double> best_trace;
};

/// A bound value in bits with everything needed to interpret it.
struct BoundReport {
  std::string quantity;
  std::string channel;
  std::map<std::string, double> params;
  double value_bits = 0.0;
  /// The optimum before taking log2 (NaN for analytic values).
  double optimum = 0.0;
  double gap = 0.0;
  int iterations = 0;
  std::string feasible_set;
  std::map<std::string, std::string> provenance;
  std::optional<OptimizerDiagnostics> optimizer;
};

struct MaxRainsOptions {
  conic::Tolerances tolerances;
  /// Largest |L_A| |A| |B| |L_B| accepted.
  int max_choi_dim = 256;
};

/// log2 of min ||Tr_{A B}(V + Y)||_inf s.t. V, Y >= 0 on L_A A B L_B and
/// T_{B L_B}(V - Y) >= J. Throws conic::SizeLimitError for oversized channels
/// and conic::SolveError when the SDP is not solved.
BoundReport bidirectional_max_rains(const BidirectionalChannel& channel, const MaxRainsOptions& options = {});

struct OptimizerConfig {
  int starts = 32;
  std::uint64_t seed = 1;
  /// Inner SDP evaluations allowed per start (including the initial point).
  int max_evaluations = 400;
  double initial_step = 0.25;
  double min_step = 1e-3;
  /// Worker threads for independent starts (<= 0: worker_count()).
  int threads = 0;
  EntanglementOptions inner;
};

/// PPT-relaxed E_max of N(psi_{L_A A'} ⊗ phi_{B' L_B}) across L_A A : B L_B.
/// psi has dimension |A'|^2 (L_A first), phi has |B'|^2 (B' first).
EntanglementValue emax_at_input(const BidirectionalChannel& channel, const CVector& psi, const CVector& phi,
                                const EntanglementOptions& options = {});

/// Multi-start coordinate ascent of emax_at_input over pure product inputs.
/// Start 0 is the maximally entangled pair; the others are seeded Haar-random.
BoundReport bidirectional_emax(const BidirectionalChannel& channel, const OptimizerConfig& config = {});

/// max(0, 1 - 2^{-n (rate - bound)}); throws for n < 1.
double strong_converse_error(double bound_bits, int n, double rate_bits);

struct AmortizationResult {
  double lhs = 0.0;
  double input_term = 0.0;
  double channel_term = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

inline constexpr double kAmortizationSlack = 1e-6;

/// R_max(L_A A; B L_B) of N(rho) against R_max(L_A A'; B' L_B) of rho plus the
/// channel's bidirectional max-Rains value. rho carries L_A, A', B', L_B.
AmortizationResult amortization_check(const BidirectionalChannel& channel, const DenseOperator& rho,
                                      const EntanglementOptions& options = {});
/// Same, reusing a precomputed bidirectional max-Rains value in bits.
AmortizationResult amortization_check(const BidirectionalChannel& channel, const DenseOperator& rho,
                                      double channel_bits, const EntanglementOptions& options = {});

struct AchievabilityBranch {
  int outcome_first = 0;   // 0 for |+>, 1 for |->
  int outcome_second = 0;
  double probability = 0.0;
  double fidelity_before = 0.0;
  double fidelity_corrected = 0.0;
};

struct AchievabilityReport {
  DenseOperator pre_measurement;
  /// max-abs distance from (1/2) Phi+ ⊗ Phi+ + (1/2) Phi- ⊗ Phi-.
  double mixture_deviation = 0.0;
  std::vector<AchievabilityBranch> branches;
  double agree_probability = 0.0;
  double disagree_probability = 0.0;
  /// max over branches of |1 - corrected fidelity|.
  double max_fidelity_error = 0.0;
};

/// Bell pairs through collective_dephasing_swap(1/2, pi), X-basis measurement
/// of A and L_B (or of L_A and B), Z correction on the kept pair when the
/// outcomes disagree.
AchievabilityReport dephasing_achievability_sim(bool measure_a_and_lb = true);

}  // namespace bidir
