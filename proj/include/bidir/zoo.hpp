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

#include <string>
#include <vector>

#include "bidir/channel.hpp"
#include "bidir/entanglement.hpp"

namespace bidir {

/// Default system labels of the channels built here.
inline const std::string kInA = "A'";
inline const std::string kInB = "B'";
inline const std::string kOutA = "A";
inline const std::string kOutB = "B";

/// sum_ij |ij><ji| on C^d ⊗ C^d.
CMatrix swap_operator(int d);

BidirectionalChannel identity_channel(int d_a = 2, int d_b = 2);
BidirectionalChannel swap_channel(int d = 2);
/// Replaces every input with the maximally mixed state I/(d_a d_b).
BidirectionalChannel completely_depolarizing(int d_a = 2, int d_b = 2);

/// U_p = sqrt(p) I + i sqrt(1-p) S on two qubits.
CMatrix partial_swap_unitary(double p);
BidirectionalChannel partial_swap(double p);
/// partial_swap(p) followed by discarding Alice's output (A becomes 1-dimensional).
BidirectionalChannel partial_swap_traceout(double p);
/// Kraus {sqrt(p) S, sqrt(1-p) (Z_phi ⊗ Z_phi) S}, Z_phi = diag(1, e^{i phi}).
BidirectionalChannel collective_dephasing_swap(double p, double phi);
/// Control on A', target on B'.
BidirectionalChannel cnot_channel();
/// CNOT with probability q, otherwise the output is replaced by I/4.
BidirectionalChannel noisy_cnot(double q);

/// Finite set of unitaries on one system.
struct GroupRepresentation {
  std::string label;
  std::vector<CMatrix> elements;

  int dim() const;
  /// Throws unless every element is unitary (1e-12) and all share one dimension.
  void validate() const;
  /// max-abs deviation of (1/|G|) sum_g U rho U^dagger from I/d on `trials` random states.
  double one_design_deviation(Rng& rng, int trials = 5) const;
};

/// Heisenberg-Weyl group X^a Z^b on a d-dimensional system.
GroupRepresentation weyl_representation(int d, const std::string& label);

/// Input representations U(g), V(h) and output representations W(g,h), T(g,h);
/// the output lists are indexed g * |H| + h.
struct BicovarianceReps {
  GroupRepresentation g;
  GroupRepresentation h;
  std::vector<CMatrix> w;
  std::vector<CMatrix> t;
};

/// Pauli inputs on both qubits and their images under CNOT conjugation.
BicovarianceReps cnot_pauli_reps();
/// Weyl inputs with W = U(g), T = V(h).
BicovarianceReps trivial_output_reps(int d_a, int d_b);

/// Max over group pairs and input matrix units |i><j| of
/// || N(U rho U^dagger) - (W ⊗ T) N(rho) (W ⊗ T)^dagger ||_1.
double check_bicovariance(const BidirectionalChannel& channel, const BicovarianceReps& reps);

inline constexpr double kBicovarianceTol = 1e-10;

/// Output of the teleportation simulation: Bell measurements of (A', L_A) and
/// (B', L_B) against the normalized Choi state, then W^dagger ⊗ T^dagger
/// corrections. Throws std::invalid_argument when the channel is not
/// bicovariant under `reps` or the groups are not nice error bases.
DenseOperator teleportation_simulate(const BidirectionalChannel& channel, const BicovarianceReps& reps,
                                     const DenseOperator& input);

/// Choi-state PPT test across L_A A : B L_B.
PptTest is_ppt_preserving(const BidirectionalChannel& channel);

/// Choi operator divided by its trace.
DenseOperator normalized_choi(const BidirectionalChannel& channel);
BipartiteCut choi_cut(const BidirectionalChannel& channel);

}  // namespace bidir
