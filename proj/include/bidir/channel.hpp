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

#include <map>
#include <string>
#include <vector>

#include "bidir/operator.hpp"

namespace bidir {

/// Reference-system labels of the Choi operator (isomorphic to the two inputs).
inline const std::string kRefA = "LA";
inline const std::string kRefB = "LB";

/// Completely positive trace-preserving map from two input systems (Alice's,
/// then Bob's) to two output systems, stored as Kraus operators.
class BidirectionalChannel {
 public:
  BidirectionalChannel(std::string name, SystemDims in_dims, SystemDims out_dims,
                       std::vector<CMatrix> kraus, std::map<std::string, double> params = {});

  const std::string& name() const { return name_; }
  const std::map<std::string, double>& params() const { return params_; }
  const SystemDims& in_dims() const { return in_dims_; }
  const SystemDims& out_dims() const { return out_dims_; }
  const std::vector<DenseOperator>& kraus() const { return kraus_; }

  /// max-abs entry of sum_k K_k^dagger K_k - I.
  double completeness_residual() const;

 private:
  std::string name_;
  std::map<std::string, double> params_;
  SystemDims in_dims_;
  SystemDims out_dims_;
  std::vector<DenseOperator> kraus_;
};

inline constexpr double kCompletenessTol = 1e-10;

/// sum_k K rho K^dagger. Labels of `state` beyond the channel inputs are
/// spectators; the outputs take the position of the first input label.
DenseOperator apply_channel(const BidirectionalChannel& channel, const DenseOperator& state);

/// Unnormalized Choi operator on (LA, out_A, out_B, LB), trace |A'||B'|.
DenseOperator choi_of_channel(const BidirectionalChannel& channel);

/// Alice's side (LA, out_A) and Bob's side (out_B, LB) of the Choi operator.
LabelSet choi_alice_labels(const BidirectionalChannel& channel);
LabelSet choi_bob_labels(const BidirectionalChannel& channel);

/// Channel action reconstructed from a Choi operator laid out as by
/// choi_of_channel: N(rho) = Tr_{LA LB}[(rho^T ⊗ I) J]. `state` must live on
/// exactly the input systems.
DenseOperator apply_via_choi(const DenseOperator& choi, const SystemDims& in_dims,
                             const SystemDims& out_dims, const DenseOperator& state);

/// (U_A ⊗ U_B) N((V_A ⊗ V_B) . (V_A ⊗ V_B)^dagger) (U_A ⊗ U_B)^dagger.
BidirectionalChannel conjugate_channel(const BidirectionalChannel& channel, const CMatrix& pre,
                                       const CMatrix& post);

}  // namespace bidir
