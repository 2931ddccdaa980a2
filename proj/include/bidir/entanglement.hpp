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

#include "bidir/conic.hpp"
#include "bidir/operator.hpp"

namespace bidir {

/// Partition of a state's labels into two parties.
struct BipartiteCut {
  LabelSet left;
  LabelSet right;

  /// Throws DimensionError unless left and right partition dims.labels().
  void validate(const SystemDims& dims) const;
  std::string to_string() const;
};

/// Feasible-set labels carried by every reported value.
inline constexpr const char* kPptPrime = "PPT'";
inline constexpr const char* kPptRelaxed = "PPT-relaxed";
inline constexpr const char* kAnalytic = "analytic";

struct EntanglementOptions {
  conic::Tolerances tolerances;
  /// Restrict to the support of the two marginals before solving. Exact for
  /// all SDPs in this header; disabling it is only useful for cross-checks.
  bool compress = true;
};

struct EntanglementValue {
  double value_bits = 0.0;  // log2 of the optimum, floored at 0
  double optimum = 0.0;
  double dual_optimum = 0.0;
  double gap = 0.0;
  int iterations = 0;
  std::string feasible_set;
  /// Dimension of the (possibly compressed) operator the SDP was posed on.
  int solved_dim = 0;
};

/// log2 min Tr(P + Q) s.t. P, Q >= 0, T_right(P - Q) >= rho.
EntanglementValue max_rains_state(const DenseOperator& rho, const BipartiteCut& cut,
                                  const EntanglementOptions& options = {});

/// log2 min Tr X s.t. X >= rho, T_right(X) >= 0.
EntanglementValue emax_ppt_state(const DenseOperator& rho, const BipartiteCut& cut,
                                 const EntanglementOptions& options = {});

/// Like emax_ppt_state, but X must also admit a Bose-symmetric extension to
/// `level` copies of the right party that is PPT across every copy cut.
/// Level 1 coincides with emax_ppt_state.
EntanglementValue emax_dps_state(const DenseOperator& rho, const BipartiteCut& cut, int level,
                                 const EntanglementOptions& options = {});

/// Largest dim(left) * dim(right)^level accepted by emax_dps_state.
inline constexpr int kMaxDpsExtendedDim = 64;

struct PptTest {
  bool ppt = false;
  double min_eigenvalue = 0.0;
};
PptTest is_ppt(const DenseOperator& rho, const BipartiteCut& cut, double tol = kPsdTol);

/// (V_L ⊗ V_R)^dagger rho (V_L ⊗ V_R) on systems {"left", "right"}, with V_L,
/// V_R isometries onto the supports of the marginals.
DenseOperator restrict_to_local_support(const DenseOperator& rho, const BipartiteCut& cut);

/// Isometry from the symmetric subspace of k copies of C^d into (C^d)^{⊗k}.
CMatrix symmetric_subspace_isometry(int d, int k);

}  // namespace bidir
