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

#include "bidir/bounds.hpp"
#include "bidir/channel.hpp"

namespace bidir {

/// Labels of the reader's view of a memory cell.
inline const std::string kCellIndex = "X";
inline const std::string kEve = "E";

/// Indexed family of isometries V^x : B' -> B ⊗ E (rows ordered B then E).
class WiretapMemoryCell {
 public:
  WiretapMemoryCell(std::string name, std::vector<CMatrix> isometries, int dim_in, int dim_b, int dim_e,
                    std::map<std::string, double> params = {});

  const std::string& name() const { return name_; }
  const std::map<std::string, double>& params() const { return params_; }
  const std::vector<CMatrix>& isometries() const { return isometries_; }
  int size() const { return static_cast<int>(isometries_.size()); }
  int dim_in() const { return dim_in_; }
  int dim_b() const { return dim_b_; }
  int dim_e() const { return dim_e_; }

  /// V^x rho V^x^dagger on B E; rho lives on B'.
  DenseOperator apply(int x, const DenseOperator& rho) const;

 private:
  std::string name_;
  std::map<std::string, double> params_;
  std::vector<CMatrix> isometries_;
  int dim_in_;
  int dim_b_;
  int dim_e_;
};

inline constexpr double kIsometryTol = 1e-12;

struct Codebook {
  int messages = 0;
  std::vector<std::vector<int>> codewords;

  /// Throws unless there is one codeword per message, all of one length, with
  /// letters in [0, cell_size).
  void validate(int cell_size) const;
  int length() const { return codewords.empty() ? 0 : static_cast<int>(codewords.front().size()); }
};

/// Cell {U^p sigma^x}, x = a d + b, with U^p|psi> = sqrt(1-p)|psi>_B|e>_E +
/// sqrt(p)|e>_B|psi>_E. B and E have dimension d + 1; |e> is the last basis vector.
WiretapMemoryCell erasure_wiretap_cell(int d, double p);

/// sum_x |x><x| ⊗ V^x on X B' -> X B E.
DenseOperator controlled_isometry(const WiretapMemoryCell& cell);

/// Tr_E of the controlled isometry, as a channel X B' -> X B.
BidirectionalChannel induced_bidirectional_channel(const WiretapMemoryCell& cell);

/// 2 (1 - p) log2 d.
double erasure_private_reading_bound(int d, double p);
/// The same value wrapped in a report labeled analytic.
BoundReport erasure_formula_report(int d, double p);

/// bidirectional_emax of the induced channel; PPT-relaxed, no capacity claim.
BoundReport reading_bound_via_emax(const WiretapMemoryCell& cell, const OptimizerConfig& config = {});

}  // namespace bidir
