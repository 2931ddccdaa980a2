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

#include "bidir/reading.hpp"

#include <cmath>
#include <limits>

#include "bidir/weyl.hpp"

namespace bidir {

WiretapMemoryCell::WiretapMemoryCell(std::string name, std::vector<CMatrix> isometries, int dim_in, int dim_b,
                                     int dim_e, std::map<std::string, double> params)
    : name_(std::move(name)),
      params_(std::move(params)),
      isometries_(std::move(isometries)),
      dim_in_(dim_in),
      dim_b_(dim_b),
      dim_e_(dim_e) {
  if (isometries_.empty()) throw std::invalid_argument("WiretapMemoryCell: no channels");
  if (dim_in_ < 1 || dim_b_ < 1 || dim_e_ < 1) throw DimensionError("WiretapMemoryCell: dimensions must be positive");
  const CMatrix id = CMatrix::Identity(dim_in_, dim_in_);
  for (std::size_t x = 0; x < isometries_.size(); ++x) {
    const CMatrix& v = isometries_[x];
    if (v.rows() != dim_b_ * dim_e_ || v.cols() != dim_in_) {
      throw DimensionError("WiretapMemoryCell: channel " + std::to_string(x) + " has the wrong shape");
    }
    if ((v.adjoint() * v - id).cwiseAbs().maxCoeff() > kIsometryTol) {
      throw std::invalid_argument("WiretapMemoryCell: channel " + std::to_string(x) + " is not an isometry");
    }
  }
}

DenseOperator WiretapMemoryCell::apply(int x, const DenseOperator& rho) const {
  if (x < 0 || x >= size()) throw std::out_of_range("WiretapMemoryCell::apply: index out of range");
  if (rho.rows() != dim_in_ || !rho.is_square()) throw DimensionError("WiretapMemoryCell::apply: bad input");
  const CMatrix& v = isometries_[static_cast<std::size_t>(x)];
  return DenseOperator(v * rho.matrix() * v.adjoint(), SystemDims({"B", kEve}, {dim_b_, dim_e_}));
}

void Codebook::validate(int cell_size) const {
  if (messages < 1 || codewords.size() != static_cast<std::size_t>(messages)) {
    throw std::invalid_argument("Codebook: need one codeword per message");
  }
  for (const auto& w : codewords) {
    if (w.size() != codewords.front().size()) throw std::invalid_argument("Codebook: codeword lengths differ");
    for (int letter : w) {
      if (letter < 0 || letter >= cell_size) throw std::invalid_argument("Codebook: letter outside the cell");
    }
  }
}

WiretapMemoryCell erasure_wiretap_cell(int d, double p) {
  if (d < 2) throw std::invalid_argument("erasure_wiretap_cell: d must be at least 2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erasure_wiretap_cell: p must lie in [0, 1]");
  const int n = d + 1;
  const int e = d;  // erasure flag index
  CMatrix u = CMatrix::Zero(n * n, d);
  for (int j = 0; j < d; ++j) {
    u(j * n + e, j) += std::sqrt(1.0 - p);
    u(e * n + j, j) += std::sqrt(p);
  }
  std::vector<CMatrix> isometries;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) isometries.push_back(u * heisenberg_weyl(d, a, b));
  }
  return WiretapMemoryCell("erasure-cell", std::move(isometries), d, n, n, {{"d", d}, {"p", p}});
}

DenseOperator controlled_isometry(const WiretapMemoryCell& cell) {
  const int nx = cell.size();
  const int rows = cell.dim_b() * cell.dim_e();
  CMatrix u = CMatrix::Zero(static_cast<Eigen::Index>(nx) * rows, static_cast<Eigen::Index>(nx) * cell.dim_in());
  for (int x = 0; x < nx; ++x) {
    u.block(static_cast<Eigen::Index>(x) * rows, static_cast<Eigen::Index>(x) * cell.dim_in(), rows, cell.dim_in()) =
        cell.isometries()[static_cast<std::size_t>(x)];
  }
  return DenseOperator(u, SystemDims({kCellIndex, "B", kEve}, {nx, cell.dim_b(), cell.dim_e()}),
                       SystemDims({kCellIndex, "B'"}, {nx, cell.dim_in()}));
}

BidirectionalChannel induced_bidirectional_channel(const WiretapMemoryCell& cell) {
  const CMatrix u = controlled_isometry(cell).matrix();
  const int de = cell.dim_e();
  const Eigen::Index out = u.rows() / de;
  std::vector<CMatrix> kraus;
  for (int k = 0; k < de; ++k) {
    CMatrix kk(out, u.cols());
    for (Eigen::Index r = 0; r < out; ++r) kk.row(r) = u.row(r * de + k);
    if (kk.cwiseAbs().maxCoeff() > 0.0) kraus.push_back(std::move(kk));
  }
  return BidirectionalChannel(cell.name() + " (induced)", SystemDims({kCellIndex, "B'"}, {cell.size(), cell.dim_in()}),
                              SystemDims({kCellIndex, "B"}, {cell.size(), cell.dim_b()}), std::move(kraus),
                              cell.params());
}

double erasure_private_reading_bound(int d, double p) {
  if (d < 2) throw std::invalid_argument("erasure_private_reading_bound: d must be at least 2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erasure_private_reading_bound: p must lie in [0, 1]");
  return 2.0 * (1.0 - p) * std::log2(static_cast<double>(d));
}

BoundReport erasure_formula_report(int d, double p) {
  BoundReport r;
  r.quantity = "erasure-formula";
  r.channel = "erasure-cell";
  r.params = {{"d", d}, {"p", p}};
  r.value_bits = erasure_private_reading_bound(d, p);
  r.optimum = std::numeric_limits<double>::quiet_NaN();
  r.feasible_set = kAnalytic;
  r.provenance = {{"method", "closed form 2(1-p)log2(d)"}};
  return r;
}

BoundReport reading_bound_via_emax(const WiretapMemoryCell& cell, const OptimizerConfig& config) {
  BoundReport r = bidirectional_emax(induced_bidirectional_channel(cell), config);
  r.quantity = "reading-bound";
  r.channel = cell.name();
  return r;
}

}  // namespace bidir
