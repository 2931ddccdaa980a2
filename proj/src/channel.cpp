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

#include "bidir/channel.hpp"

#include <algorithm>

namespace bidir {

BidirectionalChannel::BidirectionalChannel(std::string name, SystemDims in_dims, SystemDims out_dims,
                                           std::vector<CMatrix> kraus,
                                           std::map<std::string, double> params)
    : name_(std::move(name)),
      params_(std::move(params)),
      in_dims_(std::move(in_dims)),
      out_dims_(std::move(out_dims)) {
  if (in_dims_.size() != 2 || out_dims_.size() != 2) {
    throw DimensionError("BidirectionalChannel: expected two input and two output systems");
  }
  if (kraus.empty()) throw std::invalid_argument("BidirectionalChannel: empty Kraus list");
  for (auto& k : kraus) kraus_.emplace_back(std::move(k), out_dims_, in_dims_);
  if (completeness_residual() > kCompletenessTol) {
    throw std::invalid_argument("BidirectionalChannel '" + name_ + "' is not trace preserving");
  }
}

double BidirectionalChannel::completeness_residual() const {
  const int n = in_dims_.total();
  CMatrix sum = CMatrix::Zero(n, n);
  for (const auto& k : kraus_) sum += k.matrix().adjoint() * k.matrix();
  return (sum - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

DenseOperator apply_channel(const BidirectionalChannel& channel, const DenseOperator& state) {
  if (!state.is_square()) throw DimensionError("apply_channel: state must be square");
  const SystemDims& sd = state.dims();
  const SystemDims& in = channel.in_dims();
  const SystemDims& out = channel.out_dims();
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (!sd.contains(in.label(i)) || sd.dim(in.label(i)) != in.dim_at(i)) {
      throw DimensionError("apply_channel: state [" + sd.to_string() + "] lacks channel input " +
                           in.label(i) + ":" + std::to_string(in.dim_at(i)));
    }
  }
  const SystemDims spectators = sd.without(in.labels());
  for (const auto& l : out.labels()) {
    if (spectators.contains(l)) throw DimensionError("apply_channel: output label '" + l + "' clashes with a spectator");
  }

  // Bring the inputs to the front, act with K ⊗ I, then restore an order in
  // which the outputs sit where the first input was.
  LabelSet front = in.labels();
  for (const auto& l : spectators.labels()) front.push_back(l);
  const DenseOperator arranged = permute(state, front);

  const int ns = spectators.total();
  const CMatrix id = CMatrix::Identity(ns, ns);
  const int n_out = out.total();
  CMatrix result = CMatrix::Zero(n_out * ns, n_out * ns);
  for (const auto& k : channel.kraus()) {
    CMatrix kk(n_out * ns, in.total() * ns);
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
      for (Eigen::Index j = 0; j < k.cols(); ++j) kk.block(i * ns, j * ns, ns, ns) = k.matrix()(i, j) * id;
    }
    result += kk * arranged.matrix() * kk.adjoint();
  }
  DenseOperator produced(std::move(result), out.concat(spectators));

  const std::size_t first_in = std::min(sd.position(in.label(0)), sd.position(in.label(1)));
  LabelSet order;
  bool placed = false;
  for (std::size_t s = 0; s < sd.size(); ++s) {
    const std::string& l = sd.label(s);
    if (in.contains(l)) {
      if (!placed && s == first_in) {
        order.insert(order.end(), out.labels().begin(), out.labels().end());
        placed = true;
      }
      continue;
    }
    order.push_back(l);
  }
  return permute(produced, order);
}

LabelSet choi_alice_labels(const BidirectionalChannel& channel) {
  return {kRefA, channel.out_dims().label(0)};
}

LabelSet choi_bob_labels(const BidirectionalChannel& channel) {
  return {channel.out_dims().label(1), kRefB};
}

DenseOperator choi_of_channel(const BidirectionalChannel& channel) {
  const SystemDims& in = channel.in_dims();
  const int da = in.dim_at(0);
  const int db = in.dim_at(1);
  // |Upsilon> = sum_{ij} |i>_LA |j>_LB |i>_A' |j>_B'
  CVector ups = CVector::Zero(da * db * da * db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < db; ++j) ups(((i * db + j) * da + i) * db + j) = 1.0;
  }
  SystemDims dims({kRefA, kRefB, in.label(0), in.label(1)}, {da, db, da, db});
  DenseOperator input(ups * ups.adjoint(), dims);
  DenseOperator output = apply_channel(channel, input);
  return permute(output, {kRefA, channel.out_dims().label(0), channel.out_dims().label(1), kRefB});
}

DenseOperator apply_via_choi(const DenseOperator& choi, const SystemDims& in_dims,
                             const SystemDims& out_dims, const DenseOperator& state) {
  if (!(state.dims() == in_dims)) {
    throw DimensionError("apply_via_choi: state must carry exactly the input systems");
  }
  DenseOperator ref_state(state.matrix().transpose(),
                          SystemDims({kRefA, kRefB}, {in_dims.dim_at(0), in_dims.dim_at(1)}));
  const DenseOperator lifted = tensor(ref_state, DenseOperator::identity(out_dims));
  const DenseOperator j = permute(choi, lifted.dims().labels());
  const DenseOperator product = lifted * j;
  return partial_trace(product, {kRefA, kRefB});
}

BidirectionalChannel conjugate_channel(const BidirectionalChannel& channel, const CMatrix& pre,
                                       const CMatrix& post) {
  std::vector<CMatrix> kraus;
  for (const auto& k : channel.kraus()) kraus.push_back(post * k.matrix() * pre);
  auto params = channel.params();
  return BidirectionalChannel(channel.name() + "-conjugated", channel.in_dims(), channel.out_dims(),
                              std::move(kraus), std::move(params));
}

}  // namespace bidir
