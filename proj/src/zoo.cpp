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

#include "bidir/zoo.hpp"

#include <cmath>

#include "bidir/weyl.hpp"

namespace bidir {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + ": parameter must lie in [0, 1]");
}

SystemDims in_dims(int d_a, int d_b) { return SystemDims({kInA, kInB}, {d_a, d_b}); }
SystemDims out_dims(int d_a, int d_b) { return SystemDims({kOutA, kOutB}, {d_a, d_b}); }

CMatrix apply_kraus(const BidirectionalChannel& channel, const CMatrix& rho) {
  const Eigen::Index n = channel.out_dims().total();
  CMatrix out = CMatrix::Zero(n, n);
  for (const auto& k : channel.kraus()) out += k.matrix() * rho * k.matrix().adjoint();
  return out;
}

double schatten_one(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().sum();
}

// Index of the group element equal to `u` up to a phase.
std::size_t match_element(const GroupRepresentation& rep, const CMatrix& u) {
  const double d = rep.dim();
  for (std::size_t i = 0; i < rep.elements.size(); ++i) {
    if (std::abs((rep.elements[i].adjoint() * u).trace()) > d - 1e-8) return i;
  }
  throw std::invalid_argument("teleportation_simulate: representation of '" + rep.label +
                              "' is not closed under inversion");
}

void require_nice_error_basis(const GroupRepresentation& rep) {
  const int d = rep.dim();
  if (static_cast<int>(rep.elements.size()) != d * d) {
    throw std::invalid_argument("teleportation_simulate: representation of '" + rep.label +
                                "' needs exactly d^2 elements");
  }
  for (std::size_t i = 0; i < rep.elements.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs((rep.elements[i].adjoint() * rep.elements[j]).trace()) > 1e-10) {
        throw std::invalid_argument("teleportation_simulate: elements of '" + rep.label +
                                    "' are not trace orthogonal");
      }
    }
  }
}

void require_matching(const BidirectionalChannel& channel, const BicovarianceReps& reps) {
  reps.g.validate();
  reps.h.validate();
  const std::size_t pairs = reps.g.elements.size() * reps.h.elements.size();
  if (reps.w.size() != pairs || reps.t.size() != pairs) {
    throw DimensionError("check_bicovariance: output representations need |G||H| elements");
  }
  if (reps.g.dim() != channel.in_dims().dim_at(0) || reps.h.dim() != channel.in_dims().dim_at(1)) {
    throw DimensionError("check_bicovariance: input representation dimensions do not match the channel");
  }
  for (std::size_t i = 0; i < pairs; ++i) {
    if (reps.w[i].rows() != channel.out_dims().dim_at(0) || reps.t[i].rows() != channel.out_dims().dim_at(1)) {
      throw DimensionError("check_bicovariance: output representation dimensions do not match the channel");
    }
  }
}

}  // namespace

CMatrix swap_operator(int d) {
  CMatrix s = CMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) s(i * d + j, j * d + i) = 1.0;
  }
  return s;
}

BidirectionalChannel identity_channel(int d_a, int d_b) {
  return BidirectionalChannel("identity", in_dims(d_a, d_b), out_dims(d_a, d_b),
                              {CMatrix::Identity(d_a * d_b, d_a * d_b)});
}

BidirectionalChannel swap_channel(int d) {
  return BidirectionalChannel("swap", in_dims(d, d), out_dims(d, d), {swap_operator(d)});
}

BidirectionalChannel completely_depolarizing(int d_a, int d_b) {
  const int n = d_a * d_b;
  std::vector<CMatrix> kraus;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CMatrix k = CMatrix::Zero(n, n);
      k(i, j) = 1.0 / std::sqrt(static_cast<double>(n));
      kraus.push_back(std::move(k));
    }
  }
  return BidirectionalChannel("depolarizing", in_dims(d_a, d_b), out_dims(d_a, d_b), std::move(kraus));
}

CMatrix partial_swap_unitary(double p) {
  require_probability(p, "partial_swap");
  return std::sqrt(p) * CMatrix::Identity(4, 4) + Complex(0.0, std::sqrt(1.0 - p)) * swap_operator(2);
}

BidirectionalChannel partial_swap(double p) {
  return BidirectionalChannel("partial-swap", in_dims(2, 2), out_dims(2, 2), {partial_swap_unitary(p)},
                              {{"p", p}});
}

BidirectionalChannel partial_swap_traceout(double p) {
  const CMatrix u = partial_swap_unitary(p);
  std::vector<CMatrix> kraus;
  for (int a = 0; a < 2; ++a) kraus.push_back(u.middleRows(2 * a, 2));
  return BidirectionalChannel("partial-swap-traceout", in_dims(2, 2), out_dims(1, 2), std::move(kraus),
                              {{"p", p}});
}

BidirectionalChannel collective_dephasing_swap(double p, double phi) {
  require_probability(p, "collective_dephasing_swap");
  CMatrix z = CMatrix::Identity(2, 2);
  z(1, 1) = std::polar(1.0, phi);
  const CMatrix s = swap_operator(2);
  return BidirectionalChannel("collective-dephasing", in_dims(2, 2), out_dims(2, 2),
                              {std::sqrt(p) * s, std::sqrt(1.0 - p) * kron(z, z) * s},
                              {{"p", p}, {"phi", phi}});
}

BidirectionalChannel cnot_channel() {
  CMatrix c = CMatrix::Zero(4, 4);
  c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1.0;
  return BidirectionalChannel("cnot", in_dims(2, 2), out_dims(2, 2), {c});
}

BidirectionalChannel noisy_cnot(double q) {
  require_probability(q, "noisy_cnot");
  std::vector<CMatrix> kraus;
  const BidirectionalChannel cnot = cnot_channel();
  kraus.push_back(std::sqrt(q) * cnot.kraus()[0].matrix());
  const BidirectionalChannel replacer = completely_depolarizing(2, 2);
  for (const auto& k : replacer.kraus()) kraus.push_back(std::sqrt(1.0 - q) * k.matrix());
  return BidirectionalChannel("noisy-cnot", in_dims(2, 2), out_dims(2, 2), std::move(kraus), {{"q", q}});
}

int GroupRepresentation::dim() const {
  return elements.empty() ? 0 : static_cast<int>(elements.front().rows());
}

void GroupRepresentation::validate() const {
  if (elements.empty()) throw std::invalid_argument("GroupRepresentation '" + label + "' is empty");
  const int d = dim();
  for (const auto& u : elements) {
    if (u.rows() != d || u.cols() != d) throw DimensionError("GroupRepresentation '" + label + "': mixed dimensions");
    if ((u.adjoint() * u - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12) {
      throw std::invalid_argument("GroupRepresentation '" + label + "': element is not unitary");
    }
  }
}

double GroupRepresentation::one_design_deviation(Rng& rng, int trials) const {
  validate();
  const int d = dim();
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const CMatrix rho = random_density(SystemDims({label}, {d}), rng).matrix();
    CMatrix avg = CMatrix::Zero(d, d);
    for (const auto& u : elements) avg += u * rho * u.adjoint();
    avg /= static_cast<double>(elements.size());
    worst = std::max(worst, (avg - CMatrix::Identity(d, d) / d).cwiseAbs().maxCoeff());
  }
  return worst;
}

GroupRepresentation weyl_representation(int d, const std::string& label) {
  return GroupRepresentation{label, heisenberg_weyl_group(d)};
}

BicovarianceReps cnot_pauli_reps() {
  BicovarianceReps reps{weyl_representation(2, kInA), weyl_representation(2, kInB), {}, {}};
  for (int a1 = 0; a1 < 2; ++a1) {
    for (int b1 = 0; b1 < 2; ++b1) {
      for (int a2 = 0; a2 < 2; ++a2) {
        for (int b2 = 0; b2 < 2; ++b2) {
          reps.w.push_back(heisenberg_weyl(2, a1, b1 ^ b2));
          reps.t.push_back(heisenberg_weyl(2, a1 ^ a2, b2));
        }
      }
    }
  }
  return reps;
}

BicovarianceReps trivial_output_reps(int d_a, int d_b) {
  BicovarianceReps reps{weyl_representation(d_a, kInA), weyl_representation(d_b, kInB), {}, {}};
  for (const auto& u : reps.g.elements) {
    for (const auto& v : reps.h.elements) {
      reps.w.push_back(u);
      reps.t.push_back(v);
    }
  }
  return reps;
}

double check_bicovariance(const BidirectionalChannel& channel, const BicovarianceReps& reps) {
  require_matching(channel, reps);
  const int n = channel.in_dims().total();
  std::vector<CMatrix> images;
  images.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CMatrix e = CMatrix::Zero(n, n);
      e(i, j) = 1.0;
      images.push_back(apply_kraus(channel, e));
    }
  }
  double worst = 0.0;
  const std::size_t nh = reps.h.elements.size();
  for (std::size_t g = 0; g < reps.g.elements.size(); ++g) {
    for (std::size_t h = 0; h < nh; ++h) {
      const CMatrix in_u = kron(reps.g.elements[g], reps.h.elements[h]);
      const CMatrix out_u = kron(reps.w[g * nh + h], reps.t[g * nh + h]);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          CMatrix e = CMatrix::Zero(n, n);
          e(i, j) = 1.0;
          const CMatrix lhs = apply_kraus(channel, in_u * e * in_u.adjoint());
          const CMatrix rhs = out_u * images[i * n + j] * out_u.adjoint();
          worst = std::max(worst, schatten_one(lhs - rhs));
        }
      }
    }
  }
  return worst;
}

DenseOperator teleportation_simulate(const BidirectionalChannel& channel, const BicovarianceReps& reps,
                                     const DenseOperator& input) {
  const double deviation = check_bicovariance(channel, reps);
  if (deviation >= kBicovarianceTol) {
    throw std::invalid_argument("teleportation_simulate: channel '" + channel.name() +
                                "' is not bicovariant under the supplied representations");
  }
  require_nice_error_basis(reps.g);
  require_nice_error_basis(reps.h);
  if (!(input.dims() == channel.in_dims())) {
    throw DimensionError("teleportation_simulate: input must carry exactly the channel inputs");
  }

  const SystemDims& in = channel.in_dims();
  const SystemDims& out = channel.out_dims();
  const int da = in.dim_at(0);
  const int db = in.dim_at(1);
  const DenseOperator full = permute(tensor(input, normalized_choi(channel)),
                                     {in.label(0), kRefA, in.label(1), kRefB, out.label(0), out.label(1)});

  const CVector phi_a = unnormalized_max_entangled(da) / std::sqrt(static_cast<double>(da));
  const CVector phi_b = unnormalized_max_entangled(db) / std::sqrt(static_cast<double>(db));
  const CMatrix id_out = CMatrix::Identity(out.total(), out.total());
  const std::size_t nh = reps.h.elements.size();

  CMatrix result = CMatrix::Zero(out.total(), out.total());
  for (std::size_t g = 0; g < reps.g.elements.size(); ++g) {
    const CMatrix bra_g = (kron(reps.g.elements[g], CMatrix::Identity(da, da)) * phi_a).adjoint();
    // The outcome leaves U(g)^dagger applied to the teleported input.
    const std::size_t g_eff = match_element(reps.g, reps.g.elements[g].adjoint());
    for (std::size_t h = 0; h < nh; ++h) {
      const CMatrix bra_h = (kron(reps.h.elements[h], CMatrix::Identity(db, db)) * phi_b).adjoint();
      const std::size_t h_eff = match_element(reps.h, reps.h.elements[h].adjoint());
      const CMatrix m = kron(kron(bra_g, bra_h), id_out);
      const CMatrix post = m * full.matrix() * m.adjoint();
      const CMatrix fix = kron(reps.w[g_eff * nh + h_eff], reps.t[g_eff * nh + h_eff]).adjoint();
      result += fix * post * fix.adjoint();
    }
  }
  return DenseOperator(std::move(result), out);
}

DenseOperator normalized_choi(const BidirectionalChannel& channel) {
  const DenseOperator j = choi_of_channel(channel);
  return j * (1.0 / j.trace().real());
}

BipartiteCut choi_cut(const BidirectionalChannel& channel) {
  return BipartiteCut{choi_alice_labels(channel), choi_bob_labels(channel)};
}

PptTest is_ppt_preserving(const BidirectionalChannel& channel) {
  return is_ppt(normalized_choi(channel), choi_cut(channel));
}

}  // namespace bidir
