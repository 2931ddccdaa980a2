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

#include <gtest/gtest.h>

#include <cmath>

#include "bidir/entanglement.hpp"

using namespace bidir;

namespace {

const BipartiteCut kAB{{"A"}, {"B"}};

DenseOperator phi(int d) { return max_entangled(d, "A", "B").projector(); }

// Convex mixture of random product states: separable, hence PPT.
DenseOperator random_separable(int da, int db, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DenseOperator acc = DenseOperator::zero(SystemDims({"A", "B"}, {da, db}));
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double w = u(rng);
    total += w;
    acc = acc + tensor(random_density(SystemDims({"A"}, {da}), rng), random_density(SystemDims({"B"}, {db}), rng)) * w;
  }
  return acc * (1.0 / total);
}

}  // namespace

TEST(is_ppt, bell_state) {
  const PptTest t = is_ppt(phi(2), kAB);
  EXPECT_FALSE(t.ppt);
  EXPECT_NEAR(t.min_eigenvalue, -0.5, 1e-12);
}

TEST(is_ppt, product_and_mixed) {
  Rng rng(1);
  const DenseOperator prod =
      tensor(random_density(SystemDims({"A"}, {2}), rng), random_density(SystemDims({"B"}, {2}), rng));
  EXPECT_TRUE(is_ppt(prod, kAB).ppt);
  EXPECT_TRUE(is_ppt(DenseOperator::identity(SystemDims({"A", "B"}, {2, 2})) * 0.25, kAB).ppt);
}

TEST(bipartite_cut, rejects_bad_partition) {
  EXPECT_THROW(is_ppt(phi(2), BipartiteCut{{"A"}, {"C"}}), DimensionError);
  EXPECT_THROW(is_ppt(phi(2), BipartiteCut{{"A", "B"}, {"B"}}), DimensionError);
  EXPECT_THROW(is_ppt(phi(2), BipartiteCut{{"A"}, {}}), DimensionError);
}

TEST(max_rains_state, product_is_zero) {
  Rng rng(2);
  const DenseOperator prod =
      tensor(random_density(SystemDims({"A"}, {2}), rng), random_density(SystemDims({"B"}, {3}), rng));
  const EntanglementValue v = max_rains_state(prod, kAB);
  EXPECT_LT(v.value_bits, 1e-6);
  EXPECT_EQ(v.feasible_set, kPptPrime);
}

TEST(max_rains_state, maximally_entangled) {
  for (int d : {2, 3}) {
    const EntanglementValue v = max_rains_state(phi(d), kAB);
    EXPECT_NEAR(v.value_bits, std::log2(d), 1e-6) << "d=" << d;
    // Independent cross-check: log2 of the partial-transpose trace norm.
    EXPECT_NEAR(v.value_bits, std::log2(trace_norm(partial_transpose(phi(d), {"B"}))), 1e-6);
    EXPECT_LT(v.gap, 1e-7);
    EXPECT_NEAR(v.dual_optimum, v.optimum, 1e-6);
  }
}

TEST(max_rains_state, maximally_mixed_is_zero) {
  const DenseOperator mixed = DenseOperator::identity(SystemDims({"A", "B"}, {2, 2})) * 0.25;
  EXPECT_LT(max_rains_state(mixed, kAB).value_bits, 1e-6);
}

TEST(emax_ppt_state, maximally_entangled_matches_feasible_point_search) {
  for (int d : {2, 3}) {
    const DenseOperator p = phi(d);
    const EntanglementValue v = emax_ppt_state(p, kAB);
    EXPECT_NEAR(v.value_bits, std::log2(d), 1e-6);
    EXPECT_EQ(v.feasible_set, kPptRelaxed);

    // Oracle: X = a Phi + b (I - Phi), scanned over a grid; feasibility checked
    // with a dense eigensolver. The best feasible trace upper-bounds the SDP.
    const DenseOperator id = DenseOperator::identity(p.dims());
    double best = 1e300;
    for (int ia = 0; ia <= 40; ++ia) {
      const double a = 1.0 + 0.025 * ia;
      for (int ib = 0; ib <= 400; ++ib) {
        const double b = 0.0025 * ib;
        const DenseOperator x = p * a + (id - p) * b;
        if (min_eigenvalue(x - p) < -1e-12) continue;
        if (min_eigenvalue(partial_transpose(x, {"B"})) < -1e-12) continue;
        best = std::min(best, x.trace().real());
      }
    }
    EXPECT_LE(v.optimum, best + 1e-6);
    EXPECT_NEAR(best, static_cast<double>(d), 1e-2);
  }
}

TEST(emax_ppt_state, separable_bell_mixture_is_zero) {
  const DenseOperator phi_plus = phi(2);
  CVector minus = CVector::Zero(4);
  minus(0) = 1.0 / std::sqrt(2.0);
  minus(3) = -1.0 / std::sqrt(2.0);
  const DenseOperator phi_minus(minus * minus.adjoint(), phi_plus.dims());
  EXPECT_LT(emax_ppt_state((phi_plus + phi_minus) * 0.5, kAB).value_bits, 1e-6);
}

TEST(entanglement, vanish_on_random_ppt_states) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseOperator rho = random_separable(2, 2, rng);
    ASSERT_TRUE(is_ppt(rho, kAB).ppt);
    EXPECT_LT(max_rains_state(rho, kAB).value_bits, 1e-6);
    EXPECT_LT(emax_ppt_state(rho, kAB).value_bits, 1e-6);
  }
}

TEST(entanglement, local_unitary_invariance) {
  Rng rng(4);
  for (int trial = 0; trial < 4; ++trial) {
    const DenseOperator rho = random_density(SystemDims({"A", "B"}, {2, 2}), rng, 2);
    const DenseOperator rotated =
        apply_local(apply_local(rho, "A", haar_unitary(2, rng)), "B", haar_unitary(2, rng));
    EXPECT_NEAR(max_rains_state(rho, kAB).value_bits, max_rains_state(rotated, kAB).value_bits, 1e-8);
    EXPECT_NEAR(emax_ppt_state(rho, kAB).value_bits, emax_ppt_state(rotated, kAB).value_bits, 1e-8);
  }
}

TEST(entanglement, compression_is_exact) {
  Rng rng(5);
  EntanglementOptions full;
  full.compress = false;
  for (int trial = 0; trial < 3; ++trial) {
    // Mixture of two pure states supported on a 2x2 corner of a 3x3 space,
    // rotated by local unitaries: both marginals have rank 2.
    const SystemDims dims({"A", "B"}, {3, 3});
    DenseOperator mixed = DenseOperator::zero(dims);
    for (double w : {0.7, 0.3}) {
      CVector amp = CVector::Zero(9);
      for (int i : {0, 1, 3, 4}) amp(i) = random_pure(SystemDims({"x"}, {1}), rng).amplitudes()(0) * double(i + 1);
      mixed = mixed + PureState::normalized(amp, dims).projector() * w;
    }
    mixed = apply_local(apply_local(mixed, "A", haar_unitary(3, rng)), "B", haar_unitary(3, rng));
    EXPECT_LT(restrict_to_local_support(mixed, kAB).dims().total(), 9);
    EXPECT_NEAR(max_rains_state(mixed, kAB).optimum, max_rains_state(mixed, kAB, full).optimum, 1e-7);
    EXPECT_NEAR(emax_ppt_state(mixed, kAB).optimum, emax_ppt_state(mixed, kAB, full).optimum, 1e-7);
  }
}

TEST(entanglement, multi_label_cut) {
  // Phi on (A1, B1) and Phi on (A2, B2): two ebits across A1 A2 : B1 B2.
  const DenseOperator two = tensor(max_entangled(2, "A1", "B1").projector(), max_entangled(2, "A2", "B2").projector());
  const BipartiteCut cut{{"A1", "A2"}, {"B2", "B1"}};
  EXPECT_NEAR(max_rains_state(two, cut).value_bits, 2.0, 1e-6);
  EXPECT_NEAR(emax_ppt_state(two, cut).value_bits, 2.0, 1e-6);
}

TEST(symmetric_subspace_isometry, dimensions_and_isometry) {
  const CMatrix v = symmetric_subspace_isometry(2, 3);
  EXPECT_EQ(v.rows(), 8);
  EXPECT_EQ(v.cols(), 4);
  EXPECT_LT((v.adjoint() * v - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(emax_dps_state, level_one_is_ppt) {
  Rng rng(6);
  const DenseOperator rho = random_density(SystemDims({"A", "B"}, {2, 2}), rng, 2);
  EXPECT_NEAR(emax_dps_state(rho, kAB, 1).optimum, emax_ppt_state(rho, kAB).optimum, 1e-7);
}

TEST(emax_dps_state, separable_is_zero) {
  Rng rng(7);
  const DenseOperator rho = random_separable(2, 2, rng);
  for (int k : {1, 2, 3}) EXPECT_LT(emax_dps_state(rho, kAB, k).value_bits, 1e-6) << "k=" << k;
}

TEST(emax_dps_state, monotone_in_level) {
  Rng rng(8);
  const DenseOperator bell = phi(2);
  EXPECT_GE(emax_dps_state(bell, kAB, 2).value_bits, emax_ppt_state(bell, kAB).value_bits - 1e-8);
  for (int trial = 0; trial < 3; ++trial) {
    const DenseOperator rho = random_density(SystemDims({"A", "B"}, {2, 2}), rng, 2);
    const double l1 = emax_dps_state(rho, kAB, 1).value_bits;
    const double l2 = emax_dps_state(rho, kAB, 2).value_bits;
    const double l3 = emax_dps_state(rho, kAB, 3).value_bits;
    EXPECT_GE(l2, l1 - 1e-8);
    EXPECT_GE(l3, l2 - 1e-8);
  }
}

TEST(emax_dps_state, refuses_oversized_extension) {
  EXPECT_THROW(emax_dps_state(phi(3), kAB, 4), conic::SizeLimitError);
}
