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

#include "bidir/reading.hpp"
#include "bidir/weyl.hpp"
#include "bidir/zoo.hpp"

using namespace bidir;

namespace {

CMatrix projector(int n, int i) {
  CMatrix m = CMatrix::Zero(n, n);
  m(i, i) = 1.0;
  return m;
}

DenseOperator dephase(const DenseOperator& rho, const std::string& label) {
  const int n = rho.dims().dim(label);
  DenseOperator out = DenseOperator::zero(rho.dims());
  for (int i = 0; i < n; ++i) {
    const CMatrix p = embed_local(rho.dims(), label, projector(n, i));
    out = out + DenseOperator(p * rho.matrix() * p, rho.dims());
  }
  return out;
}

OptimizerConfig deterministic_only() {
  OptimizerConfig c;
  c.starts = 1;
  c.max_evaluations = 1;
  return c;
}

}  // namespace

TEST(erasure_wiretap_cell, shape_and_isometries) {
  for (int d : {2, 3}) {
    const WiretapMemoryCell cell = erasure_wiretap_cell(d, 0.3);
    EXPECT_EQ(cell.size(), d * d);
    EXPECT_EQ(cell.dim_b(), d + 1);
    EXPECT_EQ(cell.dim_e(), d + 1);
    for (const auto& v : cell.isometries()) {
      EXPECT_LT((v.adjoint() * v - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
  EXPECT_THROW(erasure_wiretap_cell(1, 0.5), std::invalid_argument);
  EXPECT_THROW(erasure_wiretap_cell(2, 1.5), std::invalid_argument);
}

TEST(erasure_wiretap_cell, endpoints) {
  const int d = 3;
  CVector psi = CVector::Zero(d);
  psi << 0.6, Complex(0.0, 0.8), 0.0;
  const DenseOperator in(psi * psi.adjoint(), SystemDims::single("B'", d));
  const CMatrix flag = projector(d + 1, d);
  for (int x = 0; x < d * d; ++x) {
    CVector moved = CVector::Zero(d + 1);
    moved.head(d) = heisenberg_weyl(d, x / d, x % d) * psi;
    const CMatrix sent = moved * moved.adjoint();
    const DenseOperator kept = erasure_wiretap_cell(d, 0.0).apply(x, in);
    EXPECT_LT((kept.matrix() - kron(sent, flag)).cwiseAbs().maxCoeff(), 1e-12);
    const DenseOperator lost = erasure_wiretap_cell(d, 1.0).apply(x, in);
    EXPECT_LT((lost.matrix() - kron(flag, sent)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(erasure_wiretap_cell, half_erasure_marginal) {
  const DenseOperator in(projector(2, 0), SystemDims::single("B'", 2));
  const DenseOperator bob = partial_trace(erasure_wiretap_cell(2, 0.5).apply(0, in), {kEve});
  CMatrix expected = CMatrix::Zero(3, 3);
  expected(0, 0) = expected(2, 2) = 0.5;
  EXPECT_LT((bob.matrix() - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(wiretap_memory_cell, rejects_non_isometry) {
  CMatrix v = CMatrix::Zero(4, 2);
  v(0, 0) = 1.0;
  v(1, 1) = 0.5;
  EXPECT_THROW(WiretapMemoryCell("bad", {v}, 2, 2, 2), std::invalid_argument);
  EXPECT_THROW(WiretapMemoryCell("shape", {CMatrix::Identity(3, 2)}, 2, 2, 2), DimensionError);
}

TEST(codebook, validation) {
  Codebook ok{2, {{0, 1, 3}, {2, 2, 0}}};
  EXPECT_NO_THROW(ok.validate(4));
  EXPECT_EQ(ok.length(), 3);
  EXPECT_THROW((Codebook{2, {{0, 1}, {2}}}).validate(4), std::invalid_argument);
  EXPECT_THROW((Codebook{1, {{4}}}).validate(4), std::invalid_argument);
  EXPECT_THROW((Codebook{3, {{0}}}).validate(4), std::invalid_argument);
}

TEST(controlled_isometry, single_channel_is_the_channel) {
  const WiretapMemoryCell full = erasure_wiretap_cell(2, 0.3);
  const WiretapMemoryCell one("one", {full.isometries()[2]}, 2, 3, 3);
  EXPECT_LT((controlled_isometry(one).matrix() - full.isometries()[2]).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(controlled_isometry, isometric_and_block_diagonal) {
  const DenseOperator u = controlled_isometry(erasure_wiretap_cell(2, 0.3));
  EXPECT_EQ(u.rows(), 4 * 9);
  EXPECT_EQ(u.cols(), 4 * 2);
  EXPECT_LT((u.matrix().adjoint() * u.matrix() - CMatrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(controlled_isometry, zero_erasure_structure) {
  const DenseOperator u = controlled_isometry(erasure_wiretap_cell(2, 0.0));
  CVector psi(2);
  psi << Complex(0.6, 0.0), Complex(0.0, 0.8);
  for (int x = 0; x < 4; ++x) {
    CVector in = CVector::Zero(8);
    in.segment(2 * x, 2) = psi;
    CVector b = CVector::Zero(3);
    b.head(2) = heisenberg_weyl(2, x / 2, x % 2) * psi;
    CVector e = CVector::Zero(3);
    e(2) = 1.0;
    CVector xs = CVector::Zero(4);
    xs(x) = 1.0;
    EXPECT_LT((u.matrix() * in - kron(kron(xs, b), e)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(induced_bidirectional_channel, trace_preserving) {
  const BidirectionalChannel ch = induced_bidirectional_channel(erasure_wiretap_cell(2, 0.4));
  EXPECT_LT(ch.completeness_residual(), 1e-12);
  Rng rng(4);
  for (int t = 0; t < 5; ++t) {
    const DenseOperator rho = random_density(ch.in_dims(), rng);
    EXPECT_NEAR(apply_channel(ch, rho).trace().real(), 1.0, 1e-12);
  }
}

TEST(induced_bidirectional_channel, zero_erasure_applies_weyl) {
  const BidirectionalChannel ch = induced_bidirectional_channel(erasure_wiretap_cell(2, 0.0));
  Rng rng(5);
  const DenseOperator sigma = random_density(SystemDims::single("B'", 2), rng);
  for (int x = 0; x < 4; ++x) {
    const DenseOperator in = tensor(DenseOperator(projector(4, x), SystemDims::single(kCellIndex, 4)), sigma);
    const DenseOperator out = apply_channel(ch, in);
    CMatrix w = CMatrix::Zero(3, 2);
    w.topRows(2) = heisenberg_weyl(2, x / 2, x % 2);
    const CMatrix expected = kron(projector(4, x), w * sigma.matrix() * w.adjoint());
    EXPECT_LT((out.matrix() - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(induced_bidirectional_channel, full_erasure_outputs_flag) {
  const BidirectionalChannel ch = induced_bidirectional_channel(erasure_wiretap_cell(2, 1.0));
  Rng rng(6);
  const DenseOperator bob = partial_trace(apply_channel(ch, random_density(ch.in_dims(), rng)), {kCellIndex});
  EXPECT_LT((bob.matrix() - projector(3, 2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(induced_bidirectional_channel, commutes_with_dephasing_of_x) {
  const BidirectionalChannel ch = induced_bidirectional_channel(erasure_wiretap_cell(2, 0.35));
  Rng rng(7);
  for (int t = 0; t < 3; ++t) {
    const DenseOperator rho = random_density(ch.in_dims(), rng);
    const DenseOperator a = apply_channel(ch, dephase(rho, kCellIndex));
    const DenseOperator b = dephase(apply_channel(ch, rho), kCellIndex);
    EXPECT_LT(max_abs_diff(a, b), 1e-12);
  }
}

TEST(erasure_private_reading_bound, values) {
  EXPECT_EQ(erasure_private_reading_bound(2, 0.0), 2.0);
  EXPECT_NEAR(erasure_private_reading_bound(3, 0.5), std::log2(3.0), 1e-12);
  for (int d : {2, 3, 7}) EXPECT_EQ(erasure_private_reading_bound(d, 1.0), 0.0);
  const BoundReport r = erasure_formula_report(3, 0.5);
  EXPECT_EQ(r.feasible_set, kAnalytic);
  EXPECT_TRUE(std::isnan(r.optimum));
}

TEST(erasure_private_reading_bound, additive_and_linear) {
  for (double p : {0.0, 0.2, 0.5, 0.9}) {
    EXPECT_NEAR(erasure_private_reading_bound(6, p), erasure_private_reading_bound(2, p) + erasure_private_reading_bound(3, p),
                1e-14);
    EXPECT_NEAR(erasure_private_reading_bound(4, p), (1.0 - p) * erasure_private_reading_bound(4, 0.0), 1e-14);
  }
}

TEST(reading_bound_via_emax, no_erasure_at_deterministic_start) {
  const BoundReport full = reading_bound_via_emax(erasure_wiretap_cell(2, 0.0), deterministic_only());
  EXPECT_GE(full.value_bits, 2.0 - 1e-3);
  EXPECT_GE(full.value_bits, 1.9);
  EXPECT_EQ(full.feasible_set, kPptRelaxed);
  EXPECT_EQ(full.quantity, "reading-bound");
  EXPECT_EQ(full.provenance.at("capacity_claim").substr(0, 4), "none");
}

// Expected to fail: with a coherent index register the controlled Weyl
// operators kick phases back onto X, so X ends up maximally entangled with
// half of L_B even though B only ever carries the flag.
TEST(reading_bound_via_emax, full_erasure_vanishes) {
  const BoundReport none = reading_bound_via_emax(erasure_wiretap_cell(2, 1.0), deterministic_only());
  EXPECT_NEAR(none.value_bits, 0.0, 1e-6);
}

TEST(reading_bound_via_emax, full_erasure_oracle) {
  // On Phi_4(L_A X) ⊗ Phi_2(B' L_B) the output is |e><e|_B ⊗ Tr_E of
  // (1/2) sum_x |xx>_{L_A X} |Phi_x>_{E L_B}; the Bell basis map x -> Phi_x is a
  // local unitary on the left, leaving I/2 ⊗ Phi_2, worth exactly one ebit.
  const BoundReport r = reading_bound_via_emax(erasure_wiretap_cell(2, 1.0), deterministic_only());
  EXPECT_NEAR(r.value_bits, 1.0, 1e-6);
}

TEST(reading_bound_via_emax, dephased_index_register_is_unentangled) {
  for (double p : {0.0, 0.5, 1.0}) {
    const BidirectionalChannel ch = induced_bidirectional_channel(erasure_wiretap_cell(2, p));
    const DenseOperator in =
        tensor(max_entangled(4, kRefA, kCellIndex).projector(), max_entangled(2, "B'", kRefB).projector());
    const DenseOperator out = apply_channel(ch, dephase(in, kCellIndex));
    EXPECT_LT(emax_ppt_state(out, choi_cut(ch)).value_bits, 1e-6) << p;
  }
}

TEST(reading_bound_via_emax, non_increasing_in_p) {
  double prev = 1e9;
  for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double v = reading_bound_via_emax(erasure_wiretap_cell(2, p), deterministic_only()).value_bits;
    EXPECT_LE(v, prev + 1e-3) << p;
    prev = v;
  }
}
