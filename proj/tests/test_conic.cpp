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

#include <sstream>

#include "bidir/conic.hpp"

using namespace bidir;
using namespace bidir::conic;

namespace {

CMatrix random_hermitian(int n, Rng& rng) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m(r, c) = Complex(g(rng), g(rng));
  }
  return 0.5 * (m + m.adjoint());
}

Eigen::VectorXd sorted_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

TEST(hermitian_embed, identity) {
  EXPECT_TRUE(hermitian_embed(CMatrix::Identity(2, 2)).isApprox(Eigen::MatrixXd::Identity(4, 4)));
}

TEST(hermitian_embed, pauli_y) {
  CMatrix y(2, 2);
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  const Eigen::MatrixXd e = hermitian_embed(y);
  EXPECT_LT((e - e.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  Eigen::VectorXd expected(4);
  expected << -1, -1, 1, 1;
  EXPECT_LT((sorted_eigenvalues(e) - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(hermitian_embed, doubles_spectrum) {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix h = random_hermitian(5, rng);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    Eigen::VectorXd doubled(10);
    for (int i = 0; i < 5; ++i) doubled(2 * i) = doubled(2 * i + 1) = es.eigenvalues()(i);
    EXPECT_LT((sorted_eigenvalues(hermitian_embed(h)) - doubled).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(hermitian_embed(h).trace(), 2.0 * h.trace().real(), 1e-12);
  }
}

TEST(hermitian_embed, order_preserving) {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix a = random_hermitian(3, rng);
    const CMatrix b = random_hermitian(3, rng);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(b - a, Eigen::EigenvaluesOnly);
    const double lmin = sorted_eigenvalues(hermitian_embed(b) - hermitian_embed(a))(0);
    EXPECT_NEAR(lmin, es.eigenvalues()(0), 1e-12);
  }
}

TEST(hermitian_embed, rejects_non_hermitian) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(hermitian_embed(m), std::invalid_argument);
}

TEST(solve, opnorm_of_diagonal) {
  SdpProblem prob;
  const ScalarExpr t = prob.add_scalar("t");
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 3.0;
  const SystemDims dims({"A"}, {2});
  prob.add_psd(MatrixExpr::identity_times(t, dims) - DenseOperator(d, dims));
  prob.minimize(t);
  const SdpSolution sol = solve(prob);
  ASSERT_EQ(sol.status, SolveStatus::optimal);
  EXPECT_NEAR(sol.primal_value, 3.0, 1e-7);
  EXPECT_LT(sol.gap, 1e-8);
}

TEST(solve, trace_above_bell_state) {
  const DenseOperator phi = max_entangled(2, "A", "B").projector();
  SdpProblem prob;
  const MatrixExpr x = prob.add_hermitian("X", phi.dims());
  prob.add_psd(x - phi, "X-rho");
  prob.minimize(trace(x));
  const SdpSolution sol = solve(prob);
  ASSERT_EQ(sol.status, SolveStatus::optimal);
  EXPECT_NEAR(sol.primal_value, 1.0, 1e-7);
  EXPECT_NEAR(sol.dual_value, 1.0, 1e-7);
  EXPECT_LT(max_abs_diff(DenseOperator(sol.value(x), phi.dims()), phi), 1e-5);
}

TEST(solve, detects_infeasible) {
  SdpProblem prob;
  const MatrixExpr x = prob.add_hermitian("X", SystemDims({"A"}, {2}));
  prob.add_equality(trace(x), -1.0);
  prob.minimize(ScalarExpr(0.0));
  EXPECT_EQ(solve(prob).status, SolveStatus::infeasible);
}

TEST(solve, detects_unbounded) {
  SdpProblem prob;
  const ScalarExpr t = prob.add_scalar("t");
  prob.add_psd(MatrixExpr::identity_times(t, SystemDims({"A"}, {1})));
  prob.minimize(-1.0 * t);
  EXPECT_EQ(solve(prob).status, SolveStatus::unbounded);
}

TEST(solve, deterministic) {
  Rng rng(5);
  const CMatrix h = random_hermitian(4, rng);
  auto run = [&] {
    SdpProblem prob;
    const MatrixExpr m(DenseOperator(h, SystemDims({"A"}, {4})));
    prob.minimize(opnorm_epigraph(prob, m, "t"));
    return solve(prob);
  };
  const SdpSolution a = run();
  const SdpSolution b = run();
  EXPECT_EQ(a.primal_value, b.primal_value);
  EXPECT_EQ(a.params, b.params);
}

TEST(solve, size_limit) {
  SdpProblem prob;
  const MatrixExpr x = prob.add_hermitian("X", SystemDims({"A"}, {8}));
  prob.minimize(trace(x));
  Tolerances tol;
  tol.max_parameters = 10;
  EXPECT_THROW(solve(prob, tol), SizeLimitError);
}

TEST(solve, rejects_unconstrained_parameter) {
  SdpProblem prob;
  const ScalarExpr t = prob.add_scalar("t");
  const ScalarExpr s = prob.add_scalar("s");
  prob.add_psd(MatrixExpr::identity_times(t, SystemDims({"A"}, {1})));
  prob.minimize(t + s);
  EXPECT_THROW(solve(prob), std::invalid_argument);
}

TEST(opnorm_epigraph, diagonal_mixed_sign) {
  SdpProblem prob;
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = -5.0;
  prob.minimize(opnorm_epigraph(prob, MatrixExpr(DenseOperator(d, SystemDims({"A"}, {2}))), "t"));
  const SdpSolution sol = solve(prob);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.primal_value, 5.0, 1e-7);
}

TEST(opnorm_epigraph, psd_argument_gives_max_eigenvalue) {
  Rng rng(3);
  const CMatrix g = random_hermitian(3, rng);
  const CMatrix m = g * g;
  SdpProblem prob;
  prob.minimize(opnorm_epigraph(prob, MatrixExpr(DenseOperator(m, SystemDims({"A"}, {3}))), "t", true));
  const SdpSolution sol = solve(prob);
  ASSERT_TRUE(sol.optimal());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  EXPECT_NEAR(sol.primal_value, es.eigenvalues().maxCoeff(), 1e-7);
}

TEST(opnorm_epigraph, random_matches_svd) {
  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix h = random_hermitian(4, rng);
    SdpProblem prob;
    prob.minimize(opnorm_epigraph(prob, MatrixExpr(DenseOperator(h, SystemDims({"A"}, {4}))), "t"));
    const SdpSolution sol = solve(prob);
    ASSERT_TRUE(sol.optimal());
    Eigen::JacobiSVD<CMatrix> svd(h);
    EXPECT_NEAR(sol.primal_value, svd.singularValues()(0), 1e-8);
  }
}

TEST(tracenorm_epigraph, diagonal) {
  SdpProblem prob;
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  prob.minimize(tracenorm_epigraph(prob, MatrixExpr(DenseOperator(d, SystemDims({"A"}, {2}))), "n").t);
  const SdpSolution sol = solve(prob);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.primal_value, 2.0, 1e-7);
}

TEST(tracenorm_epigraph, psd_argument_gives_trace) {
  Rng rng(4);
  const CMatrix g = random_hermitian(3, rng);
  const CMatrix m = g * g;
  SdpProblem prob;
  prob.minimize(tracenorm_epigraph(prob, MatrixExpr(DenseOperator(m, SystemDims({"A"}, {3}))), "n").t);
  const SdpSolution sol = solve(prob);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.primal_value, m.trace().real(), 1e-7 * (1 + m.trace().real()));
}

TEST(tracenorm_epigraph, random_matches_eigenvalues) {
  Rng rng(22);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix h = random_hermitian(4, rng);
    SdpProblem prob;
    prob.minimize(tracenorm_epigraph(prob, MatrixExpr(DenseOperator(h, SystemDims({"A"}, {4}))), "n").t);
    const SdpSolution sol = solve(prob);
    ASSERT_TRUE(sol.optimal());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    EXPECT_NEAR(sol.primal_value, es.eigenvalues().cwiseAbs().sum(), 1e-8);
  }
}

TEST(solve, weak_duality) {
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix h = random_hermitian(3, rng);
    SdpProblem prob;
    prob.minimize(tracenorm_epigraph(prob, MatrixExpr(DenseOperator(h, SystemDims({"A"}, {3}))), "n").t);
    const SdpSolution sol = solve(prob);
    ASSERT_TRUE(sol.optimal());
    EXPECT_LE(sol.dual_value, sol.primal_value + 1e-8);
  }
}

TEST(write_sdpa, header) {
  SdpProblem prob;
  const ScalarExpr t = prob.add_scalar("t");
  prob.add_psd(MatrixExpr::identity_times(t, SystemDims({"A"}, {2})));
  prob.add_equality(t, 1.0);
  prob.minimize(t);
  std::ostringstream out;
  write_sdpa(prob, out);
  std::istringstream in(out.str());
  std::string comment;
  std::getline(in, comment);
  int m = 0, nblocks = 0, b1 = 0, b2 = 0;
  in >> m >> nblocks >> b1 >> b2;
  EXPECT_EQ(m, 1);
  EXPECT_EQ(nblocks, 2);
  EXPECT_EQ(b1, 4);
  EXPECT_EQ(b2, -2);
}
