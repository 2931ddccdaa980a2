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

#include "bidir/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace bidir {

namespace {

const std::string kLeft = "left";
const std::string kRight = "right";

// Orthonormal basis of the support of a PSD matrix, as columns.
CMatrix support_basis(const CMatrix& m, double scale) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  const double cutoff = 1e-12 * std::max(scale, 1.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; --i) {
    if (es.eigenvalues()(i) > cutoff) keep.push_back(i);
  }
  CMatrix v(m.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) v.col(c) = es.eigenvectors().col(keep[c]);
  return v;
}

// rho as a two-party operator on {left, right}.
DenseOperator as_bipartite(const DenseOperator& rho, const BipartiteCut& cut) {
  cut.validate(rho.dims());
  LabelSet order = cut.left;
  order.insert(order.end(), cut.right.begin(), cut.right.end());
  const DenseOperator arranged = permute(rho, order);
  const SystemDims dims({kLeft, kRight}, {rho.dims().dim(cut.left), rho.dims().dim(cut.right)});
  return DenseOperator(arranged.matrix(), dims);
}

DenseOperator prepared(const DenseOperator& rho, const BipartiteCut& cut, const EntanglementOptions& options) {
  require_density(rho, "entanglement measure input");
  if (options.compress) return restrict_to_local_support(rho, cut);
  return as_bipartite(rho, cut);
}

EntanglementValue finish(const conic::SdpSolution& sol, const char* what, std::string feasible_set, int dim) {
  if (!sol.optimal()) throw conic::SolveError(sol.status, std::string(what) + ": SDP not solved");
  EntanglementValue v;
  v.optimum = sol.primal_value;
  v.dual_optimum = sol.dual_value;
  v.gap = sol.gap;
  v.iterations = sol.iterations;
  v.value_bits = std::max(0.0, std::log2(sol.primal_value));
  v.feasible_set = std::move(feasible_set);
  v.solved_dim = dim;
  return v;
}

}  // namespace

void BipartiteCut::validate(const SystemDims& dims) const {
  if (left.empty() || right.empty()) throw DimensionError("BipartiteCut: both parties must be nonempty");
  LabelSet all = left;
  all.insert(all.end(), right.begin(), right.end());
  LabelSet sorted_all = all;
  std::sort(sorted_all.begin(), sorted_all.end());
  if (std::adjacent_find(sorted_all.begin(), sorted_all.end()) != sorted_all.end()) {
    throw DimensionError("BipartiteCut: parties overlap");
  }
  LabelSet labels = dims.labels();
  std::sort(labels.begin(), labels.end());
  if (labels != sorted_all) {
    throw DimensionError("BipartiteCut " + to_string() + " does not partition [" + dims.to_string() + "]");
  }
}

std::string BipartiteCut::to_string() const {
  std::string s;
  for (const auto& l : left) s += (s.empty() ? "" : " ") + l;
  s += " :";
  for (const auto& l : right) s += " " + l;
  return s;
}

DenseOperator restrict_to_local_support(const DenseOperator& rho, const BipartiteCut& cut) {
  const DenseOperator bi = as_bipartite(rho, cut);
  const double scale = std::abs(bi.trace());
  const CMatrix vl = support_basis(partial_trace(bi, {kRight}).matrix(), scale);
  const CMatrix vr = support_basis(partial_trace(bi, {kLeft}).matrix(), scale);
  CMatrix w(bi.rows(), vl.cols() * vr.cols());
  for (Eigen::Index a = 0; a < vl.cols(); ++a) {
    for (Eigen::Index b = 0; b < vr.cols(); ++b) {
      w.col(a * vr.cols() + b) = kron(vl.col(a), vr.col(b));
    }
  }
  CMatrix reduced = w.adjoint() * bi.matrix() * w;
  reduced = 0.5 * (reduced + reduced.adjoint()).eval();
  return DenseOperator(std::move(reduced), SystemDims({kLeft, kRight}, {static_cast<int>(vl.cols()),
                                                                          static_cast<int>(vr.cols())}));
}

EntanglementValue max_rains_state(const DenseOperator& rho, const BipartiteCut& cut,
                                  const EntanglementOptions& options) {
  const DenseOperator r = prepared(rho, cut, options);
  conic::SdpProblem prob;
  const conic::MatrixExpr p = prob.add_hermitian("P", r.dims());
  const conic::MatrixExpr q = prob.add_hermitian("Q", r.dims());
  prob.add_psd(conic::partial_transpose(p - q, {kRight}) - r, "T(P-Q)-rho");
  prob.minimize(conic::trace(p) + conic::trace(q));
  return finish(conic::solve(prob, options.tolerances), "max_rains_state", kPptPrime, r.dims().total());
}

EntanglementValue emax_ppt_state(const DenseOperator& rho, const BipartiteCut& cut,
                                 const EntanglementOptions& options) {
  const DenseOperator r = prepared(rho, cut, options);
  conic::SdpProblem prob;
  const conic::MatrixExpr x = prob.add_hermitian("X", r.dims(), false);
  prob.add_psd(x - r, "X-rho");
  prob.add_psd(conic::partial_transpose(x, {kRight}), "T(X)");
  prob.minimize(conic::trace(x));
  return finish(conic::solve(prob, options.tolerances), "emax_ppt_state", kPptRelaxed, r.dims().total());
}

CMatrix symmetric_subspace_isometry(int d, int k) {
  if (d < 1 || k < 1) throw std::invalid_argument("symmetric_subspace_isometry: d and k must be positive");
  int total = 1;
  for (int i = 0; i < k; ++i) total *= d;
  // Group computational basis strings by their sorted content.
  std::map<std::vector<int>, std::vector<int>> classes;
  for (int idx = 0; idx < total; ++idx) {
    std::vector<int> digits(k);
    int rest = idx;
    for (int pos = k - 1; pos >= 0; --pos) {
      digits[pos] = rest % d;
      rest /= d;
    }
    std::sort(digits.begin(), digits.end());
    classes[digits].push_back(idx);
  }
  CMatrix v = CMatrix::Zero(total, static_cast<Eigen::Index>(classes.size()));
  Eigen::Index col = 0;
  for (const auto& [key, members] : classes) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(members.size()));
    for (int idx : members) v(idx, col) = amp;
    ++col;
  }
  return v;
}

EntanglementValue emax_dps_state(const DenseOperator& rho, const BipartiteCut& cut, int level,
                                 const EntanglementOptions& options) {
  if (level < 1) throw std::invalid_argument("emax_dps_state: level must be at least 1");
  const DenseOperator r = prepared(rho, cut, options);
  const int dl = r.dims().dim(kLeft);
  const int dr = r.dims().dim(kRight);
  long extended = dl;
  for (int i = 0; i < level; ++i) extended *= dr;
  if (extended > kMaxDpsExtendedDim) {
    throw conic::SizeLimitError("emax_dps_state: extension dimension " + std::to_string(extended) +
                                " exceeds " + std::to_string(kMaxDpsExtendedDim));
  }

  std::vector<std::string> copies;
  std::vector<int> copy_dims(1, dl);
  std::vector<std::string> labels(1, kLeft);
  for (int i = 0; i < level; ++i) {
    copies.push_back(i == 0 ? kRight : kRight + std::to_string(i + 1));
    labels.push_back(copies.back());
    copy_dims.push_back(dr);
  }
  const SystemDims ext_dims(labels, copy_dims);

  const CMatrix vsym = symmetric_subspace_isometry(dr, level);
  const int sym_dim = static_cast<int>(vsym.cols());
  CMatrix lift = CMatrix::Zero(extended, static_cast<Eigen::Index>(dl) * sym_dim);
  for (int a = 0; a < dl; ++a) lift.block(a * vsym.rows(), a * sym_dim, vsym.rows(), sym_dim) = vsym;

  conic::SdpProblem prob;
  const conic::MatrixExpr y = prob.add_hermitian("Y", SystemDims({kLeft, "sym"}, {dl, sym_dim}));
  const conic::MatrixExpr ext = conic::conjugate(y, lift, ext_dims);
  const LabelSet traced(copies.begin() + 1, copies.end());
  const conic::MatrixExpr x = traced.empty() ? ext : conic::partial_trace(ext, traced);
  prob.add_psd(x - r, "X-rho");
  // T_{R1..Rj} of the extension lives on L ⊗ Sym^j ⊗ Sym^(k-j); restricting
  // each block to that support keeps the constraint equivalent and strictly
  // feasible. The symmetric-subspace isometries are real, so they commute
  // with the transpositions.
  for (int j = 1; j <= level; ++j) {
    const CMatrix vj = symmetric_subspace_isometry(dr, j);
    const CMatrix vrest = j < level ? symmetric_subspace_isometry(dr, level - j) : CMatrix::Identity(1, 1);
    const Eigen::Index inner = vj.cols() * vrest.cols();
    CMatrix k = CMatrix::Zero(static_cast<Eigen::Index>(dl) * inner, extended);
    const Eigen::Index rows_per_l = vj.rows() * vrest.rows();
    for (int a = 0; a < dl; ++a) {
      for (Eigen::Index s1 = 0; s1 < vj.cols(); ++s1) {
        for (Eigen::Index s2 = 0; s2 < vrest.cols(); ++s2) {
          for (Eigen::Index r1 = 0; r1 < vj.rows(); ++r1) {
            for (Eigen::Index r2 = 0; r2 < vrest.rows(); ++r2) {
              k(a * inner + s1 * vrest.cols() + s2, a * rows_per_l + r1 * vrest.rows() + r2) =
                  vj(r1, s1) * vrest(r2, s2);
            }
          }
        }
      }
    }
    const SystemDims reduced({kLeft, "sym"}, {dl, static_cast<int>(inner)});
    const conic::MatrixExpr block =
        conic::partial_transpose(ext, LabelSet(copies.begin(), copies.begin() + j));
    prob.add_psd(conic::conjugate(block, k, reduced), "T" + std::to_string(j));
  }
  prob.minimize(conic::trace(y));
  const std::string label = level == 1 ? std::string(kPptRelaxed)
                                       : std::string(kPptRelaxed) + " (symmetric extension, k=" +
                                             std::to_string(level) + ")";
  return finish(conic::solve(prob, options.tolerances), "emax_dps_state", label, r.dims().total());
}

PptTest is_ppt(const DenseOperator& rho, const BipartiteCut& cut, double tol) {
  cut.validate(rho.dims());
  PptTest out;
  out.min_eigenvalue = min_eigenvalue(partial_transpose(rho, cut.right));
  out.ppt = out.min_eigenvalue >= -tol;
  return out;
}

}  // namespace bidir
