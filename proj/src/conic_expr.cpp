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

#include <algorithm>
#include <cmath>

#include "bidir/conic.hpp"

namespace bidir::conic {

namespace {

constexpr double kDropTol = 1e-15;

void compress(SparseCoef& coef) {
  std::sort(coef.begin(), coef.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseCoef merged;
  merged.reserve(coef.size());
  for (const auto& e : coef) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Entry& e) { return std::abs(e.value) < kDropTol; }),
               merged.end());
  coef = std::move(merged);
}

std::vector<int> strides_of(const SystemDims& dims) {
  std::vector<int> strides(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) {
    strides[k] = strides[k + 1] * dims.dim_at(k + 1);
  }
  return strides;
}

// Applies an index map (row, col) -> optional (row', col') to every term.
template <typename Map>
std::map<int, SparseCoef> remap_terms(const std::map<int, SparseCoef>& terms, Map&& map) {
  std::map<int, SparseCoef> out;
  for (const auto& [param, coef] : terms) {
    SparseCoef mapped;
    mapped.reserve(coef.size());
    for (const auto& e : coef) {
      if (auto rc = map(e.row, e.col)) mapped.push_back({rc->first, rc->second, e.value});
    }
    compress(mapped);
    if (!mapped.empty()) out.emplace(param, std::move(mapped));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// ScalarExpr

ScalarExpr ScalarExpr::parameter(int index, double coeff) {
  ScalarExpr s;
  s.coeffs_[index] = coeff;
  return s;
}

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& other) {
  constant_ += other.constant_;
  for (const auto& [k, v] : other.coeffs_) coeffs_[k] += v;
  return *this;
}

ScalarExpr& ScalarExpr::operator-=(const ScalarExpr& other) {
  constant_ -= other.constant_;
  for (const auto& [k, v] : other.coeffs_) coeffs_[k] -= v;
  return *this;
}

ScalarExpr& ScalarExpr::operator*=(double s) {
  constant_ *= s;
  for (auto& [k, v] : coeffs_) v *= s;
  return *this;
}

// ---------------------------------------------------------------------------
// MatrixExpr

MatrixExpr::MatrixExpr(const DenseOperator& constant)
    : dims_(constant.dims()), constant_(constant.matrix()) {
  if (!constant.is_hermitian()) throw std::invalid_argument("MatrixExpr: constant is not Hermitian");
}

MatrixExpr::MatrixExpr(SystemDims dims, CMatrix constant, std::map<int, SparseCoef> terms)
    : dims_(std::move(dims)), constant_(std::move(constant)), terms_(std::move(terms)) {
  if (constant_.rows() != dims_.total() || constant_.cols() != dims_.total()) {
    throw DimensionError("MatrixExpr: constant does not match dims");
  }
}

MatrixExpr MatrixExpr::zero(const SystemDims& dims) {
  return MatrixExpr(dims, CMatrix::Zero(dims.total(), dims.total()), {});
}

MatrixExpr MatrixExpr::identity_times(const ScalarExpr& s, const SystemDims& dims) {
  const int n = dims.total();
  CMatrix constant = s.constant() * CMatrix::Identity(n, n);
  std::map<int, SparseCoef> terms;
  for (const auto& [param, coeff] : s.coeffs()) {
    SparseCoef coef;
    for (int i = 0; i < n; ++i) coef.push_back({i, i, coeff});
    terms.emplace(param, std::move(coef));
  }
  return MatrixExpr(dims, std::move(constant), std::move(terms));
}

MatrixExpr& MatrixExpr::operator+=(const MatrixExpr& other) {
  if (!(dims_ == other.dims_)) {
    throw DimensionError("MatrixExpr: dims differ ([" + dims_.to_string() + "] vs [" +
                         other.dims_.to_string() + "])");
  }
  constant_ += other.constant_;
  for (const auto& [param, coef] : other.terms_) {
    auto& mine = terms_[param];
    mine.insert(mine.end(), coef.begin(), coef.end());
    compress(mine);
  }
  return *this;
}

MatrixExpr& MatrixExpr::operator-=(const MatrixExpr& other) {
  MatrixExpr negated = other;
  negated *= -1.0;
  return *this += negated;
}

MatrixExpr& MatrixExpr::operator*=(double s) {
  constant_ *= s;
  for (auto& [param, coef] : terms_) {
    for (auto& e : coef) e.value *= s;
  }
  return *this;
}

MatrixExpr partial_transpose(const MatrixExpr& expr, const LabelSet& labels) {
  const SystemDims& dims = expr.dims();
  std::vector<bool> flag(dims.size(), false);
  for (const auto& l : labels) flag[dims.position(l)] = true;
  const auto strides = strides_of(dims);
  const int n = dims.total();
  std::vector<int> moving(n, 0);
  for (int i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < dims.size(); ++s) {
      if (flag[s]) moving[i] += ((i / strides[s]) % dims.dim_at(s)) * strides[s];
    }
  }
  auto terms = remap_terms(expr.terms(), [&](int r, int c) {
    return std::optional<std::pair<int, int>>({r - moving[r] + moving[c], c - moving[c] + moving[r]});
  });
  const DenseOperator constant = partial_transpose(DenseOperator(expr.constant(), dims), labels);
  return MatrixExpr(dims, constant.matrix(), std::move(terms));
}

MatrixExpr partial_trace(const MatrixExpr& expr, const LabelSet& labels) {
  const SystemDims& dims = expr.dims();
  std::vector<bool> flag(dims.size(), false);
  for (const auto& l : labels) flag[dims.position(l)] = true;
  const auto strides = strides_of(dims);
  const int n = dims.total();
  std::vector<int> kept(n), traced(n);
  for (int i = 0; i < n; ++i) {
    int k = 0, t = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      const int digit = (i / strides[s]) % dims.dim_at(s);
      if (flag[s]) {
        t = t * dims.dim_at(s) + digit;
      } else {
        k = k * dims.dim_at(s) + digit;
      }
    }
    kept[i] = k;
    traced[i] = t;
  }
  auto terms = remap_terms(expr.terms(), [&](int r, int c) -> std::optional<std::pair<int, int>> {
    if (traced[r] != traced[c]) return std::nullopt;
    return std::pair<int, int>{kept[r], kept[c]};
  });
  const DenseOperator constant = partial_trace(DenseOperator(expr.constant(), dims), labels);
  return MatrixExpr(constant.dims(), constant.matrix(), std::move(terms));
}

MatrixExpr permute(const MatrixExpr& expr, const LabelSet& order) {
  const SystemDims& dims = expr.dims();
  const DenseOperator constant = permute(DenseOperator(expr.constant(), dims), order);
  const SystemDims& target = constant.dims();
  const auto old_strides = strides_of(dims);
  const auto new_strides = strides_of(target);
  const int n = dims.total();
  std::vector<int> map(n, 0);
  for (int i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < target.size(); ++s) {
      const std::size_t old_pos = dims.position(order[s]);
      map[i] += ((i / old_strides[old_pos]) % dims.dim_at(old_pos)) * new_strides[s];
    }
  }
  auto terms = remap_terms(expr.terms(), [&](int r, int c) {
    return std::optional<std::pair<int, int>>({map[r], map[c]});
  });
  return MatrixExpr(target, constant.matrix(), std::move(terms));
}

MatrixExpr conjugate(const MatrixExpr& expr, const CMatrix& k, const SystemDims& new_dims) {
  if (k.cols() != expr.size() || k.rows() != new_dims.total()) {
    throw DimensionError("conjugate: map shape does not match expression and target dims");
  }
  const int m = new_dims.total();
  // Sparse column structure of K.
  std::vector<std::vector<std::pair<int, Complex>>> cols(k.cols());
  for (Eigen::Index c = 0; c < k.cols(); ++c) {
    for (Eigen::Index r = 0; r < k.rows(); ++r) {
      if (std::abs(k(r, c)) > kDropTol) cols[c].push_back({static_cast<int>(r), k(r, c)});
    }
  }
  std::map<int, SparseCoef> terms;
  CMatrix acc(m, m);
  for (const auto& [param, coef] : expr.terms()) {
    acc.setZero();
    for (const auto& e : coef) {
      for (const auto& [ri, ki] : cols[e.row]) {
        for (const auto& [rj, kj] : cols[e.col]) acc(ri, rj) += ki * e.value * std::conj(kj);
      }
    }
    SparseCoef out;
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < m; ++i) {
        if (std::abs(acc(i, j)) > kDropTol) out.push_back({i, j, acc(i, j)});
      }
    }
    if (!out.empty()) terms.emplace(param, std::move(out));
  }
  return MatrixExpr(new_dims, k * expr.constant() * k.adjoint(), std::move(terms));
}

ScalarExpr trace(const MatrixExpr& expr) {
  ScalarExpr s(expr.constant().trace().real());
  for (const auto& [param, coef] : expr.terms()) {
    double v = 0.0;
    for (const auto& e : coef) {
      if (e.row == e.col) v += e.value.real();
    }
    if (v != 0.0) s += ScalarExpr::parameter(param, v);
  }
  return s;
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal:
      return "optimal";
    case SolveStatus::infeasible:
      return "infeasible";
    case SolveStatus::unbounded:
      return "unbounded";
    case SolveStatus::numerical_failure:
      return "numerical-failure";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// SdpProblem

const VariableInfo& SdpProblem::declare(VariableInfo info) {
  for (const auto& v : variables_) {
    if (v.name == info.name) throw std::invalid_argument("SdpProblem: duplicate variable '" + info.name + "'");
  }
  info.first_param = num_params_;
  num_params_ += info.num_params;
  variables_.push_back(std::move(info));
  return variables_.back();
}

MatrixExpr SdpProblem::add_hermitian(const std::string& name, const SystemDims& dims, bool psd) {
  const int n = dims.total();
  const VariableInfo& info = declare({name, dims, 0, n * n, true});
  std::map<int, SparseCoef> terms;
  int param = info.first_param;
  for (int p = 0; p < n; ++p) terms[param++] = {{p, p, 1.0}};
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      terms[param++] = {{p, q, 1.0}, {q, p, 1.0}};
      terms[param++] = {{p, q, Complex(0.0, 1.0)}, {q, p, Complex(0.0, -1.0)}};
    }
  }
  MatrixExpr expr(dims, CMatrix::Zero(n, n), std::move(terms));
  if (psd) add_psd(expr, name);
  return expr;
}

ScalarExpr SdpProblem::add_scalar(const std::string& name) {
  const VariableInfo& info = declare({name, {}, 0, 1, false});
  return ScalarExpr::parameter(info.first_param);
}

void SdpProblem::add_psd(const MatrixExpr& expr, const std::string& name) {
  std::string label = name.empty() ? "psd" + std::to_string(psd_.size()) : name;
  for (const auto& [existing, _] : psd_) {
    if (existing == label) label += "#" + std::to_string(psd_.size());
  }
  psd_.emplace_back(std::move(label), expr);
}

void SdpProblem::add_equality(const ScalarExpr& lhs, double rhs) { equalities_.emplace_back(lhs, rhs); }

void SdpProblem::minimize(const ScalarExpr& objective) { objective_ = objective; }

// ---------------------------------------------------------------------------
// Epigraph gadgets

ScalarExpr opnorm_epigraph(SdpProblem& problem, const MatrixExpr& m, const std::string& name,
                           bool psd_argument) {
  ScalarExpr t = problem.add_scalar(name);
  const MatrixExpr ti = MatrixExpr::identity_times(t, m.dims());
  problem.add_psd(ti - m, name + ".upper");
  if (!psd_argument) problem.add_psd(ti + m, name + ".lower");
  return t;
}

TraceNormEpigraph tracenorm_epigraph(SdpProblem& problem, const MatrixExpr& m, const std::string& name) {
  MatrixExpr p = problem.add_hermitian(name + ".P", m.dims());
  MatrixExpr q = p - m;
  problem.add_psd(q, name + ".Q");
  ScalarExpr t = trace(p) + trace(q);
  return {t, p, q};
}

}  // namespace bidir::conic
