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

// Hermitian semidefinite programs in linear-matrix-inequality form.
//
// A problem is built from real scalar parameters y. Hermitian matrix
// variables contribute n^2 parameters each (diagonal, real and imaginary
// off-diagonal parts); every constraint is either an affine scalar equality
// or an affine Hermitian matrix expression required to be PSD. Each PSD
// constraint is mapped to a real symmetric block of twice the side length
// through [[Re, -Im], [Im, Re]] and the resulting real program is solved by a
// primal-dual interior-point method (HKM direction, Mehrotra corrector).

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bidir/operator.hpp"

namespace bidir::conic {

/// Affine real scalar: constant + sum_i coeff_i * y_i.
class ScalarExpr {
 public:
  ScalarExpr() = default;
  ScalarExpr(double constant) : constant_(constant) {}  // NOLINT: implicit by intent
  static ScalarExpr parameter(int index, double coeff = 1.0);

  double constant() const { return constant_; }
  const std::map<int, double>& coeffs() const { return coeffs_; }

  ScalarExpr& operator+=(const ScalarExpr& other);
  ScalarExpr& operator-=(const ScalarExpr& other);
  ScalarExpr& operator*=(double s);
  friend ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
  friend ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }
  friend ScalarExpr operator*(ScalarExpr a, double s) { return a *= s; }
  friend ScalarExpr operator*(double s, ScalarExpr a) { return a *= s; }
  ScalarExpr operator-() const { return *this * -1.0; }

 private:
  double constant_ = 0.0;
  std::map<int, double> coeffs_;
};

struct Entry {
  int row;
  int col;
  Complex value;
};
using SparseCoef = std::vector<Entry>;

/// Affine Hermitian matrix expression: constant + sum_i y_i * C_i with sparse
/// Hermitian coefficient matrices C_i.
class MatrixExpr {
 public:
  MatrixExpr() = default;
  explicit MatrixExpr(const DenseOperator& constant);
  MatrixExpr(SystemDims dims, CMatrix constant, std::map<int, SparseCoef> terms);

  static MatrixExpr zero(const SystemDims& dims);
  /// s * I for an affine scalar s.
  static MatrixExpr identity_times(const ScalarExpr& s, const SystemDims& dims);

  const SystemDims& dims() const { return dims_; }
  int size() const { return dims_.total(); }
  const CMatrix& constant() const { return constant_; }
  const std::map<int, SparseCoef>& terms() const { return terms_; }

  MatrixExpr& operator+=(const MatrixExpr& other);
  MatrixExpr& operator-=(const MatrixExpr& other);
  MatrixExpr& operator*=(double s);
  friend MatrixExpr operator+(MatrixExpr a, const MatrixExpr& b) { return a += b; }
  friend MatrixExpr operator-(MatrixExpr a, const MatrixExpr& b) { return a -= b; }
  friend MatrixExpr operator*(MatrixExpr a, double s) { return a *= s; }
  friend MatrixExpr operator*(double s, MatrixExpr a) { return a *= s; }
  friend MatrixExpr operator+(MatrixExpr a, const DenseOperator& b) { return a += MatrixExpr(b); }
  friend MatrixExpr operator-(MatrixExpr a, const DenseOperator& b) { return a -= MatrixExpr(b); }

 private:
  SystemDims dims_;
  CMatrix constant_;
  std::map<int, SparseCoef> terms_;
};

MatrixExpr partial_transpose(const MatrixExpr& expr, const LabelSet& labels);
MatrixExpr partial_trace(const MatrixExpr& expr, const LabelSet& labels);
MatrixExpr permute(const MatrixExpr& expr, const LabelSet& order);
/// K X K^dagger for a dense K mapping expr.dims() onto `new_dims`.
MatrixExpr conjugate(const MatrixExpr& expr, const CMatrix& k, const SystemDims& new_dims);
ScalarExpr trace(const MatrixExpr& expr);

enum class SolveStatus { optimal, infeasible, unbounded, numerical_failure };
const char* to_string(SolveStatus status);

struct Tolerances {
  double gap = 1e-8;
  double feasibility = 1e-8;
  /// Threshold on the normalized residual of an infeasibility certificate.
  double certificate = 1e-8;
  int max_iterations = 200;
  /// Largest Schur-complement dimension (number of scalar parameters) accepted.
  int max_parameters = 6000;
  /// Per-iteration progress lines are written here when set.
  std::ostream* trace = nullptr;
};

/// Raised when a problem exceeds the solver's resource limits.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by callers that need an optimal solution and did not get one.
class SolveError : public std::runtime_error {
 public:
  SolveError(SolveStatus status, const std::string& what)
      : std::runtime_error(what + " (" + to_string(status) + ")"), status_(status) {}
  SolveStatus status() const { return status_; }

 private:
  SolveStatus status_;
};

struct VariableInfo {
  std::string name;
  SystemDims dims;  // empty for scalars
  int first_param = 0;
  int num_params = 0;
  bool is_matrix = false;
};

class SdpProblem {
 public:
  /// New Hermitian matrix variable; adds the constraint X >= 0 when `psd`.
  MatrixExpr add_hermitian(const std::string& name, const SystemDims& dims, bool psd = true);
  ScalarExpr add_scalar(const std::string& name);

  /// expr >= 0 (PSD). The expression must be Hermitian.
  void add_psd(const MatrixExpr& expr, const std::string& name = {});
  /// lhs == rhs
  void add_equality(const ScalarExpr& lhs, double rhs);
  void minimize(const ScalarExpr& objective);

  int num_params() const { return num_params_; }
  const std::vector<VariableInfo>& variables() const { return variables_; }
  const std::vector<std::pair<std::string, MatrixExpr>>& psd_constraints() const { return psd_; }
  const std::vector<std::pair<ScalarExpr, double>>& equalities() const { return equalities_; }
  const ScalarExpr& objective() const { return objective_; }

 private:
  const VariableInfo& declare(VariableInfo info);

  int num_params_ = 0;
  std::vector<VariableInfo> variables_;
  std::vector<std::pair<std::string, MatrixExpr>> psd_;
  std::vector<std::pair<ScalarExpr, double>> equalities_;
  ScalarExpr objective_;
};

struct SdpSolution {
  SolveStatus status = SolveStatus::numerical_failure;
  double primal_value = 0.0;
  double dual_value = 0.0;
  /// |primal - dual| / max(1, |primal|)
  double gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  std::vector<double> params;
  /// Real symmetric (embedded) value of every named PSD block.
  std::map<std::string, Eigen::MatrixXd> block_values;
  /// Dual multiplier of every named PSD block (the dual certificate).
  std::map<std::string, Eigen::MatrixXd> dual_blocks;
  /// Multipliers of the scalar equalities, in insertion order.
  std::vector<double> equality_multipliers;

  bool optimal() const { return status == SolveStatus::optimal; }
  double value(const ScalarExpr& expr) const;
  CMatrix value(const MatrixExpr& expr) const;
};

SdpSolution solve(const SdpProblem& problem, const Tolerances& tol = {});

/// [[Re H, -Im H], [Im H, Re H]]; throws on non-Hermitian input.
Eigen::MatrixXd hermitian_embed(const CMatrix& h);

/// t with t*I >= M (and t*I >= -M unless M is known PSD), so min t = ||M||_inf.
ScalarExpr opnorm_epigraph(SdpProblem& problem, const MatrixExpr& m, const std::string& name,
                           bool psd_argument = false);

struct TraceNormEpigraph {
  ScalarExpr t;          // Tr P + Tr Q
  MatrixExpr positive;   // P >= 0
  MatrixExpr negative;   // Q = P - M >= 0
};
/// Decomposes M = P - Q with P, Q >= 0, so min t = ||M||_1.
TraceNormEpigraph tracenorm_epigraph(SdpProblem& problem, const MatrixExpr& m, const std::string& name);

/// Writes the real embedded program in SDPA sparse format (.dat-s).
/// Equalities become pairs of diagonal (LP) block inequalities.
void write_sdpa(const SdpProblem& problem, std::ostream& out);

}  // namespace bidir::conic
