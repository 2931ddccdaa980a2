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

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace bidir {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Rng = std::mt19937_64;

/// Ordered set of subsystem labels. Order matters only for presentation.
using LabelSet = std::vector<std::string>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

/// Raised when operator shapes, labels or subsystem dimensions disagree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Labeled tensor-product structure. The first label is the most significant
/// factor in the row-major index.
class SystemDims {
 public:
  SystemDims() = default;
  SystemDims(std::vector<std::string> labels, std::vector<int> dims);
  SystemDims(std::initializer_list<std::pair<std::string, int>> systems);

  static SystemDims single(std::string label, int dim);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& dims() const { return dims_; }
  const std::string& label(std::size_t pos) const { return labels_.at(pos); }
  int dim_at(std::size_t pos) const { return dims_.at(pos); }

  /// Product of all dimensions (1 for the empty system).
  int total() const;
  bool contains(const std::string& label) const;
  std::size_t position(const std::string& label) const;
  int dim(const std::string& label) const;
  int dim(const LabelSet& labels) const;

  SystemDims concat(const SystemDims& other) const;
  SystemDims select(const LabelSet& labels) const;
  SystemDims without(const LabelSet& labels) const;
  SystemDims renamed(const std::string& from, const std::string& to) const;

  std::string to_string() const;

  friend bool operator==(const SystemDims& a, const SystemDims& b) {
    return a.labels_ == b.labels_ && a.dims_ == b.dims_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<int> dims_;
};

/// Complex matrix acting from the space described by `codims` to the space
/// described by `dims`. Square operators have codims == dims.
class DenseOperator {
 public:
  DenseOperator() = default;
  DenseOperator(CMatrix matrix, SystemDims dims);
  DenseOperator(CMatrix matrix, SystemDims dims, SystemDims codims);

  static DenseOperator identity(const SystemDims& dims);
  static DenseOperator zero(const SystemDims& dims);

  const CMatrix& matrix() const { return matrix_; }
  const SystemDims& dims() const { return dims_; }
  const SystemDims& codims() const { return codims_; }
  Eigen::Index rows() const { return matrix_.rows(); }
  Eigen::Index cols() const { return matrix_.cols(); }

  bool is_square() const { return dims_ == codims_; }
  bool is_hermitian(double tol = kHermitianTol) const;
  Complex trace() const;
  DenseOperator adjoint() const;

  /// Same matrix with the labels replaced one for one (dimensions unchanged).
  DenseOperator relabeled(const std::string& from, const std::string& to) const;

  DenseOperator operator+(const DenseOperator& other) const;
  DenseOperator operator-(const DenseOperator& other) const;
  DenseOperator operator*(const DenseOperator& other) const;
  DenseOperator operator*(Complex scale) const;
  friend DenseOperator operator*(Complex scale, const DenseOperator& op) { return op * scale; }

 private:
  CMatrix matrix_;
  SystemDims dims_;
  SystemDims codims_;
};

/// Unit vector with a labeled tensor structure.
class PureState {
 public:
  PureState(CVector amplitudes, SystemDims dims);

  /// Rescales `amplitudes` to unit norm before construction.
  static PureState normalized(CVector amplitudes, SystemDims dims);
  static PureState basis(const SystemDims& dims, Eigen::Index index);

  const CVector& amplitudes() const { return amplitudes_; }
  const SystemDims& dims() const { return dims_; }

  DenseOperator projector() const;
  PureState tensor(const PureState& other) const;

 private:
  CVector amplitudes_;
  SystemDims dims_;
};

/// Kronecker product of plain matrices.
CMatrix kron(const CMatrix& a, const CMatrix& b);
DenseOperator tensor(const DenseOperator& a, const DenseOperator& b);
DenseOperator partial_trace(const DenseOperator& op, const LabelSet& traced);
DenseOperator partial_transpose(const DenseOperator& op, const LabelSet& transposed);

/// Reorders the tensor factors of a square operator to `order`, which must be
/// a permutation of its labels.
DenseOperator permute(const DenseOperator& op, const LabelSet& order);

/// Kronecker-embeds `local` (out_dim x dim(label)) on subsystem `label`;
/// the label keeps its name but takes dimension local.rows().
CMatrix embed_local(const SystemDims& dims, const std::string& label, const CMatrix& local);

/// K rho K^dagger with K acting on one labeled subsystem.
DenseOperator apply_local(const DenseOperator& op, const std::string& label, const CMatrix& local);

double trace_norm(const DenseOperator& op);
double operator_norm(const DenseOperator& op);
/// Uhlmann fidelity (squared convention): F(rho, rho) = 1.
double fidelity(const DenseOperator& rho, const DenseOperator& sigma);
double trace_distance(const DenseOperator& rho, const DenseOperator& sigma);
double min_eigenvalue(const DenseOperator& op);
double max_abs_diff(const DenseOperator& a, const DenseOperator& b);
/// Square root of a PSD Hermitian matrix (negative eigenvalues clamped).
CMatrix psd_sqrt(const CMatrix& m);

/// True when `op` is Hermitian, PSD and unit trace within the density tolerances.
bool is_density(const DenseOperator& op);
void require_density(const DenseOperator& op, const char* what);

/// (1/sqrt d) sum_i |i>|i> on labels a, b.
PureState max_entangled(int d, const std::string& a, const std::string& b);
/// Unnormalized sum_i |i>|i>.
CVector unnormalized_max_entangled(int d);

CMatrix haar_unitary(int d, Rng& rng);
PureState random_pure(const SystemDims& dims, Rng& rng);
/// Ginibre-distributed density matrix of the given rank (full rank when rank <= 0).
DenseOperator random_density(const SystemDims& dims, Rng& rng, int rank = 0);

/// Text fixture format: a header line "dims L1:d1 L2:d2 ..." followed by one
/// row per line of whitespace-separated "re+imj" entries.
void write_operator(std::ostream& out, const DenseOperator& op);
DenseOperator read_operator(std::istream& in);
std::string format_complex(Complex z);
Complex parse_complex(const std::string& token);

}  // namespace bidir
