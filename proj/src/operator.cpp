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

#include "bidir/operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace bidir {

namespace {

// Row-major strides for the given dimensions.
std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> strides(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) {
    strides[k] = strides[k + 1] * dims[k + 1];
  }
  return strides;
}

void require_square(const DenseOperator& op, const char* what) {
  if (!op.is_square()) {
    throw DimensionError(std::string(what) + ": operator is not square");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SystemDims

SystemDims::SystemDims(std::vector<std::string> labels, std::vector<int> dims)
    : labels_(std::move(labels)), dims_(std::move(dims)) {
  if (labels_.size() != dims_.size()) {
    throw DimensionError("SystemDims: label and dimension counts differ");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (dims_[i] <= 0) {
      throw DimensionError("SystemDims: dimension of '" + labels_[i] + "' must be positive");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (labels_[i] == labels_[j]) {
        throw DimensionError("SystemDims: duplicate label '" + labels_[i] + "'");
      }
    }
  }
}

SystemDims::SystemDims(std::initializer_list<std::pair<std::string, int>> systems) {
  std::vector<std::string> labels;
  std::vector<int> dims;
  for (const auto& [label, dim] : systems) {
    labels.push_back(label);
    dims.push_back(dim);
  }
  *this = SystemDims(std::move(labels), std::move(dims));
}

SystemDims SystemDims::single(std::string label, int dim) {
  return SystemDims({std::move(label)}, {dim});
}

int SystemDims::total() const {
  int n = 1;
  for (int d : dims_) n *= d;
  return n;
}

bool SystemDims::contains(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t SystemDims::position(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw DimensionError("unknown subsystem label '" + label + "' in [" + to_string() + "]");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

int SystemDims::dim(const std::string& label) const { return dims_[position(label)]; }

int SystemDims::dim(const LabelSet& labels) const {
  int n = 1;
  for (const auto& l : labels) n *= dim(l);
  return n;
}

SystemDims SystemDims::concat(const SystemDims& other) const {
  std::vector<std::string> labels = labels_;
  std::vector<int> dims = dims_;
  for (std::size_t i = 0; i < other.size(); ++i) {
    if (contains(other.labels_[i])) {
      throw DimensionError("label collision on '" + other.labels_[i] + "'");
    }
    labels.push_back(other.labels_[i]);
    dims.push_back(other.dims_[i]);
  }
  return SystemDims(std::move(labels), std::move(dims));
}

SystemDims SystemDims::select(const LabelSet& labels) const {
  std::vector<int> dims;
  for (const auto& l : labels) dims.push_back(dim(l));
  return SystemDims(labels, std::move(dims));
}

SystemDims SystemDims::without(const LabelSet& labels) const {
  for (const auto& l : labels) position(l);
  std::vector<std::string> kept_labels;
  std::vector<int> kept_dims;
  for (std::size_t i = 0; i < size(); ++i) {
    if (std::find(labels.begin(), labels.end(), labels_[i]) == labels.end()) {
      kept_labels.push_back(labels_[i]);
      kept_dims.push_back(dims_[i]);
    }
  }
  return SystemDims(std::move(kept_labels), std::move(kept_dims));
}

SystemDims SystemDims::renamed(const std::string& from, const std::string& to) const {
  std::vector<std::string> labels = labels_;
  labels[position(from)] = to;
  return SystemDims(std::move(labels), dims_);
}

std::string SystemDims::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) s += ' ';
    s += labels_[i] + ":" + std::to_string(dims_[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// DenseOperator

DenseOperator::DenseOperator(CMatrix matrix, SystemDims dims)
    : DenseOperator(std::move(matrix), dims, dims) {}

DenseOperator::DenseOperator(CMatrix matrix, SystemDims dims, SystemDims codims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)), codims_(std::move(codims)) {
  if (matrix_.rows() != dims_.total() || matrix_.cols() != codims_.total()) {
    throw DimensionError("DenseOperator: matrix is " + std::to_string(matrix_.rows()) + "x" +
                         std::to_string(matrix_.cols()) + " but dims are [" + dims_.to_string() +
                         "] -> [" + codims_.to_string() + "]");
  }
}

DenseOperator DenseOperator::identity(const SystemDims& dims) {
  return DenseOperator(CMatrix::Identity(dims.total(), dims.total()), dims);
}

DenseOperator DenseOperator::zero(const SystemDims& dims) {
  return DenseOperator(CMatrix::Zero(dims.total(), dims.total()), dims);
}

bool DenseOperator::is_hermitian(double tol) const {
  if (!is_square()) return false;
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Complex DenseOperator::trace() const {
  require_square(*this, "trace");
  return matrix_.trace();
}

DenseOperator DenseOperator::adjoint() const {
  return DenseOperator(matrix_.adjoint(), codims_, dims_);
}

DenseOperator DenseOperator::relabeled(const std::string& from, const std::string& to) const {
  SystemDims dims = dims_.contains(from) ? dims_.renamed(from, to) : dims_;
  SystemDims codims = codims_.contains(from) ? codims_.renamed(from, to) : codims_;
  return DenseOperator(matrix_, std::move(dims), std::move(codims));
}

DenseOperator DenseOperator::operator+(const DenseOperator& other) const {
  if (!(dims_ == other.dims_) || !(codims_ == other.codims_)) {
    throw DimensionError("operator+: dims differ");
  }
  return DenseOperator(matrix_ + other.matrix_, dims_, codims_);
}

DenseOperator DenseOperator::operator-(const DenseOperator& other) const {
  if (!(dims_ == other.dims_) || !(codims_ == other.codims_)) {
    throw DimensionError("operator-: dims differ");
  }
  return DenseOperator(matrix_ - other.matrix_, dims_, codims_);
}

DenseOperator DenseOperator::operator*(const DenseOperator& other) const {
  if (!(codims_ == other.dims_)) {
    throw DimensionError("operator*: inner dims differ ([" + codims_.to_string() + "] vs [" +
                         other.dims_.to_string() + "])");
  }
  return DenseOperator(matrix_ * other.matrix_, dims_, other.codims_);
}

DenseOperator DenseOperator::operator*(Complex scale) const {
  return DenseOperator(matrix_ * scale, dims_, codims_);
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(CVector amplitudes, SystemDims dims)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
  if (amplitudes_.size() != dims_.total()) {
    throw DimensionError("PureState: amplitude count does not match dims");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > kNormTol) {
    throw std::invalid_argument("PureState: amplitudes are not normalized");
  }
}

PureState PureState::normalized(CVector amplitudes, SystemDims dims) {
  const double n = amplitudes.norm();
  if (n == 0.0) throw std::invalid_argument("PureState: zero vector");
  return PureState(amplitudes / n, std::move(dims));
}

PureState PureState::basis(const SystemDims& dims, Eigen::Index index) {
  CVector v = CVector::Zero(dims.total());
  v(index) = 1.0;
  return PureState(std::move(v), dims);
}

DenseOperator PureState::projector() const {
  return DenseOperator(amplitudes_ * amplitudes_.adjoint(), dims_);
}

PureState PureState::tensor(const PureState& other) const {
  SystemDims dims = dims_.concat(other.dims_);
  CVector v(amplitudes_.size() * other.amplitudes_.size());
  for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
    v.segment(i * other.amplitudes_.size(), other.amplitudes_.size()) =
        amplitudes_(i) * other.amplitudes_;
  }
  return PureState(std::move(v), std::move(dims));
}

// ---------------------------------------------------------------------------
// Tensor algebra

CMatrix kron(const CMatrix& x, const CMatrix& y) {
  CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

DenseOperator tensor(const DenseOperator& a, const DenseOperator& b) {
  SystemDims dims = a.dims().concat(b.dims());
  SystemDims codims = a.codims().concat(b.codims());
  return DenseOperator(kron(a.matrix(), b.matrix()), std::move(dims), std::move(codims));
}

DenseOperator partial_trace(const DenseOperator& op, const LabelSet& traced) {
  require_square(op, "partial_trace");
  const SystemDims& dims = op.dims();
  std::vector<bool> is_traced(dims.size(), false);
  for (const auto& l : traced) is_traced[dims.position(l)] = true;
  SystemDims kept = dims.without(traced);

  const int n = dims.total();
  const auto strides = strides_of(dims.dims());
  std::vector<int> kept_index(n), traced_index(n);
  for (int i = 0; i < n; ++i) {
    int k = 0, t = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      const int digit = (i / strides[s]) % dims.dim_at(s);
      if (is_traced[s]) {
        t = t * dims.dim_at(s) + digit;
      } else {
        k = k * dims.dim_at(s) + digit;
      }
    }
    kept_index[i] = k;
    traced_index[i] = t;
  }

  const int m = kept.total();
  CMatrix out = CMatrix::Zero(m, m);
  const CMatrix& in = op.matrix();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += in(i, j);
    }
  }
  return DenseOperator(std::move(out), std::move(kept));
}

DenseOperator partial_transpose(const DenseOperator& op, const LabelSet& transposed) {
  require_square(op, "partial_transpose");
  const SystemDims& dims = op.dims();
  std::vector<bool> flag(dims.size(), false);
  for (const auto& l : transposed) flag[dims.position(l)] = true;

  const int n = dims.total();
  const auto strides = strides_of(dims.dims());
  // Split each index into the part carried by transposed factors and the rest.
  std::vector<int> moving(n);
  for (int i = 0; i < n; ++i) {
    int part = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      if (flag[s]) part += ((i / strides[s]) % dims.dim_at(s)) * strides[s];
    }
    moving[i] = part;
  }
  const CMatrix& in = op.matrix();
  CMatrix out(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int i2 = i - moving[i] + moving[j];
      const int j2 = j - moving[j] + moving[i];
      out(i2, j2) = in(i, j);
    }
  }
  return DenseOperator(std::move(out), dims);
}

DenseOperator permute(const DenseOperator& op, const LabelSet& order) {
  require_square(op, "permute");
  const SystemDims& dims = op.dims();
  if (order.size() != dims.size()) throw DimensionError("permute: order is not a permutation");
  SystemDims target = dims.select(order);

  const int n = dims.total();
  const auto old_strides = strides_of(dims.dims());
  const auto new_strides = strides_of(target.dims());
  std::vector<int> map(n);
  for (int i = 0; i < n; ++i) {
    int idx = 0;
    for (std::size_t s = 0; s < target.size(); ++s) {
      const std::size_t old_pos = dims.position(order[s]);
      idx += ((i / old_strides[old_pos]) % dims.dim_at(old_pos)) * new_strides[s];
    }
    map[i] = idx;
  }
  const CMatrix& in = op.matrix();
  CMatrix out(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) out(map[i], map[j]) = in(i, j);
  }
  return DenseOperator(std::move(out), std::move(target));
}

CMatrix embed_local(const SystemDims& dims, const std::string& label, const CMatrix& local) {
  const std::size_t pos = dims.position(label);
  if (local.cols() != dims.dim_at(pos)) {
    throw DimensionError("embed_local: local operator does not match subsystem '" + label + "'");
  }
  CMatrix out = CMatrix::Identity(1, 1);
  for (std::size_t s = 0; s < dims.size(); ++s) {
    const CMatrix factor =
        s == pos ? local : CMatrix::Identity(dims.dim_at(s), dims.dim_at(s)).eval();
    CMatrix next(out.rows() * factor.rows(), out.cols() * factor.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) {
        next.block(i * factor.rows(), j * factor.cols(), factor.rows(), factor.cols()) =
            out(i, j) * factor;
      }
    }
    out = std::move(next);
  }
  return out;
}

DenseOperator apply_local(const DenseOperator& op, const std::string& label, const CMatrix& local) {
  require_square(op, "apply_local");
  const CMatrix k = embed_local(op.dims(), label, local);
  std::vector<int> dims = op.dims().dims();
  dims[op.dims().position(label)] = static_cast<int>(local.rows());
  return DenseOperator(k * op.matrix() * k.adjoint(), SystemDims(op.dims().labels(), dims));
}

// ---------------------------------------------------------------------------
// Norms and spectra

double trace_norm(const DenseOperator& op) {
  require_square(op, "trace_norm");
  if (op.is_hermitian()) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(op.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<CMatrix> svd(op.matrix());
  return svd.singularValues().sum();
}

double operator_norm(const DenseOperator& op) {
  require_square(op, "operator_norm");
  if (op.is_hermitian()) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(op.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::JacobiSVD<CMatrix> svd(op.matrix());
  return svd.singularValues()(0);
}

CMatrix psd_sqrt(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const DenseOperator& rho, const DenseOperator& sigma) {
  require_square(rho, "fidelity");
  if (!(rho.dims() == sigma.dims())) throw DimensionError("fidelity: dims differ");
  const CMatrix a = psd_sqrt(rho.matrix());
  const CMatrix b = psd_sqrt(sigma.matrix());
  Eigen::JacobiSVD<CMatrix> svd(a * b);
  const double f = svd.singularValues().sum();
  return std::clamp(f * f, 0.0, 1.0);
}

double trace_distance(const DenseOperator& rho, const DenseOperator& sigma) {
  return 0.5 * trace_norm(rho - sigma);
}

double min_eigenvalue(const DenseOperator& op) {
  if (!op.is_hermitian(1e-8)) throw std::invalid_argument("min_eigenvalue: operator is not Hermitian");
  const CMatrix h = 0.5 * (op.matrix() + op.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_abs_diff(const DenseOperator& a, const DenseOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff: shapes differ");
  if (a.rows() == 0) return 0.0;
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

bool is_density(const DenseOperator& op) {
  if (!op.is_hermitian()) return false;
  if (std::abs(op.trace() - Complex(1.0, 0.0)) > kTraceTol) return false;
  return min_eigenvalue(op) >= -kPsdTol;
}

void require_density(const DenseOperator& op, const char* what) {
  if (!is_density(op)) {
    throw std::invalid_argument(std::string(what) + ": input is not a density operator");
  }
}

// ---------------------------------------------------------------------------
// Standard states and random sampling

CVector unnormalized_max_entangled(int d) {
  CVector v = CVector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0;
  return v;
}

PureState max_entangled(int d, const std::string& a, const std::string& b) {
  return PureState(unnormalized_max_entangled(d) / std::sqrt(static_cast<double>(d)),
                   SystemDims({a, b}, {d, d}));
}

CMatrix haar_unitary(int d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix z(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) z(i, j) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  for (int i = 0; i < d; ++i) {
    const Complex rii = r(i, i);
    q.col(i) *= std::abs(rii) > 0 ? rii / std::abs(rii) : Complex(1.0);
  }
  return q;
}

PureState random_pure(const SystemDims& dims, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(dims.total());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(normal(rng), normal(rng));
  return PureState::normalized(std::move(v), dims);
}

DenseOperator random_density(const SystemDims& dims, Rng& rng, int rank) {
  const int n = dims.total();
  const int r = rank <= 0 ? n : rank;
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(n, r);
  for (int j = 0; j < r; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DenseOperator(std::move(rho), dims);
}

// ---------------------------------------------------------------------------
// Text format

std::string format_complex(Complex z) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", z.real(), z.imag());
  return buf;
}

Complex parse_complex(const std::string& token) {
  if (token.empty() || token.back() != 'j') {
    throw std::invalid_argument("parse_complex: expected re+imj, got '" + token + "'");
  }
  // The split point is the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = token.size() - 1; i > 0; --i) {
    if ((token[i] == '+' || token[i] == '-') && token[i - 1] != 'e' && token[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    throw std::invalid_argument("parse_complex: missing imaginary part in '" + token + "'");
  }
  try {
    const double re = std::stod(token.substr(0, split));
    const double im = std::stod(token.substr(split, token.size() - split - 1));
    return {re, im};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("parse_complex: malformed entry '" + token + "'");
  }
}

void write_operator(std::ostream& out, const DenseOperator& op) {
  out << "dims";
  for (std::size_t i = 0; i < op.dims().size(); ++i) {
    out << ' ' << op.dims().label(i) << ':' << op.dims().dim_at(i);
  }
  if (!op.is_square()) {
    out << " |";
    for (std::size_t i = 0; i < op.codims().size(); ++i) {
      out << ' ' << op.codims().label(i) << ':' << op.codims().dim_at(i);
    }
  }
  out << '\n';
  for (Eigen::Index i = 0; i < op.rows(); ++i) {
    for (Eigen::Index j = 0; j < op.cols(); ++j) {
      if (j) out << ' ';
      out << format_complex(op.matrix()(i, j));
    }
    out << '\n';
  }
}

DenseOperator read_operator(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("read_operator: empty input");
  std::istringstream header(line);
  std::string word;
  header >> word;
  if (word != "dims") throw std::invalid_argument("read_operator: missing dims header");

  std::vector<std::string> labels[2];
  std::vector<int> dims[2];
  int side = 0;
  while (header >> word) {
    if (word == "|") {
      side = 1;
      continue;
    }
    const auto colon = word.rfind(':');
    if (colon == std::string::npos) throw std::invalid_argument("read_operator: bad dims token '" + word + "'");
    labels[side].push_back(word.substr(0, colon));
    dims[side].push_back(std::stoi(word.substr(colon + 1)));
  }
  SystemDims row_dims(labels[0], dims[0]);
  SystemDims col_dims = side ? SystemDims(labels[1], dims[1]) : row_dims;

  CMatrix m(row_dims.total(), col_dims.total());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (!std::getline(in, line)) throw std::invalid_argument("read_operator: truncated matrix");
    std::istringstream row(line);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!(row >> word)) throw std::invalid_argument("read_operator: short row");
      m(i, j) = parse_complex(word);
    }
  }
  return DenseOperator(std::move(m), std::move(row_dims), std::move(col_dims));
}

}  // namespace bidir
