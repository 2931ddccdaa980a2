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
#include <limits>
#include <ostream>

#include "bidir/conic.hpp"

namespace bidir::conic {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Real symmetric sparse matrix in full (both triangles) triplet storage.
struct SymSparse {
  std::vector<int> row, col;
  std::vector<double> val;
  std::vector<int> distinct_rows;
  double frobenius = 0.0;
};

struct Block {
  std::string name;
  int n = 0;
  MatrixXd c0;
  std::vector<int> params;
  std::vector<SymSparse> coefs;
};

// min c.y + c_const  s.t.  c0_k + sum_i y_i G_ik >= 0,  E y = f
struct Canonical {
  int m = 0;
  VectorXd c;
  double c_const = 0.0;
  std::vector<Block> blocks;
  MatrixXd eq;
  VectorXd f;
};

SymSparse embed_sparse(const SparseCoef& coef, int n) {
  SymSparse s;
  auto push = [&](int r, int c, double v) {
    if (v == 0.0) return;
    s.row.push_back(r);
    s.col.push_back(c);
    s.val.push_back(v);
  };
  for (const auto& e : coef) {
    push(e.row, e.col, e.value.real());
    push(e.row + n, e.col + n, e.value.real());
    push(e.row, e.col + n, -e.value.imag());
    push(e.row + n, e.col, e.value.imag());
  }
  double f2 = 0.0;
  for (double v : s.val) f2 += v * v;
  s.frobenius = std::sqrt(f2);
  s.distinct_rows = s.row;
  std::sort(s.distinct_rows.begin(), s.distinct_rows.end());
  s.distinct_rows.erase(std::unique(s.distinct_rows.begin(), s.distinct_rows.end()), s.distinct_rows.end());
  return s;
}

Canonical canonicalize(const SdpProblem& problem) {
  Canonical can;
  can.m = problem.num_params();
  if (problem.psd_constraints().empty()) throw std::invalid_argument("solve: problem has no PSD constraint");

  can.c = VectorXd::Zero(can.m);
  can.c_const = problem.objective().constant();
  for (const auto& [k, v] : problem.objective().coeffs()) can.c(k) += v;

  std::vector<bool> touched(can.m, false);
  for (const auto& [name, expr] : problem.psd_constraints()) {
    const CMatrix& k0 = expr.constant();
    if ((k0 - k0.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
      throw std::invalid_argument("solve: PSD constraint '" + name + "' is not Hermitian");
    }
    Block b;
    b.name = name;
    b.n = 2 * expr.size();
    b.c0 = hermitian_embed(0.5 * (k0 + k0.adjoint()));
    for (const auto& [param, coef] : expr.terms()) {
      SymSparse s = embed_sparse(coef, expr.size());
      if (s.val.empty()) continue;
      b.params.push_back(param);
      b.coefs.push_back(std::move(s));
      touched[param] = true;
    }
    can.blocks.push_back(std::move(b));
  }

  const int p = static_cast<int>(problem.equalities().size());
  can.eq = MatrixXd::Zero(p, can.m);
  can.f = VectorXd::Zero(p);
  for (int r = 0; r < p; ++r) {
    const auto& [lhs, rhs] = problem.equalities()[r];
    for (const auto& [k, v] : lhs.coeffs()) can.eq(r, k) += v;
    can.f(r) = rhs - lhs.constant();
  }
  for (int i = 0; i < can.m; ++i) {
    if (!touched[i]) {
      throw std::invalid_argument("solve: parameter " + std::to_string(i) +
                                  " does not enter any PSD constraint");
    }
  }
  return can;
}

double inner(const MatrixXd& a, const MatrixXd& b) { return a.cwiseProduct(b).sum(); }

double sparse_inner(const SymSparse& s, const MatrixXd& x) {
  double v = 0.0;
  for (std::size_t t = 0; t < s.val.size(); ++t) v += s.val[t] * x(s.row[t], s.col[t]);
  return v;
}

void add_sparse(MatrixXd& out, const SymSparse& s, double scale) {
  for (std::size_t t = 0; t < s.val.size(); ++t) out(s.row[t], s.col[t]) += scale * s.val[t];
}

// c0_k + sum_i y_i G_ik for every block.
std::vector<MatrixXd> lmi_value(const Canonical& can, const VectorXd& y, bool with_constant) {
  std::vector<MatrixXd> out;
  out.reserve(can.blocks.size());
  for (const auto& b : can.blocks) {
    MatrixXd v = with_constant ? b.c0 : MatrixXd::Zero(b.n, b.n);
    for (std::size_t j = 0; j < b.params.size(); ++j) add_sparse(v, b.coefs[j], y(b.params[j]));
    out.push_back(std::move(v));
  }
  return out;
}

// (A X)_i = sum_k <G_ik, X_k>
VectorXd apply_adjoint(const Canonical& can, const std::vector<MatrixXd>& xs) {
  VectorXd out = VectorXd::Zero(can.m);
  for (std::size_t k = 0; k < can.blocks.size(); ++k) {
    const auto& b = can.blocks[k];
    for (std::size_t j = 0; j < b.params.size(); ++j) out(b.params[j]) += sparse_inner(b.coefs[j], xs[k]);
  }
  return out;
}

// M_ij = sum_k tr(G_ik X_k G_jk S_k^{-1})  (HKM Schur complement)
MatrixXd schur_complement(const Canonical& can, const std::vector<MatrixXd>& xs,
                          const std::vector<MatrixXd>& sinv) {
  MatrixXd m = MatrixXd::Zero(can.m, can.m);
  for (std::size_t k = 0; k < can.blocks.size(); ++k) {
    const auto& b = can.blocks[k];
    const MatrixXd& x = xs[k];
    const MatrixXd& si = sinv[k];
    const int n = b.n;
    MatrixXd h(n, n);
    for (std::size_t j = 0; j < b.params.size(); ++j) {
      const SymSparse& g = b.coefs[j];
      const auto& rows = g.distinct_rows;
      // T = (G_j S^{-1}) restricted to the nonzero rows of G_j.
      MatrixXd t = MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), n);
      for (std::size_t e = 0; e < g.val.size(); ++e) {
        const auto pos = std::lower_bound(rows.begin(), rows.end(), g.row[e]) - rows.begin();
        t.row(pos) += g.val[e] * si.row(g.col[e]);
      }
      h.setZero();
      for (std::size_t a = 0; a < rows.size(); ++a) h.noalias() += x.col(rows[a]) * t.row(a);
      const int pj = b.params[j];
      for (std::size_t i = 0; i <= j; ++i) {
        const SymSparse& gi = b.coefs[i];
        double v = 0.0;
        for (std::size_t e = 0; e < gi.val.size(); ++e) v += gi.val[e] * h(gi.col[e], gi.row[e]);
        const int pi = b.params[i];
        m(std::min(pi, pj), std::max(pi, pj)) += v;
      }
    }
  }
  m.triangularView<Eigen::StrictlyLower>() = m.transpose();
  return m;
}

// Largest alpha with X + alpha dX >= 0 (infinity when unconstrained).
double max_step(const MatrixXd& x, const MatrixXd& dx) {
  Eigen::LLT<MatrixXd> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  const auto l = llt.matrixL();
  MatrixXd w = l.solve(dx);
  w = l.solve(w.transpose().eval()).transpose();
  w = 0.5 * (w + w.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(w, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

class SchurSolver {
 public:
  SchurSolver(MatrixXd m, const MatrixXd& eq) : m_(std::move(m)), eq_(eq) {
    double ridge = 0.0;
    const double scale = 1.0 + m_.diagonal().cwiseAbs().maxCoeff();
    for (int attempt = 0; attempt < 6; ++attempt) {
      llt_.compute(m_);
      if (llt_.info() == Eigen::Success) break;
      ridge = ridge == 0.0 ? 1e-14 * scale : ridge * 100.0;
      m_.diagonal().array() += ridge;
    }
    ok_ = llt_.info() == Eigen::Success;
    if (ok_ && eq_.rows() > 0) {
      minv_et_ = llt_.solve(eq_.transpose());
      reduced_.compute(eq_ * minv_et_);
      ok_ = reduced_.info() == Eigen::Success;
    }
  }

  bool ok() const { return ok_; }

  // M dy - E^T dw = h,  E dy = rf
  void solve(const VectorXd& h, const VectorXd& rf, VectorXd& dy, VectorXd& dw) const {
    const VectorXd minv_h = llt_.solve(h);
    if (eq_.rows() == 0) {
      dy = minv_h;
      dw.resize(0);
      return;
    }
    dw = reduced_.solve(rf - eq_ * minv_h);
    dy = minv_h + minv_et_ * dw;
  }

 private:
  MatrixXd m_;
  const MatrixXd& eq_;
  Eigen::LLT<MatrixXd> llt_;
  MatrixXd minv_et_;
  Eigen::LDLT<MatrixXd> reduced_;
  bool ok_ = false;
};

}  // namespace

MatrixXd hermitian_embed(const CMatrix& h) {
  if (h.rows() != h.cols()) throw DimensionError("hermitian_embed: matrix is not square");
  if (h.size() > 0 && (h - h.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw std::invalid_argument("hermitian_embed: matrix is not Hermitian");
  }
  const Eigen::Index n = h.rows();
  MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.bottomRightCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  return out;
}

double SdpSolution::value(const ScalarExpr& expr) const {
  double v = expr.constant();
  for (const auto& [k, c] : expr.coeffs()) v += c * params.at(k);
  return v;
}

CMatrix SdpSolution::value(const MatrixExpr& expr) const {
  CMatrix v = expr.constant();
  for (const auto& [k, coef] : expr.terms()) {
    for (const auto& e : coef) v(e.row, e.col) += params.at(k) * e.value;
  }
  return v;
}

SdpSolution solve(const SdpProblem& problem, const Tolerances& tol) {
  if (problem.num_params() > tol.max_parameters) {
    throw SizeLimitError("solve: " + std::to_string(problem.num_params()) +
                         " scalar parameters exceed the limit of " + std::to_string(tol.max_parameters));
  }
  const Canonical can = canonicalize(problem);
  const int m = can.m;
  const std::size_t nb = can.blocks.size();
  const int p = static_cast<int>(can.f.size());

  int total_n = 0;
  double c0_norm = 0.0;
  for (const auto& b : can.blocks) {
    total_n += b.n;
    c0_norm += b.c0.squaredNorm();
  }
  c0_norm = std::sqrt(c0_norm);
  const double c_norm = can.c.norm();
  const double f_norm = can.f.norm();

  // Infeasible interior starting point.
  std::vector<MatrixXd> x(nb), s(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    const auto& b = can.blocks[k];
    double max_coef = 0.0;
    double x_scale = 0.0;
    for (std::size_t j = 0; j < b.params.size(); ++j) {
      max_coef = std::max(max_coef, b.coefs[j].frobenius);
      x_scale = std::max(x_scale, (1.0 + std::abs(can.c(b.params[j]))) / (1.0 + b.coefs[j].frobenius));
    }
    const double sq = std::sqrt(static_cast<double>(b.n));
    const double xi = std::max({10.0, sq, b.n * x_scale});
    const double eta = std::max({10.0, sq, b.c0.norm(), max_coef});
    x[k] = xi * MatrixXd::Identity(b.n, b.n);
    s[k] = eta * MatrixXd::Identity(b.n, b.n);
  }
  VectorXd y = VectorXd::Zero(m);
  VectorXd w = VectorXd::Zero(p);

  SdpSolution sol;
  sol.status = SolveStatus::numerical_failure;
  int stalled = 0;

  auto finish = [&](SolveStatus status, int iterations) {
    sol.status = status;
    sol.iterations = iterations;
    sol.params.assign(y.data(), y.data() + m);
    const auto values = lmi_value(can, y, true);
    for (std::size_t k = 0; k < nb; ++k) {
      sol.block_values[can.blocks[k].name] = values[k];
      sol.dual_blocks[can.blocks[k].name] = x[k];
    }
    sol.equality_multipliers.assign(w.data(), w.data() + p);
  };

  for (int iter = 0; iter <= tol.max_iterations; ++iter) {
    const auto fy = lmi_value(can, y, true);
    std::vector<MatrixXd> rp(nb);
    double rp_norm = 0.0, mu_num = 0.0, dual_lin = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
      rp[k] = s[k] - fy[k];
      rp_norm += rp[k].squaredNorm();
      mu_num += inner(x[k], s[k]);
      dual_lin += inner(can.blocks[k].c0, x[k]);
    }
    rp_norm = std::sqrt(rp_norm);
    const VectorXd ax = apply_adjoint(can, x);
    const VectorXd ax_eq = p > 0 ? (ax + can.eq.transpose() * w).eval() : ax;
    const VectorXd rd = can.c - ax_eq;
    const VectorXd rf = can.f - can.eq * y;

    const double pobj = can.c.dot(y) + can.c_const;
    const double dobj = -dual_lin + (p > 0 ? can.f.dot(w) : 0.0) + can.c_const;
    const double mu = mu_num / total_n;
    const double pinf = rp_norm / (1.0 + c0_norm) + (p > 0 ? rf.norm() / (1.0 + f_norm) : 0.0);
    const double dinf = rd.norm() / (1.0 + c_norm);
    const double gap = std::abs(pobj - dobj) / std::max(1.0, std::abs(pobj));

    sol.primal_value = pobj;
    sol.dual_value = dobj;
    sol.gap = gap;
    sol.primal_residual = pinf;
    sol.dual_residual = dinf;

    if (tol.trace) {
      *tol.trace << "iter " << iter << " p " << pobj << " d " << dobj << " gap " << gap << " pinf " << pinf
                 << " dinf " << dinf << " mu " << mu << "\n";
    }
    if (!std::isfinite(pobj) || !std::isfinite(dobj) || !std::isfinite(mu)) {
      finish(SolveStatus::numerical_failure, iter);
      return sol;
    }
    if (gap < tol.gap && pinf < tol.feasibility && dinf < tol.feasibility) {
      finish(SolveStatus::optimal, iter);
      return sol;
    }

    // Certificates. Dual ray: X >= 0 with A X + E^T w ~ 0 and positive dual
    // objective proves the LMI infeasible. Primal ray: sum y_i G_i >= 0 with
    // E y ~ 0 and c.y < 0 proves the objective unbounded below.
    const double dual_ray = -dual_lin + (p > 0 ? can.f.dot(w) : 0.0);
    if (dual_ray > 0.0 && ax_eq.norm() / dual_ray < tol.certificate) {
      finish(SolveStatus::infeasible, iter);
      return sol;
    }
    const double primal_ray = -can.c.dot(y);
    if (primal_ray > 0.0) {
      const auto ay = lmi_value(can, y, false);
      double viol = 0.0;
      for (std::size_t k = 0; k < nb; ++k) viol += (ay[k] - s[k]).squaredNorm();
      viol = std::sqrt(viol) + (p > 0 ? (can.eq * y).norm() : 0.0);
      if (viol / primal_ray < tol.certificate) {
        finish(SolveStatus::unbounded, iter);
        return sol;
      }
    }
    if (iter == tol.max_iterations) break;

    std::vector<MatrixXd> sinv(nb);
    for (std::size_t k = 0; k < nb; ++k) {
      Eigen::LLT<MatrixXd> llt(s[k]);
      if (llt.info() != Eigen::Success) {
        finish(SolveStatus::numerical_failure, iter);
        return sol;
      }
      sinv[k] = llt.solve(MatrixXd::Identity(s[k].rows(), s[k].cols()));
      sinv[k] = 0.5 * (sinv[k] + sinv[k].transpose()).eval();
    }
    const SchurSolver schur(schur_complement(can, x, sinv), can.eq);
    if (!schur.ok()) {
      finish(SolveStatus::numerical_failure, iter);
      return sol;
    }

    // One Newton solve for a given (sigma*mu, second-order term).
    std::vector<MatrixXd> dx(nb), ds(nb);
    VectorXd dy, dw;
    auto newton = [&](double target, const std::vector<MatrixXd>* corr) {
      std::vector<MatrixXd> r(nb), lifted(nb);
      for (std::size_t k = 0; k < nb; ++k) {
        r[k] = target * sinv[k] - x[k];
        if (corr) r[k] -= (*corr)[k];
        lifted[k] = r[k] + x[k] * rp[k] * sinv[k];
      }
      const VectorXd h = apply_adjoint(can, lifted) - rd;
      schur.solve(h, rf, dy, dw);
      const auto ady = lmi_value(can, dy, false);
      for (std::size_t k = 0; k < nb; ++k) {
        ds[k] = ady[k] - rp[k];
        MatrixXd d = r[k] - x[k] * ds[k] * sinv[k];
        dx[k] = 0.5 * (d + d.transpose());
      }
    };
    auto step_lengths = [&](double& ap, double& ad) {
      ap = std::numeric_limits<double>::infinity();
      ad = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < nb; ++k) {
        ap = std::min(ap, max_step(s[k], ds[k]));
        ad = std::min(ad, max_step(x[k], dx[k]));
      }
    };

    // Predictor.
    newton(0.0, nullptr);
    double ap = 0.0, ad = 0.0;
    step_lengths(ap, ad);
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);
    double mu_aff = 0.0;
    for (std::size_t k = 0; k < nb; ++k) mu_aff += inner(x[k] + ad * dx[k], s[k] + ap * ds[k]);
    mu_aff /= total_n;
    const double ratio = std::clamp(mu_aff / mu, 0.0, 1.0);
    const double sigma = std::max(ratio * ratio * ratio, 0.0);

    // Corrector with the second-order term dX_aff dS_aff S^{-1}.
    std::vector<MatrixXd> corr(nb);
    for (std::size_t k = 0; k < nb; ++k) corr[k] = dx[k] * ds[k] * sinv[k];
    newton(sigma * mu, &corr);
    step_lengths(ap, ad);
    const double gamma = 0.9 + 0.09 * std::min({1.0, ap, ad});
    ap = std::min(1.0, gamma * ap);
    ad = std::min(1.0, gamma * ad);

    if (ap < 1e-10 && ad < 1e-10) {
      if (++stalled >= 3) break;
    } else {
      stalled = 0;
    }
    y += ap * dy;
    for (std::size_t k = 0; k < nb; ++k) {
      s[k] += ap * ds[k];
      x[k] += ad * dx[k];
    }
    if (p > 0) w += ad * dw;
  }

  finish(SolveStatus::numerical_failure, tol.max_iterations);
  return sol;
}

void write_sdpa(const SdpProblem& problem, std::ostream& out) {
  const Canonical can = canonicalize(problem);
  const int p = static_cast<int>(can.f.size());
  out << "\"bidir-bounds LMI problem; objective constant " << can.c_const << " omitted\n";
  out << can.m << "\n";
  out << can.blocks.size() + (p > 0 ? 1 : 0) << "\n";
  for (const auto& b : can.blocks) out << b.n << ' ';
  if (p > 0) out << -2 * p;
  out << "\n";
  out.precision(17);
  for (int i = 0; i < can.m; ++i) out << (i ? " " : "") << can.c(i);
  out << "\n";
  // SDPA reads sum_i F_i y_i - F_0 >= 0, so F_0 = -c0. Upper triangle, 1-based.
  for (std::size_t k = 0; k < can.blocks.size(); ++k) {
    const auto& b = can.blocks[k];
    for (int c = 0; c < b.n; ++c) {
      for (int r = 0; r <= c; ++r) {
        if (b.c0(r, c) != 0.0) out << 0 << ' ' << k + 1 << ' ' << r + 1 << ' ' << c + 1 << ' ' << -b.c0(r, c) << "\n";
      }
    }
    for (std::size_t j = 0; j < b.params.size(); ++j) {
      const auto& g = b.coefs[j];
      for (std::size_t e = 0; e < g.val.size(); ++e) {
        if (g.row[e] > g.col[e]) continue;
        out << b.params[j] + 1 << ' ' << k + 1 << ' ' << g.row[e] + 1 << ' ' << g.col[e] + 1 << ' ' << g.val[e] << "\n";
      }
    }
  }
  if (p > 0) {
    const std::size_t lp = can.blocks.size() + 1;
    for (int r = 0; r < p; ++r) {
      if (can.f(r) != 0.0) {
        out << 0 << ' ' << lp << ' ' << r + 1 << ' ' << r + 1 << ' ' << can.f(r) << "\n";
        out << 0 << ' ' << lp << ' ' << p + r + 1 << ' ' << p + r + 1 << ' ' << -can.f(r) << "\n";
      }
      for (int i = 0; i < can.m; ++i) {
        if (can.eq(r, i) == 0.0) continue;
        out << i + 1 << ' ' << lp << ' ' << r + 1 << ' ' << r + 1 << ' ' << can.eq(r, i) << "\n";
        out << i + 1 << ' ' << lp << ' ' << p + r + 1 << ' ' << p + r + 1 << ' ' << -can.eq(r, i) << "\n";
      }
    }
  }
}

}  // namespace bidir::conic
