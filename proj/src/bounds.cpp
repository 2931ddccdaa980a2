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

#include "bidir/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bidir/parallel.hpp"
#include "bidir/version.hpp"
#include "bidir/zoo.hpp"

namespace bidir {

namespace {

const char* kSolverName = "dense primal-dual IPM (HKM, Mehrotra)";

std::map<std::string, std::string> provenance(const std::string& method) {
  return {{"method", method}, {"solver", kSolverName}, {"version", kVersion}};
}

CVector normalized(const CVector& v) {
  const double n = v.norm();
  return n > 0.0 ? CVector(v / n) : v;
}

struct Candidate {
  CVector psi;
  CVector phi;
};

struct StartOutcome {
  StartRecord record;
  EntanglementValue best;
};

StartOutcome run_start(const BidirectionalChannel& channel, Candidate x, int index, const OptimizerConfig& config) {
  StartOutcome out;
  out.record.index = index;
  const Eigen::Index np = x.psi.size();
  const Eigen::Index nq = x.phi.size();
  int evals = 0;
  auto evaluate = [&](const Candidate& c) {
    ++evals;
    return emax_at_input(channel, c.psi, c.phi, config.inner);
  };

  try {
    out.best = evaluate(x);
  } catch (const std::exception& e) {
    out.record.error = e.what();
    out.record.evaluations = evals;
    return out;
  }

  // Coordinate moves on real and imaginary parts of both vectors; the first
  // improving move is taken, and the step halves after a sweep without one.
  const Eigen::Index coords = 2 * (np + nq);
  double step = config.initial_step;
  while (step >= config.min_step && evals < config.max_evaluations) {
    bool improved = false;
    for (Eigen::Index c = 0; c < coords && evals < config.max_evaluations; ++c) {
      for (double sign : {1.0, -1.0}) {
        if (evals >= config.max_evaluations) break;
        Candidate y = x;
        const Eigen::Index slot = c / 2;
        const Complex delta = (c % 2 == 0) ? Complex(sign * step, 0.0) : Complex(0.0, sign * step);
        if (slot < np) {
          y.psi(slot) += delta;
        } else {
          y.phi(slot - np) += delta;
        }
        y.psi = normalized(y.psi);
        y.phi = normalized(y.phi);
        try {
          EntanglementValue v = evaluate(y);
          if (v.value_bits > out.best.value_bits + 1e-12) {
            out.best = std::move(v);
            x = std::move(y);
            improved = true;
            break;
          }
        } catch (const std::exception&) {
          // A failed inner solve rejects the move only.
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  out.record.ok = true;
  out.record.value_bits = out.best.value_bits;
  out.record.evaluations = evals;
  return out;
}

Rng start_rng(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return Rng(seq);
}

}  // namespace

BoundReport bidirectional_max_rains(const BidirectionalChannel& channel, const MaxRainsOptions& options) {
  const int da = channel.in_dims().dim_at(0);
  const int db = channel.in_dims().dim_at(1);
  const long choi_dim = static_cast<long>(da) * db * channel.out_dims().total();
  if (choi_dim > options.max_choi_dim) {
    throw conic::SizeLimitError("bidirectional_max_rains: Choi dimension " + std::to_string(choi_dim) +
                                " exceeds " + std::to_string(options.max_choi_dim));
  }
  const DenseOperator j = choi_of_channel(channel);
  const LabelSet bob = choi_bob_labels(channel);
  const LabelSet outputs = channel.out_dims().labels();

  conic::SdpProblem prob;
  const conic::MatrixExpr v = prob.add_hermitian("V", j.dims());
  const conic::MatrixExpr y = prob.add_hermitian("Y", j.dims());
  prob.add_psd(conic::partial_transpose(v - y, bob) - j, "T(V-Y)-J");
  prob.minimize(conic::opnorm_epigraph(prob, conic::partial_trace(v + y, outputs), "t", true));
  const conic::SdpSolution sol = conic::solve(prob, options.tolerances);
  if (!sol.optimal()) throw conic::SolveError(sol.status, "bidirectional_max_rains: SDP not solved");

  BoundReport r;
  r.quantity = "max-rains";
  r.channel = channel.name();
  r.params = channel.params();
  r.optimum = sol.primal_value;
  r.value_bits = std::max(0.0, std::log2(sol.primal_value));
  r.gap = sol.gap;
  r.iterations = sol.iterations;
  r.feasible_set = kPptPrime;
  r.provenance = provenance("bidirectional max-Rains SDP");
  return r;
}

EntanglementValue emax_at_input(const BidirectionalChannel& channel, const CVector& psi, const CVector& phi,
                                const EntanglementOptions& options) {
  const SystemDims& in = channel.in_dims();
  const int da = in.dim_at(0);
  const int db = in.dim_at(1);
  const PureState left(normalized(psi), SystemDims({kRefA, in.label(0)}, {da, da}));
  const PureState right(normalized(phi), SystemDims({in.label(1), kRefB}, {db, db}));
  const DenseOperator out = apply_channel(channel, left.tensor(right).projector());
  return emax_ppt_state(out, choi_cut(channel), options);
}

BoundReport bidirectional_emax(const BidirectionalChannel& channel, const OptimizerConfig& config) {
  if (config.starts < 1) throw std::invalid_argument("bidirectional_emax: need at least one start");
  const int da = channel.in_dims().dim_at(0);
  const int db = channel.in_dims().dim_at(1);

  std::vector<StartOutcome> outcomes(static_cast<std::size_t>(config.starts));
  parallel_for(
      outcomes.size(),
      [&](std::size_t i) {
        const int index = static_cast<int>(i);
        Candidate x;
        if (index == 0) {
          x.psi = max_entangled(da, kRefA, "in").amplitudes();
          x.phi = max_entangled(db, "in", kRefB).amplitudes();
        } else {
          Rng rng = start_rng(config.seed, index);
          x.psi = random_pure(SystemDims({"L", "in"}, {da, da}), rng).amplitudes();
          x.phi = random_pure(SystemDims({"in", "L"}, {db, db}), rng).amplitudes();
        }
        outcomes[i] = run_start(channel, std::move(x), index, config);
      },
      config.threads);

  OptimizerDiagnostics diag;
  diag.starts = config.starts;
  diag.seed = config.seed;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& o : outcomes) {
    diag.per_start.push_back(o.record);
    if (o.record.ok && o.record.value_bits > best) {
      best = o.record.value_bits;
      diag.best_index = o.record.index;
    }
    diag.best_trace.push_back(best);
  }
  if (diag.best_index < 0) {
    throw conic::SolveError(conic::SolveStatus::numerical_failure,
                            "bidirectional_emax: every start failed (" + outcomes.front().record.error + ")");
  }

  const EntanglementValue& winner = outcomes[static_cast<std::size_t>(diag.best_index)].best;
  BoundReport r;
  r.quantity = "emax";
  r.channel = channel.name();
  r.params = channel.params();
  r.value_bits = winner.value_bits;
  r.optimum = winner.optimum;
  r.gap = winner.gap;
  r.iterations = winner.iterations;
  r.feasible_set = winner.feasible_set;
  r.provenance = provenance("multi-start coordinate ascent over pure product inputs; inner PPT-relaxed E_max SDP");
  r.provenance["capacity_claim"] = "none (PPT relaxation; lower estimate of the relaxed supremum)";
  r.optimizer = std::move(diag);
  return r;
}

double strong_converse_error(double bound_bits, int n, double rate_bits) {
  if (n < 1) throw std::invalid_argument("strong_converse_error: n must be at least 1");
  if (rate_bits <= bound_bits) return 0.0;
  return std::max(0.0, 1.0 - std::exp2(-static_cast<double>(n) * (rate_bits - bound_bits)));
}

AmortizationResult amortization_check(const BidirectionalChannel& channel, const DenseOperator& rho,
                                      const EntanglementOptions& options) {
  MaxRainsOptions mr;
  mr.tolerances = options.tolerances;
  return amortization_check(channel, rho, bidirectional_max_rains(channel, mr).value_bits, options);
}

AmortizationResult amortization_check(const BidirectionalChannel& channel, const DenseOperator& rho,
                                      double channel_bits, const EntanglementOptions& options) {
  const SystemDims& in = channel.in_dims();
  const BipartiteCut input_cut{{kRefA, in.label(0)}, {in.label(1), kRefB}};
  input_cut.validate(rho.dims());
  AmortizationResult r;
  r.input_term = max_rains_state(rho, input_cut, options).value_bits;
  r.lhs = max_rains_state(apply_channel(channel, rho), choi_cut(channel), options).value_bits;
  r.channel_term = channel_bits;
  r.rhs = r.input_term + r.channel_term;
  r.satisfied = r.lhs <= r.rhs + kAmortizationSlack;
  return r;
}

AchievabilityReport dephasing_achievability_sim(bool measure_a_and_lb) {
  const BidirectionalChannel channel = collective_dephasing_swap(0.5, std::numbers::pi);
  const DenseOperator in =
      tensor(max_entangled(2, kRefA, kInA).projector(), max_entangled(2, kInB, kRefB).projector());
  AchievabilityReport rep;
  rep.pre_measurement = apply_channel(channel, in);

  CVector minus = CVector::Zero(4);
  minus(0) = 1.0 / std::sqrt(2.0);
  minus(3) = -1.0 / std::sqrt(2.0);
  const DenseOperator plus_pair =
      tensor(max_entangled(2, kOutA, kRefB).projector(), max_entangled(2, kOutB, kRefA).projector());
  const DenseOperator minus_pair =
      tensor(DenseOperator(minus * minus.adjoint(), SystemDims({kOutA, kRefB}, {2, 2})),
             DenseOperator(minus * minus.adjoint(), SystemDims({kOutB, kRefA}, {2, 2})));
  const DenseOperator expected = permute(plus_pair * 0.5 + minus_pair * 0.5, rep.pre_measurement.dims().labels());
  rep.mixture_deviation = max_abs_diff(rep.pre_measurement, expected);

  const LabelSet measured = measure_a_and_lb ? LabelSet{kOutA, kRefB} : LabelSet{kRefA, kOutB};
  const LabelSet kept = measure_a_and_lb ? LabelSet{kOutB, kRefA} : LabelSet{kOutA, kRefB};
  LabelSet order = measured;
  order.insert(order.end(), kept.begin(), kept.end());
  const DenseOperator arranged = permute(rep.pre_measurement, order);
  const DenseOperator target = max_entangled(2, kept[0], kept[1]).projector();

  CMatrix z = CMatrix::Identity(2, 2);
  z(1, 1) = -1.0;
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      CVector k1(2), k2(2);
      k1 << 1.0 / std::sqrt(2.0), (s1 ? -1.0 : 1.0) / std::sqrt(2.0);
      k2 << 1.0 / std::sqrt(2.0), (s2 ? -1.0 : 1.0) / std::sqrt(2.0);
      const CMatrix bra = kron(kron(k1, k2).adjoint(), CMatrix::Identity(4, 4));
      const CMatrix post = bra * arranged.matrix() * bra.adjoint();
      AchievabilityBranch b;
      b.outcome_first = s1;
      b.outcome_second = s2;
      b.probability = post.trace().real();
      const DenseOperator state(post / b.probability, target.dims());
      b.fidelity_before = fidelity(state, target);
      const DenseOperator corrected = s1 == s2 ? state : apply_local(state, kept[0], z);
      b.fidelity_corrected = fidelity(corrected, target);
      rep.max_fidelity_error = std::max(rep.max_fidelity_error, std::abs(1.0 - b.fidelity_corrected));
      (s1 == s2 ? rep.agree_probability : rep.disagree_probability) += b.probability;
      rep.branches.push_back(b);
    }
  }
  return rep;
}

}  // namespace bidir
