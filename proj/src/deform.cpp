// Copyright 2026 The qcgeo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcgeo/deform.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcgeo {

namespace {

struct Pinv {
  RMatrix u, v;
  RVector s;

  void compute(const RMatrix& m) {
    Eigen::JacobiSVD<RMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    u = svd.matrixU();
    v = svd.matrixV();
    s = svd.singularValues();
  }
  double sigma_max() const { return s(0); }
  double sigma_min() const { return s(s.size() - 1); }
  // Least-squares solve with a relative cutoff; truncated reports whether any
  // direction was dropped.
  RVector solve(const RVector& rhs, double rel_cutoff, bool* truncated) const {
    const double cutoff = rel_cutoff * s(0);
    RVector y = u.transpose() * rhs;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(i) > cutoff) {
        y(i) /= s(i);
      } else {
        y(i) = 0.0;
        if (truncated) *truncated = true;
      }
    }
    return v * y;
  }
};

// Cumulative Simpson over the trajectory grid of
// U^dag(t) (i t [P(H),Q(H)]) U(t).
Matrix q1_drive_integral(const GeodesicTrajectory& traj) {
  const PenaltyMetric& metric = traj.metric;
  const int nodes = traj.nodes();
  std::vector<Matrix> f(nodes);
  for (int i = 0; i < nodes; ++i) {
    auto [hp, hq] = split_PQ(traj.H[i], metric);
    Matrix w = kI * traj.times(i) * commutator(hp, hq);
    f[i] = traj.U[i].adjoint() * w * traj.U[i];
  }
  const double h = traj.times(1) - traj.times(0);
  Matrix acc = Matrix::Zero(f[0].rows(), f[0].cols());
  int i = 0;
  int intervals = nodes - 1;
  if (intervals % 2 == 1) {
    if (intervals >= 3) {
      acc += 3.0 * h / 8.0 * (f[0] + 3.0 * f[1] + 3.0 * f[2] + f[3]);
      i = 3;
      intervals -= 3;
    } else {
      return 0.5 * h * (f[0] + f[1]);
    }
  }
  for (; i + 2 < nodes; i += 2) {
    acc += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
  }
  return acc;
}

// dH_q(0)/dq from an already-factored endpoint propagator.
Matrix derivative_from_jt(const Pinv& jt, const GeodesicTrajectory& traj, double q,
                          bool* pinv_used) {
  const int n = traj.metric.n();
  if (std::abs(q - 1.0) < 1e-12) {
    Matrix integral = q1_drive_integral(traj);
    return from_traceless_coeffs(jt.solve(traceless_coeffs(integral, n), 1e-10, pinv_used), n);
  }
  RVector l0 = traceless_coeffs(traj.L.front(), n);
  RVector x = jt.solve(l0, 1e-10, pinv_used);
  return from_traceless_coeffs(RVector((x * traj.T - l0) / (q * (q - 1.0))), n);
}

}  // namespace

double endpoint_error(const GeodesicTrajectory& traj, const Matrix& u_target) {
  return operator_norm(traj.endpoint() - u_target);
}

GeodesicDerivative geodesic_derivative(const GeodesicTrajectory& traj,
                                       const JacobiPropagator& prop, double q) {
  GeodesicDerivative out;
  out.JT = prop.endpoint_JT();
  Pinv jt;
  jt.compute(out.JT);
  out.sigma_max = jt.sigma_max();
  out.sigma_min = jt.sigma_min();
  out.dH0_dq = derivative_from_jt(jt, traj, q, &out.pinv_used);
  return out;
}

namespace {

// One corrector-converged continuation node: integrate, pull the endpoint
// back onto the target with Newton steps through J_T, and keep the factored
// endpoint propagator for the predictor and for dip refinement.
struct NodeEval {
  double q = 0.0;
  Matrix l0;
  GeodesicTrajectory traj;
  Pinv jt;
  double err = 0.0;
  int corrector_iters = 0;
  bool pinv_used = false;
  bool converged = false;
};

NodeEval evaluate_node(double q, Matrix l0, const Matrix& target, double T,
                       const ContinuationOptions& opts, int n) {
  NodeEval ev;
  ev.q = q;
  PenaltyMetric metric = PenaltyMetric::standard(n, q);
  l0 = 0.5 * (l0 + l0.adjoint().eval());
  ev.traj = integrate_geodesic(l0, metric, T, opts.steps);
  ev.err = endpoint_error(ev.traj, target);

  JacobiPropagatorOptions popts;
  popts.store_stride = 0;
  popts.node_stats = false;
  ev.jt.compute(jacobi_propagator(ev.traj, popts).endpoint_JT());

  while (ev.err > opts.corrector_target && ev.corrector_iters < opts.max_corrector_iters) {
    // U(T) e^{-i J(T)} = target  =>  J(T) = i log(U(T)^dag target).
    CanonicalLog defect = canonical_hamiltonian(ev.traj.endpoint().adjoint() * target, 1.0);
    bool truncated = false;
    RVector step =
        ev.jt.solve(traceless_coeffs(defect.traceless, n), opts.pinv_rel_cutoff, &truncated);
    ev.pinv_used = ev.pinv_used || truncated;
    Matrix l0_prev = l0;
    l0 += metric.apply_G(from_traceless_coeffs(step, n));
    GeodesicTrajectory trial = integrate_geodesic(l0, metric, T, opts.steps);
    const double new_err = endpoint_error(trial, target);
    ++ev.corrector_iters;
    if (new_err >= ev.err) {  // stalled; keep the better point
      l0 = std::move(l0_prev);
      break;
    }
    ev.traj = std::move(trial);
    ev.err = new_err;
  }
  ev.l0 = l0;
  if (ev.corrector_iters > 0) {
    // The corrector moved L(0); refresh the propagator at the accepted point.
    ev.jt.compute(jacobi_propagator(ev.traj, popts).endpoint_JT());
  }
  ev.converged = ev.err <= opts.endpoint_tol;
  return ev;
}

TraceNode node_from_eval(const NodeEval& ev, const ContinuationOptions& opts, int n) {
  PenaltyMetric metric = PenaltyMetric::standard(n, ev.q);
  TraceNode node;
  node.q = ev.q;
  node.l0 = pauli_spectrum(ev.l0, n).real();
  node.length = curve_length(ev.traj.times, ev.traj.H, metric);
  node.endpoint_error = ev.err;
  node.sigma_min_JT = ev.jt.sigma_min();
  node.sigma_max_JT = ev.jt.sigma_max();
  node.near_singular = node.sigma_min_JT <= opts.near_singular_rel * node.sigma_max_JT;
  node.pinv_used = ev.pinv_used;
  node.corrector_iters = ev.corrector_iters;
  return node;
}

// Predictor direction dL/dq at an evaluated node.
Matrix predictor_direction(const NodeEval& ev, double T, const ContinuationOptions& opts, int n,
                           bool* pinv_used) {
  PenaltyMetric metric = PenaltyMetric::standard(n, ev.q);
  Matrix dh = derivative_from_jt(ev.jt, ev.traj, ev.q, pinv_used);
  Matrix h_now = metric.apply_F(ev.l0);
  (void)T;
  return metric.apply_Q(h_now) + metric.apply_G(dh);
}

}  // namespace

DeformationTrace continue_in_q(const Matrix& u_target, const PenaltyMetric& base_metric, double T,
                               const double q_end, const ContinuationOptions& opts,
                               const Matrix* h_start) {
  if (base_metric.kind() != PenaltyMetric::Kind::Standard) {
    throw std::invalid_argument("continue_in_q: continuation deforms the standard metric family");
  }
  if (q_end <= 1.0) throw std::invalid_argument("continue_in_q: q_end must exceed 1");
  const int n = base_metric.n();

  DeformationTrace trace;
  trace.T = T;
  SuNormalized norm = su_normalize(u_target);
  trace.target = norm.u;
  trace.target_phase = norm.applied_phase;

  Matrix h0 = h_start ? *h_start : canonical_hamiltonian(trace.target, T).traceless;
  Matrix l0 = h0;  // G is the identity at q = 1

  const double dln_base = std::log(10.0) / opts.nodes_per_decade;
  const double lnq_end = std::log(q_end);
  double lnq = 0.0;
  bool densified = false;

  // Rolling window of accepted nodes for V-dip detection in sigma_min(q): the
  // propagator can pass through a singularity between grid nodes, which the
  // log-spaced march would otherwise step over.
  double win_q[3] = {0, 0, 0};
  double win_sigma[3] = {0, 0, 0};
  int accepted = 0;
  NodeEval mid_eval;  // the node one step back, used to seed dip probes

  auto probe_from = [&](const NodeEval& seed, double q) {
    Matrix guess = seed.l0;
    if (seed.q > 1.0 + 1e-9) {
      Matrix dldq = predictor_direction(seed, T, opts, n, nullptr);
      guess += (q - seed.q) * dldq;
    }
    return evaluate_node(q, guess, trace.target, T, opts, n);
  };

  // Golden-section localization of the sigma_min minimum between two
  // accepted nodes; each probe is a fully corrector-converged node.
  auto refine_dip = [&](const NodeEval& seed, double q_lo, double q_hi) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = q_lo, b = q_hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    NodeEval ec = probe_from(seed, c), ed = probe_from(seed, d);
    NodeEval best = (ec.jt.sigma_min() < ed.jt.sigma_min()) ? ec : ed;
    for (int it = 0; it < 28 && (b - a) > 1e-10 * b; ++it) {
      if (ec.jt.sigma_min() < ed.jt.sigma_min()) {
        b = d;
        d = c;
        ed = std::move(ec);
        c = b - gr * (b - a);
        ec = probe_from(seed, c);
      } else {
        a = c;
        c = d;
        ec = std::move(ed);
        d = a + gr * (b - a);
        ed = probe_from(seed, d);
      }
      const NodeEval& cand = (ec.jt.sigma_min() < ed.jt.sigma_min()) ? ec : ed;
      if (cand.jt.sigma_min() < best.jt.sigma_min()) best = cand;
      if (best.jt.sigma_min() <= 1e-7 * std::max(1.0, best.jt.sigma_max())) break;
    }
    return best;
  };

  while (true) {
    const double q = std::exp(lnq);
    NodeEval ev = evaluate_node(q, l0, trace.target, T, opts, n);
    if (!ev.converged) {
      trace.failure = "endpoint error " + std::to_string(ev.err) + " above tolerance at q = " +
                      std::to_string(q) + " after " + std::to_string(ev.corrector_iters) +
                      " corrector steps";
      trace.success = false;
      return trace;
    }

    TraceNode node = node_from_eval(ev, opts, n);
    trace.total_corrector_iters += ev.corrector_iters;

    win_q[accepted % 3] = q;
    win_sigma[accepted % 3] = node.sigma_min_JT;
    ++accepted;
    if (accepted >= 3 && !node.near_singular) {
      const int i2 = (accepted - 1) % 3;
      const int i1 = (accepted - 2) % 3;
      const int i0 = (accepted - 3) % 3;
      const bool v_shape = win_sigma[i1] < win_sigma[i0] && win_sigma[i1] < win_sigma[i2];
      const double attempt_level = 10.0 * opts.near_singular_rel * node.sigma_max_JT;
      if (v_shape && win_sigma[i1] <= attempt_level) {
        NodeEval dip = refine_dip(mid_eval, win_q[i0], win_q[i2]);
        if (dip.converged) {
          TraceNode dip_node = node_from_eval(dip, opts, n);
          trace.total_corrector_iters += dip.corrector_iters;
          densified = densified || dip_node.near_singular;
          trace.nodes.push_back(std::move(dip_node));
        }
      }
    }

    Matrix dldq_m = predictor_direction(ev, T, opts, n, &node.pinv_used);
    node.dl0_dq = pauli_spectrum(dldq_m, n).real();
    const bool flag_now = node.near_singular;
    trace.nodes.push_back(std::move(node));

    if (lnq >= lnq_end * (1.0 - 1e-12)) break;

    double dln = dln_base;
    if (flag_now || densified) dln = dln_base / opts.densify_factor;
    densified = flag_now;  // densification persists one base spacing past a flag
    const double lnq_next = std::min(lnq + dln, lnq_end);
    const double dq = std::exp(lnq_next) - std::exp(lnq);
    l0 = ev.l0 + dq * dldq_m;
    mid_eval = std::move(ev);
    lnq = lnq_next;
  }
  std::sort(trace.nodes.begin(), trace.nodes.end(),
            [](const TraceNode& x, const TraceNode& y) { return x.q < y.q; });
  trace.success = true;
  return trace;
}

}  // namespace qcgeo
