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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcgeo/jacobi.hpp"

namespace qcgeo {

/// Operator norm ||U(T) - U_target||; the global phase is intentionally not
/// quotiented out (targets are phase-normalized once, up front).
double endpoint_error(const GeodesicTrajectory& traj, const Matrix& u_target);

struct GeodesicDerivative {
  Matrix dH0_dq;            // rate of change of the initial Hamiltonian
  bool pinv_used = false;   // endpoint propagator inverted through the cutoff
  double sigma_min = 0.0;   // smallest singular value of J_T
  double sigma_max = 0.0;
  RMatrix JT;               // J-frame endpoint propagator
};

/// dH_q(0)/dq with endpoints pinned:
///   q = 1:  J_T^{-1}( int_0^T U^dag(t) i t [P(H),Q(H)] U(t) dt )
///   q > 1:  (J_T^{-1}(L(0)) T - L(0)) / (q (q-1))
/// J_T is inverted with a relative pseudo-inverse cutoff of 1e-10; a
/// near-singular endpoint is flagged, never fatal.
GeodesicDerivative geodesic_derivative(const GeodesicTrajectory& traj,
                                       const JacobiPropagator& prop, double q);

struct TraceNode {
  double q = 0.0;
  RVector l0;                 // 4^n Pauli coefficients of L_q(0)
  double length = 0.0;
  double endpoint_error = 0.0;
  double sigma_min_JT = 0.0;
  double sigma_max_JT = 0.0;
  bool near_singular = false;
  bool pinv_used = false;
  int corrector_iters = 0;
  RVector dl0_dq;             // analytic derivative used by the predictor
};

struct DeformationTrace {
  Matrix target;              // phase-normalized target actually pursued
  Complex target_phase;       // applied to the caller's unitary
  double T = 0.0;
  std::vector<TraceNode> nodes;
  bool success = false;
  std::string failure;
  int total_corrector_iters = 0;
};

struct ContinuationOptions {
  int nodes_per_decade = 64;
  int steps = 800;               // RK4 steps per geodesic / propagator build
  double endpoint_tol = 1e-6;    // every accepted node must satisfy this
  double corrector_target = 1e-8;
  int max_corrector_iters = 8;
  double near_singular_rel = 1e-4;  // sigma_min <= rel * sigma_max flags a node
  double pinv_rel_cutoff = 1e-10;
  int densify_factor = 4;        // finer q steps around flagged nodes
};

/// March the penalty from 1 to q_end (log-spaced), advancing L_q(0) with the
/// analytic dL_q(0)/dq as an Euler predictor and restoring the endpoint with
/// Newton steps through J_T. The target is normalized by su_normalize and
/// the q = 1 geodesic is seeded from its canonical Hamiltonian unless
/// h_start is supplied.
DeformationTrace continue_in_q(const Matrix& u_target, const PenaltyMetric& base_metric, double T,
                               double q_end, const ContinuationOptions& opts = {},
                               const Matrix* h_start = nullptr);

}  // namespace qcgeo
