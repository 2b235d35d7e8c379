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
#include <vector>

#include "qcgeo/geodesic.hpp"

namespace qcgeo {

/// Lifted Jacobi field along a geodesic. K = U Jdot U^dag is the first-order
/// perturbation to the Hamiltonian and obeys
///   Kdot = -F(i[K,L] + i[H,G(K)]) - C,  C = F^2(i[P(H),Q(H)])
/// (C dropped in the homogeneous / conventional case). J is recovered from
/// Jdot = U^dag K U.
struct LiftedField {
  RVector times;
  std::vector<Matrix> J;
  std::vector<Matrix> K;
  std::vector<Matrix> C;
};

struct LiftedSolveOptions {
  bool include_inhomogeneous = false;
  // When positive, re-solve at half resolution and throw "grid too coarse"
  // if the endpoint J differs by more than this (HS norm, relative).
  double halving_tolerance = 0.0;
};

LiftedField lifted_jacobi_solve(const GeodesicTrajectory& traj, const Matrix& j0,
                                const Matrix& jdot0, const LiftedSolveOptions& opts = {});

/// Homogeneous Jacobi propagator blocks over traceless Pauli coefficients.
/// Two frames of the same object are kept:
///   body frame (stored): state (U J U^dag, K); for constant-H geodesics this
///     system is autonomous, so E_{t+s} = E_t E_s holds blockwise. Blocks are
///     E1 = conj(U(t)), E2 = stored here, E3 = 0, E4 = K-propagator.
///   J frame: J(t) = J(0) + E2_J(t) Jdot(0) with E2_J = conj(U(t)^dag) E2.
/// The two E2's differ by an orthogonal factor, so singular values (and the
/// conjugate-point condition "E2 singular") agree; eigenvalue readouts use
/// the J frame, matching the propagator J_t that maps Jdot(0) to J(t).
struct JacobiPropagator {
  int n = 0;
  int dim = 0;  // 4^n - 1
  RVector times;
  std::vector<int> stored_nodes;
  std::vector<RMatrix> E2;      // body frame, at stored nodes
  std::vector<RMatrix> Kprop;   // K(0) -> K(t), at stored nodes (optional)
  std::vector<RMatrix> conjU;   // coeffs(A) -> coeffs(U A U^dag), at stored nodes
  RVector sigma_min;            // per node when node_stats, else per stored node
  RVector min_abs_eig;

  RMatrix E1(int stored_index) const { return conjU[stored_index]; }
  RMatrix E3() const { return RMatrix::Zero(dim, dim); }
  const RMatrix& E4(int stored_index) const;

  /// J-frame endpoint propagator J_T: Jdot(0) -> J(T).
  RMatrix endpoint_JT() const;
  /// J-frame block at a stored node.
  RMatrix E2_J(int stored_index) const;
};

struct JacobiPropagatorOptions {
  int store_stride = 1;   // 0 stores only the final node's blocks
  bool store_K = false;
  bool node_stats = true; // sigma_min / min_abs_eig at every node
};

JacobiPropagator jacobi_propagator(const GeodesicTrajectory& traj,
                                   const JacobiPropagatorOptions& opts = {});

/// Closed-form machinery for constant-H geodesics. Builds the two commuting
/// layers of the doubly vectorized solution: the coefficient-space generators
/// M (for K) and W (for the U-conjugation), eigendecomposed once; evaluation
/// at any t costs two small dense products. phi(z) = (e^z - 1)/z is applied
/// on the eigenvalue sums with a series fallback below |z| = 1e-6.
class ConstantHJacobi {
 public:
  ConstantHJacobi(const Matrix& h, const PenaltyMetric& metric);

  /// J-frame E2(t): Jdot(0) -> J(t) (equals the body frame up to the
  /// orthogonal conjugation factor; singular values agree).
  RMatrix E2(double t) const;
  double sigma_min(double t) const;
  /// Closed-form lifted Jacobi solution J(t) for J(0) = j0, Jdot(0) = jdot0.
  Matrix solve(const Matrix& j0, const Matrix& jdot0, double t) const;

 private:
  int n_;
  int dim_;
  bool use_ode_fallback_ = false;
  RMatrix m_real_, w_real_;
  Eigen::MatrixXcd vm_, vm_inv_, vw_, vw_inv_, cmat_;
  CVector lm_, lw_;
};

Matrix constant_H_closed_form(const Matrix& h, const PenaltyMetric& metric, const Matrix& j0,
                              const Matrix& jdot0, double t);

struct ScanRow {
  double t = 0.0;
  double sigma_min = 0.0;
  double min_abs_eig = 0.0;
  bool dip = false;
};

struct ConjugatePoint {
  double t = 0.0;
  double sigma_refined = 0.0;
};

struct ConjugateScanResult {
  std::vector<ScanRow> rows;
  std::vector<ConjugatePoint> conjugate_points;
  std::optional<double> first_tc;
  double median_sigma = 0.0;
};

struct ConjugateScanOptions {
  // A strict local minimum is flagged once its refined value drops below
  // rel_threshold times the scan median.
  double rel_threshold = 1e-4;
  JacobiPropagatorOptions propagator;
};

/// Scan the smallest singular value of E2 along the trajectory and flag
/// conjugate points. Candidate dips (strict local minima, plus a falling
/// final node) are refined by golden-section search on the constant-H closed
/// form when available, otherwise by a parabolic fit in log sigma.
ConjugateScanResult conjugate_scan(const GeodesicTrajectory& traj,
                                   const ConjugateScanOptions& opts = {});

struct BiinvariantTimes {
  std::vector<double> times;
  bool degenerate = false;  // fully degenerate spectrum, no conjugate times
};

/// q = 1 conjugate times t = 2 m pi / (lambda_j - lambda_k) up to t_max,
/// deduplicated within 1e-10.
BiinvariantTimes biinvariant_conjugate_times(const Matrix& h, double t_max);

}  // namespace qcgeo
