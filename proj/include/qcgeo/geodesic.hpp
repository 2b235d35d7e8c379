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

#include "qcgeo/metric.hpp"
#include "qcgeo/pauli.hpp"
#include "qcgeo/types.hpp"

namespace qcgeo {

/// Time-gridded geodesic samples. L solves Ldot = i[L, F(L)], H = F(L), and
/// U solves Udot = -i H U from U(0) = I, co-integrated with classical RK4.
struct GeodesicTrajectory {
  PenaltyMetric metric = PenaltyMetric::standard(1, 1.0);
  double T = 0.0;
  RVector times;
  std::vector<Matrix> L;
  std::vector<Matrix> H;
  std::vector<Matrix> U;
  int unitarity_repairs = 0;

  int nodes() const { return static_cast<int>(times.size()); }
  const Matrix& endpoint() const { return U.back(); }
};

/// Integrate the geodesic and Schroedinger equations from the dual L0.
/// U is projected back to the unitary group only when the drift
/// ||U^dag U - I|| exceeds 1e-12; repairs are counted on the trajectory.
/// Throws on non-finite values, steps < 2, or a non-traceless L0.
GeodesicTrajectory integrate_geodesic(const Matrix& l0, const PenaltyMetric& metric, double T,
                                      int steps);

struct ConservedReport {
  double max_constant_drift = 0.0;   // max_t ||U(t)^dag L(t) U(t) - L(0)||
  double max_speed_drift = 0.0;      // max_t |<H,H>(t) - <H,H>(0)|
  bool has_one_body = false;         // standard metric only
  double max_one_body_drift = 0.0;   // max over weight-1 coefficients of L
  RVector one_body_drift;            // per weight-1 word, canonical order
};

ConservedReport conserved_quantities(const GeodesicTrajectory& traj);

/// [Q(H), P(H)] = 0 is necessary and sufficient for L (and hence H) to stay
/// constant along the geodesic.
bool is_constant_H_geodesic(const Matrix& h, const PenaltyMetric& metric);

struct CanonicalLog {
  Matrix hamiltonian;       // exp(-i hamiltonian T) = U to working precision
  Matrix traceless;         // hamiltonian minus its trace part
  double trace_rate = 0.0;  // tr(hamiltonian)/2^n, the recorded global phase rate
  RVector eigenvalues;      // ascending
};

/// Principal-branch logarithm of a unitary: H with exp(-iHT) = U and all
/// eigenvalues in (-pi/T, pi/T], ties at eigenvalue -1 resolved to +pi/T.
/// Optional per-eigenvalue branch shifts add 2 pi k / T (eigenvalues indexed
/// in ascending principal order). Throws if U is not unitary to 1e-10.
CanonicalLog canonical_hamiltonian(const Matrix& u, double T,
                                   const std::vector<int>* branch_shifts = nullptr);

struct SuNormalized {
  Matrix u;               // phase-adjusted target, det = 1
  Complex applied_phase;  // u = applied_phase * input
};

/// Fix the global phase so det(u) = 1 and the principal logarithm is
/// traceless; this is the representative every geodesic from a traceless
/// Hamiltonian can actually reach, phase included.
SuNormalized su_normalize(const Matrix& u);

enum class ThreeQubitMode { Full, SToZero, FirstOrderReduced };

struct ThreeQubitSolution {
  Matrix S, T, Q;  // exact dual components at time t (any finite q, s)
  Matrix L;        // S + T + Q
  Matrix U;        // approximate geodesic unitary (exact as q -> infinity)
};

/// Three-qubit geodesics of G = s S + T + q Q, from the S/T/Q commutation
/// algebra. The dual components are exact for all finite penalties; the
/// returned unitary uses the large-q product form selected by `mode`:
///   Full:              e^{-it S0/s} e^{it(S0+Q0)} e^{-it(S0+T0+Q0)}
///   SToZero:           e^{-it S0/s} e^{it Q0} e^{-it(T0+Q0)}
///   FirstOrderReduced: e^{-it S0/s} e^{-it R(T0)}, R the diagonal part of
///                      T0 in the eigenbasis of S0+Q0 (Q0 when s == 0).
/// q may be infinity. s == 0 demands S0 == 0. Throws when a component is
/// supported on the wrong weight class, or on a degenerate spectrum in
/// reduced mode.
ThreeQubitSolution three_qubit_analytic(const Matrix& s0, const Matrix& t0, const Matrix& q0,
                                        double s, double q, double t, ThreeQubitMode mode);

/// Bilinear vectorized form of the geodesic right-hand side and the
/// symmetrizer bookkeeping behind the formal power-series solution
/// |L(t)) = sum_j prod_k T_k (E (x) I^{k-1}) |L0)^{(x)(j+1)} t^j / j!.
/// E is sparse in the Pauli coefficient basis: each column pair (b,c) maps
/// to the single word of i[sigma_b, F(sigma_c)].
class PowerSeriesContext {
 public:
  explicit PowerSeriesContext(const PenaltyMetric& metric);

  int n() const { return metric_.n(); }
  int dim() const { return dim_; }

  /// E(x (x) y) as a coefficient vector.
  RVector apply_E(const RVector& x, const RVector& y) const;

  /// Dense 4^n x 16^n realization of E (column index b*4^n + c); intended
  /// for validation at small n.
  RMatrix dense_E() const;

  /// T_m = I + S_{1,2} + ... + S_{1,m} acting on a product vector given by
  /// its list of m factors; returns the m placements of the leading factor.
  static std::vector<std::vector<RVector>> apply_symmetrizer(const std::vector<RVector>& slots);

  /// j-th derivative coefficients of L at t=0 from the symmetrized product
  /// formula.
  RVector derivative_coeffs(const RVector& l0, int order_j) const;

 private:
  PenaltyMetric metric_;
  int dim_ = 0;
  std::vector<int> e_row_;     // word index of i[sigma_b, sigma_c], -1 if commuting
  std::vector<double> e_val_;  // matching real structure constant / penalty(c)

  RVector eval_stage(std::vector<RVector> slots, int k) const;
};

/// Truncated power-series evaluation of L(t). Throws when order > 8, or
/// order > 4 with n >= 3 (16^n tensor blowup).
Matrix power_series_L(const Matrix& l0, const PenaltyMetric& metric, int order, double t);

}  // namespace qcgeo
