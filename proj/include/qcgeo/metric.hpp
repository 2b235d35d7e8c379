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

#include <string>
#include <vector>

#include "qcgeo/pauli.hpp"
#include "qcgeo/types.hpp"

namespace qcgeo {

/// Right-invariant penalty metric <H,J> = tr(H G(J))/2^n with G diagonal in
/// the Pauli basis. Three constructions:
///   standard:       penalty 1 on weight <= 2 words, q above.
///   three_qubit_stq: n=3; s on weight-1, 1 on weight-2, q on weight-3.
///   projective:     penalty 1 on a declared easy word set, q elsewhere.
/// The easy subspace drives the P/Q split; for the stq variant it is the
/// weight <= 2 sector, so Q always matches the q-penalized block.
class PenaltyMetric {
 public:
  enum class Kind { Standard, ThreeQubitSTQ, Projective };

  static PenaltyMetric standard(int n, double q);
  static PenaltyMetric three_qubit_stq(double s, double q);
  static PenaltyMetric projective(int n, double q, const std::vector<std::string>& easy_words);

  int n() const { return n_; }
  Kind kind() const { return kind_; }
  double q() const { return q_; }
  double s() const { return s_; }
  double penalty(int word_index) const { return penalty_(word_index); }
  double penalty(const PauliWord& w) const { return penalty_(w.index()); }
  bool is_easy(int word_index) const { return easy_[word_index] != 0; }
  const RVector& penalties() const { return penalty_; }
  bool is_biinvariant() const;

  // Diagonal superoperators on dense operators.
  Matrix apply_G(const Matrix& a) const;  // dual map, scales coeffs by penalties
  Matrix apply_F(const Matrix& a) const;  // inverse dual map
  Matrix apply_P(const Matrix& a) const;  // easy-subspace projector
  Matrix apply_Q(const Matrix& a) const;  // hard-subspace projector
  Matrix apply_F2(const Matrix& a) const; // F composed with itself
  Matrix apply_weight_projector(const Matrix& a, int weight) const;

  double inner(const Matrix& h, const Matrix& j) const;
  double norm(const Matrix& h) const { return std::sqrt(inner(h, h)); }

 private:
  PenaltyMetric(int n, Kind kind, double q, double s);

  int n_ = 0;
  Kind kind_ = Kind::Standard;
  double q_ = 1.0;
  double s_ = 1.0;
  RVector penalty_;
  RVector inv_penalty_;
  RVector inv2_penalty_;
  RVector easy_mask_;   // 1.0 on easy words (P projector weights)
  RVector hard_mask_;
  std::vector<char> easy_;
};

PenaltyMetric dualize_metric_from_kind(const std::string& kind, int n, double q, double s,
                                       const std::vector<std::string>& easy_words);

Matrix dual(const Matrix& h, const PenaltyMetric& metric);
Matrix inverse_dual(const Matrix& l, const PenaltyMetric& metric);

/// Split H = H_P + H_Q along the metric's easy/hard subspaces.
std::pair<Matrix, Matrix> split_PQ(const Matrix& h, const PenaltyMetric& metric);

/// Length of a sampled curve, int dt sqrt(<H(t),H(t)>), by composite Simpson
/// on a uniform grid (mixed Simpson/3-8 when the interval count is odd,
/// trapezoid fallback for non-uniform grids). Throws with fewer than 2
/// samples or a non-increasing grid.
double curve_length(const RVector& times, const std::vector<Matrix>& hs,
                    const PenaltyMetric& metric);

/// Metric tensor components g_{sigma tau} = tr(sigma G_X(tau))/2^n over the
/// 4^n - 1 non-identity words, with G_X = E_X^dag o G o E_X expanded to the
/// given order in X (order 1 or 2).
RMatrix pauli_coordinate_metric(const Matrix& x, const PenaltyMetric& metric, int order);

/// Analytic first derivative g_{sigma tau, mu} at the origin,
/// i tr(([G(sigma),tau] + [G(tau),sigma]) mu) / 2^{n+1}.
double metric_coordinate_derivative(const PauliWord& sigma, const PauliWord& tau,
                                    const PauliWord& mu, const PenaltyMetric& metric);

/// Christoffel symbol at the origin,
/// Gamma^rho_{sigma tau} = (i/2^{n+1}) tr(F(rho)([sigma,G(tau)] + [tau,G(sigma)])).
/// Evaluated exactly through the word algebra.
double christoffel(const PauliWord& rho, const PauliWord& sigma, const PauliWord& tau,
                   const PenaltyMetric& metric);

/// Connection for right-invariant fields,
/// nabla_Y Z = (i/2)([Y,Z] + F([Y,G(Z)] + [Z,G(Y)])).
Matrix connection_right_invariant(const Matrix& y, const Matrix& z, const PenaltyMetric& metric);

/// Covariant derivative D_t Z along a curve with tangent Y(t):
/// dZ/dt (finite differences on the grid) plus the connection term. When
/// fd_tolerance > 0 the finite-difference error is estimated by stencil
/// coarsening and the call throws if the estimate exceeds the tolerance.
std::vector<Matrix> covariant_derivative(const RVector& times, const std::vector<Matrix>& ys,
                                         const std::vector<Matrix>& zs,
                                         const PenaltyMetric& metric, double fd_tolerance = 0.0);

}  // namespace qcgeo
