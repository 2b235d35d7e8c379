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

#include <cstdint>
#include <vector>

#include "qcgeo/metric.hpp"

namespace qcgeo {

/// Connection coefficient c_{sigma,tau} = (1 + (q_tau - q_sigma)/q_[sigma,tau])/2,
/// with the convention q_[sigma,tau] = 1 on commuting pairs.
double c_coefficient(const PauliWord& sigma, const PauliWord& tau, const PenaltyMetric& metric);

/// Curvature tensor component R_{rho sigma tau mu} on right-invariant Pauli
/// frame fields. Applies the selection rule (the word product must be
/// proportional to the identity) before evaluating the three-term formula.
/// Exact word arithmetic throughout.
double curvature_component(const PauliWord& rho, const PauliWord& sigma, const PauliWord& tau,
                           const PauliWord& mu, const PenaltyMetric& metric);

struct SectionalResult {
  double value = 0.0;
  bool adjusted = false;  // inputs were Gram-Schmidt-normalized first
};

/// Sectional curvature K(X,Y) for a metric-orthonormal pair; non-orthonormal
/// inputs are orthonormalized and flagged. Throws on linearly dependent
/// inputs.
SectionalResult sectional(const Matrix& x, const Matrix& y, const PenaltyMetric& metric);

enum class RicciMethod { Brute, ClosedForm };

/// Diagonal Ricci component Rc_{sigma sigma}. Brute sums
/// 4^n + sum'_rho (q_sigma^2 - 2 q_rho^2)/(q_rho q_[rho,sigma]) over words
/// anticommuting with sigma (valid for any diagonal metric); the closed form
/// is the standard-metric weight-class polynomial. Throws on the identity
/// word, or closed form on a non-standard metric.
double ricci_diagonal(const PauliWord& sigma, const PenaltyMetric& metric, RicciMethod method);

enum class ScalarMethod { ClosedForm, Contraction };

/// Scalar curvature of the standard metric. ClosedForm evaluates the n,q
/// polynomial; Contraction sums Rc_{sigma sigma}/q_sigma over non-identity
/// words.
double scalar_curvature(int n, double q, ScalarMethod method);

/// Number of weight-v words rho whose commutator with sigma is nonvanishing
/// of weight w; zero unless wt(sigma) + v - w is odd and positive.
int64_t n_sigma_count(const PauliWord& sigma, int v, int w);

/// Weight-resolved Ricci diagonal for a metric diagonal in weight classes:
/// weights[k] is the penalty on weight-k words (weights[0] ignored).
double weight_class_ricci(const std::vector<double>& weights, int n, int sigma_weight);

/// Scalar curvature of a weight-diagonal metric.
double weight_class_scalar(const std::vector<double>& weights, int n);

/// One explicit Euler step of the normalized Ricci flow
/// dg/ds = -2 Rc + 2 R g/(4^n - 1) on the weight-diagonal entries. Throws if
/// a weight class would become non-positive (step rejected).
std::vector<double> ricci_flow_step(const std::vector<double>& weights, int n, double ds);

enum class GroupConvention { U, SU };

struct SectionalAverage {
  double mean = 0.0;       // Monte Carlo mean of K over orthonormal pairs
  double std_error = 0.0;
  int64_t samples = 0;
  /// mean rescaled by the exact frame-count factor so its expectation equals
  /// R/(4^n - 1): times (4^n - 2) on the traceless sector, 4^n with the
  /// identity direction included.
  double scaled_mean = 0.0;
  double scaled_std_error = 0.0;
};

/// Monte Carlo average of the sectional curvature over metric-orthonormal
/// pairs, sampled in the traceless sector (SU) or the full space (U).
SectionalAverage average_sectional_mc(const PenaltyMetric& metric, int64_t samples, uint64_t seed,
                                      GroupConvention group);

}  // namespace qcgeo
