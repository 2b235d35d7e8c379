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
#include <random>

#include "qcgeo/metric.hpp"
#include "qcgeo/types.hpp"

namespace qcgeo {

/// Deterministic normal deviates: mt19937_64 plus our own Box-Muller, so the
/// same seed yields the same stream on every platform (std::normal_distribution
/// is implementation-defined).
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  double uniform();           // [0, 1)
  double normal();            // standard normal
  Complex complex_normal();   // independent N(0,1) real and imaginary parts

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-distributed unitary via QR of a complex Ginibre matrix with the
/// R-diagonal phase fix.
Matrix haar_unitary(int dim, Rng& rng);

/// Random traceless Hermitian with iid N(0,1) Pauli coefficients, rescaled to
/// unit metric speed <F(L'),F(L')> when a metric is given (drawing the dual).
Matrix random_traceless_hermitian(int n, Rng& rng);
Matrix random_unit_speed_dual(const PenaltyMetric& metric, Rng& rng);

}  // namespace qcgeo
