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

#include "qcgeo/random.hpp"

#include <cmath>

namespace qcgeo {

double Rng::uniform() {
  // 53-bit mantissa from the top bits.
  return (engine_() >> 11) * (1.0 / 9007199254740992.0);
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * 3.14159265358979323846 * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

Matrix haar_unitary(int dim, Rng& rng) {
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) g(r, c) = rng.complex_normal();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

Matrix random_traceless_hermitian(int n, Rng& rng) {
  PauliVector v;
  v.n = n;
  v.coeffs = RVector::Zero(basis_size(n));
  for (int i = 1; i < basis_size(n); ++i) v.coeffs(i) = rng.normal();
  return compose(v);
}

Matrix random_unit_speed_dual(const PenaltyMetric& metric, Rng& rng) {
  Matrix l = random_traceless_hermitian(metric.n(), rng);
  Matrix h = metric.apply_F(l);
  const double speed = std::sqrt(metric.inner(h, h));
  return l / speed;
}

}  // namespace qcgeo
