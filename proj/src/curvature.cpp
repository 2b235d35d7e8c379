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

#include "qcgeo/curvature.hpp"

#include <cmath>
#include <stdexcept>

#include "qcgeo/random.hpp"

namespace qcgeo {

namespace {

// i[a, b] for Pauli words: zero when they commute, otherwise a real multiple
// (+-2) of a single word.
struct WordBracket {
  bool zero = true;
  double factor = 0.0;
  PauliWord word;
};

WordBracket word_bracket(const PauliWord& a, const PauliWord& b) {
  WordBracket out;
  if (commutes(a, b)) return out;
  PauliProduct p = pauli_product(a, b);
  out.zero = false;
  out.factor = (p.phase_exponent == 1) ? -2.0 : 2.0;  // i * i^k, k odd
  out.word = p.word;
  return out;
}

}  // namespace

double c_coefficient(const PauliWord& sigma, const PauliWord& tau, const PenaltyMetric& metric) {
  double q_bracket = 1.0;
  if (!commutes(sigma, tau)) {
    q_bracket = metric.penalty(pauli_product(sigma, tau).word);
  }
  return 0.5 * (1.0 + (metric.penalty(tau) - metric.penalty(sigma)) / q_bracket);
}

double curvature_component(const PauliWord& rho, const PauliWord& sigma, const PauliWord& tau,
                           const PauliWord& mu, const PenaltyMetric& metric) {
  // Selection rule: rho sigma tau mu must be proportional to the identity.
  PauliProduct p12 = pauli_product(rho, sigma);
  PauliProduct p34 = pauli_product(tau, mu);
  PauliProduct total = pauli_product(p12.word, p34.word);
  if (!total.word.is_identity()) return 0.0;

  double acc = 0.0;
  {  // c_{rho,tau} c_{sigma,mu} <i[rho,tau], i[sigma,mu]>
    WordBracket b1 = word_bracket(rho, tau);
    WordBracket b2 = word_bracket(sigma, mu);
    if (!b1.zero && !b2.zero && b1.word == b2.word) {
      acc += c_coefficient(rho, tau, metric) * c_coefficient(sigma, mu, metric) * b1.factor *
             b2.factor * metric.penalty(b1.word);
    }
  }
  {  // - c_{sigma,tau} c_{rho,mu} <i[sigma,tau], i[rho,mu]>
    WordBracket b1 = word_bracket(sigma, tau);
    WordBracket b2 = word_bracket(rho, mu);
    if (!b1.zero && !b2.zero && b1.word == b2.word) {
      acc -= c_coefficient(sigma, tau, metric) * c_coefficient(rho, mu, metric) * b1.factor *
             b2.factor * metric.penalty(b1.word);
    }
  }
  {  // - c_{[rho,sigma],tau} <i[i[rho,sigma],tau], mu>
    WordBracket b1 = word_bracket(rho, sigma);
    if (!b1.zero) {
      WordBracket b2 = word_bracket(b1.word, tau);
      if (!b2.zero && b2.word == mu) {
        acc -= c_coefficient(b1.word, tau, metric) * b1.factor * b2.factor * metric.penalty(mu);
      }
    }
  }
  return acc;
}

SectionalResult sectional(const Matrix& x_in, const Matrix& y_in, const PenaltyMetric& metric) {
  SectionalResult res;
  Matrix x = x_in, y = y_in;
  const double xx = metric.inner(x, x);
  const double yy = metric.inner(y, y);
  const double xy = metric.inner(x, y);
  if (std::abs(xx - 1.0) > 1e-10 || std::abs(yy - 1.0) > 1e-10 || std::abs(xy) > 1e-10) {
    res.adjusted = true;
    if (xx <= 0.0) throw std::invalid_argument("sectional: zero first argument");
    x /= std::sqrt(xx);
    y -= metric.inner(x, y) * x;
    const double rem = metric.inner(y, y);
    if (rem < 1e-24 * std::max(1.0, yy)) {
      throw std::invalid_argument("sectional: linearly dependent inputs");
    }
    y /= std::sqrt(rem);
  }
  auto bilinear_B = [&metric](const Matrix& a, const Matrix& b) {
    return metric.apply_F(kI * commutator(metric.apply_G(a), b));
  };
  Matrix ixy = kI * commutator(x, y);
  Matrix bxy = bilinear_B(x, y);
  Matrix byx = bilinear_B(y, x);
  Matrix sum = bxy + byx;
  res.value = -0.75 * metric.inner(ixy, ixy) + 0.25 * metric.inner(sum, sum) +
              0.5 * metric.inner(ixy, bxy - byx);
  return res;
}

double ricci_diagonal(const PauliWord& sigma, const PenaltyMetric& metric, RicciMethod method) {
  if (sigma.is_identity()) {
    throw std::invalid_argument("ricci_diagonal: identity word has no Ricci component");
  }
  const int n = metric.n();
  if (method == RicciMethod::Brute) {
    const double q_sigma = metric.penalty(sigma);
    double acc = std::pow(4.0, n);
    for (int idx = 1; idx < basis_size(n); ++idx) {
      PauliWord rho = PauliWord::from_index(n, idx);
      if (commutes(rho, sigma)) continue;
      const double q_rho = metric.penalty(rho);
      const double q_br = metric.penalty(pauli_product(rho, sigma).word);
      acc += (q_sigma * q_sigma - 2.0 * q_rho * q_rho) / (q_rho * q_br);
    }
    return acc;
  }
  if (metric.kind() != PenaltyMetric::Kind::Standard) {
    throw std::invalid_argument("ricci_diagonal: closed form applies to the standard metric");
  }
  const double q = metric.q();
  const double nn = n;
  const double half4n = std::pow(4.0, n) / 2.0;
  switch (sigma.weight()) {
    case 1:
      return 2.0 * (3.0 * nn - 2.0) + (half4n - 2.0 * (3.0 * nn - 2.0)) / (q * q);
    case 2:
      return -24.0 * (nn - 2.0) * q + 8.0 * (6.0 * nn - 11.0) +
             (half4n - 8.0 * (3.0 * nn - 5.0)) / (q * q);
    case 3:
      return 12.0 * q * q + half4n + 36.0 * (nn - 3.0) - 12.0 * (3.0 * nn - 8.0) / q;
    default: {
      const double w = sigma.weight();
      return half4n + 4.0 * w * (3.0 * nn - 2.0 * w) - 4.0 * w * (3.0 * nn - 2.0 * w) / q;
    }
  }
}

double scalar_curvature(int n, double q, ScalarMethod method) {
  if (n < 1 || q <= 0.0) throw std::invalid_argument("scalar_curvature: need n >= 1, q > 0");
  const double nn = n;
  if (method == ScalarMethod::ClosedForm) {
    const double four_n = std::pow(4.0, n);
    double r = -54.0 * nn * (nn - 1.0) * (nn - 2.0) * q;
    r += 6.0 * nn * (36.0 * nn * nn - 99.0 * nn + 64.0);
    r += ((four_n - 1.0 + 1.5 * nn * (3.0 * nn - 1.0)) * four_n / 2.0 -
          6.0 * nn * (45.0 * nn * nn - 117.0 * nn + 74.0)) /
         q;
    r -= (3.0 * nn * (3.0 * nn - 1.0) * std::pow(4.0, n - 1) -
          6.0 * nn * (3.0 * nn - 4.0) * (6.0 * nn - 7.0)) /
         (q * q);
    return r;
  }
  if (n > 4) throw std::invalid_argument("scalar_curvature: contraction supported for n <= 4");
  PenaltyMetric metric = PenaltyMetric::standard(n, q);
  double acc = 0.0;
  for (int idx = 1; idx < basis_size(n); ++idx) {
    PauliWord sigma = PauliWord::from_index(n, idx);
    acc += ricci_diagonal(sigma, metric, RicciMethod::Brute) / metric.penalty(sigma);
  }
  return acc;
}

namespace {

int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

int64_t n_sigma_count(const PauliWord& sigma, int v, int w) {
  const int n = sigma.n();
  if (v < 0 || v > n || w < 0 || w > n) {
    throw std::invalid_argument("n_sigma_count: weights out of range");
  }
  const int ws = sigma.weight();
  const int excess = ws + v - w;
  if (excess <= 0 || excess % 2 == 0) return 0;
  double acc = 0.0;
  for (int k = 0; k <= ws; ++k) {
    acc += std::pow(4.0 / 3.0, k) * binomial(ws, k) * binomial(n - ws, v - k) *
           binomial(k, excess - k);
  }
  acc *= std::pow(3.0, v) / std::pow(2.0, excess);
  const int64_t rounded = std::llround(acc);
  return rounded;
}

double weight_class_ricci(const std::vector<double>& weights, int n, int sigma_weight) {
  if (static_cast<int>(weights.size()) < n + 1) {
    throw std::invalid_argument("weight_class_ricci: need one penalty per weight class 0..n");
  }
  if (sigma_weight < 1 || sigma_weight > n) {
    throw std::invalid_argument("weight_class_ricci: sigma weight out of range");
  }
  // Any representative of the class works; take the first v-fold Z word.
  std::vector<uint8_t> letters(n, 0);
  for (int i = 0; i < sigma_weight; ++i) letters[i] = 3;
  PauliWord sigma{letters};
  const double q_sigma = weights[sigma_weight];
  double acc = std::pow(4.0, n);
  for (int v = 1; v <= n; ++v) {
    for (int w = 1; w <= n; ++w) {
      const int64_t count = n_sigma_count(sigma, v, w);
      if (count == 0) continue;
      acc += count * (q_sigma * q_sigma - 2.0 * weights[v] * weights[v]) /
             (weights[v] * weights[w]);
    }
  }
  return acc;
}

double weight_class_scalar(const std::vector<double>& weights, int n) {
  double acc = 0.0;
  for (int u = 1; u <= n; ++u) {
    const double count = std::pow(3.0, u) * binomial(n, u);
    acc += count * weight_class_ricci(weights, n, u) / weights[u];
  }
  return acc;
}

std::vector<double> ricci_flow_step(const std::vector<double>& weights, int n, double ds) {
  for (int u = 1; u <= n; ++u) {
    if (weights[u] <= 0.0) throw std::invalid_argument("ricci_flow_step: non-positive weight");
  }
  const double scalar = weight_class_scalar(weights, n);
  const double dim_factor = std::pow(4.0, n) - 1.0;
  std::vector<double> next = weights;
  for (int u = 1; u <= n; ++u) {
    const double rc = weight_class_ricci(weights, n, u);
    next[u] = weights[u] + ds * (-2.0 * rc + 2.0 * scalar * weights[u] / dim_factor);
    if (next[u] <= 0.0) {
      throw std::runtime_error("ricci_flow_step: step rejected, weight class " +
                               std::to_string(u) + " would become non-positive");
    }
  }
  return next;
}

SectionalAverage average_sectional_mc(const PenaltyMetric& metric, int64_t samples, uint64_t seed,
                                      GroupConvention group) {
  const int n = metric.n();
  const int size = basis_size(n);
  const int lo = (group == GroupConvention::SU) ? 1 : 0;  // include identity for U
  Rng rng(seed);

  double sum = 0.0;
  double sum_sq = 0.0;
  PauliVector vx, vy;
  vx.n = vy.n = n;
  for (int64_t s = 0; s < samples; ++s) {
    // Gaussian coefficients in the metric-orthonormal basis sigma/sqrt(q_sigma)
    // give the invariant measure on orthonormal 2-frames after Gram-Schmidt.
    RVector cx = RVector::Zero(size), cy = RVector::Zero(size);
    for (int i = lo; i < size; ++i) {
      cx(i) = rng.normal() / std::sqrt(metric.penalty(i));
      cy(i) = rng.normal() / std::sqrt(metric.penalty(i));
    }
    vx.coeffs = cx;
    vy.coeffs = cy;
    Matrix x = compose(vx);
    Matrix y = compose(vy);
    x /= std::sqrt(metric.inner(x, x));
    y -= metric.inner(x, y) * x;
    y /= std::sqrt(metric.inner(y, y));
    const double k = sectional(x, y, metric).value;
    sum += k;
    sum_sq += k * k;
  }
  SectionalAverage out;
  out.samples = samples;
  out.mean = sum / samples;
  const double var = std::max(0.0, sum_sq / samples - out.mean * out.mean);
  out.std_error = std::sqrt(var / samples);
  const double factor = (group == GroupConvention::SU) ? (std::pow(4.0, n) - 2.0)
                                                       : std::pow(4.0, n);
  out.scaled_mean = factor * out.mean;
  out.scaled_std_error = factor * out.std_error;
  return out;
}

}  // namespace qcgeo
