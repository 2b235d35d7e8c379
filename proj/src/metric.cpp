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

#include "qcgeo/metric.hpp"

#include <cmath>
#include <stdexcept>

namespace qcgeo {

PenaltyMetric::PenaltyMetric(int n, Kind kind, double q, double s)
    : n_(n), kind_(kind), q_(q), s_(s) {
  if (n < 1 || n > 4) throw std::invalid_argument("PenaltyMetric: supported range is 1 <= n <= 4");
  if (q <= 0.0) throw std::invalid_argument("PenaltyMetric: penalty q must be positive");
  const int size = basis_size(n);
  penalty_ = RVector::Ones(size);
  easy_.assign(size, 1);
}

PenaltyMetric PenaltyMetric::standard(int n, double q) {
  PenaltyMetric m(n, Kind::Standard, q, 1.0);
  const int size = basis_size(n);
  for (int i = 0; i < size; ++i) {
    if (word_weight(n, i) >= 3) {
      m.penalty_(i) = q;
      m.easy_[i] = 0;
    }
  }
  m.inv_penalty_ = m.penalty_.cwiseInverse();
  m.inv2_penalty_ = m.inv_penalty_.cwiseProduct(m.inv_penalty_);
  m.easy_mask_ = RVector::Zero(size);
  m.hard_mask_ = RVector::Zero(size);
  for (int i = 0; i < size; ++i) (m.easy_[i] ? m.easy_mask_(i) : m.hard_mask_(i)) = 1.0;
  return m;
}

PenaltyMetric PenaltyMetric::three_qubit_stq(double s, double q) {
  if (s <= 0.0) throw std::invalid_argument("PenaltyMetric: penalty s must be positive");
  PenaltyMetric m(3, Kind::ThreeQubitSTQ, q, s);
  const int size = basis_size(3);
  for (int i = 0; i < size; ++i) {
    switch (word_weight(3, i)) {
      case 1: m.penalty_(i) = s; break;
      case 2: m.penalty_(i) = 1.0; break;
      case 3:
        m.penalty_(i) = q;
        m.easy_[i] = 0;
        break;
      default: break;
    }
  }
  m.inv_penalty_ = m.penalty_.cwiseInverse();
  m.inv2_penalty_ = m.inv_penalty_.cwiseProduct(m.inv_penalty_);
  m.easy_mask_ = RVector::Zero(size);
  m.hard_mask_ = RVector::Zero(size);
  for (int i = 0; i < size; ++i) (m.easy_[i] ? m.easy_mask_(i) : m.hard_mask_(i)) = 1.0;
  return m;
}

PenaltyMetric PenaltyMetric::projective(int n, double q,
                                        const std::vector<std::string>& easy_words) {
  PenaltyMetric m(n, Kind::Projective, q, 1.0);
  const int size = basis_size(n);
  std::vector<char> easy(size, 0);
  easy[0] = 1;  // identity direction is never penalized
  for (const auto& s : easy_words) {
    PauliWord w = PauliWord::from_string(s);
    if (w.n() != n) throw std::invalid_argument("projective metric: easy word of wrong length");
    easy[w.index()] = 1;
  }
  m.easy_ = easy;
  for (int i = 0; i < size; ++i) {
    if (!easy[i]) m.penalty_(i) = q;
  }
  m.inv_penalty_ = m.penalty_.cwiseInverse();
  m.inv2_penalty_ = m.inv_penalty_.cwiseProduct(m.inv_penalty_);
  m.easy_mask_ = RVector::Zero(size);
  m.hard_mask_ = RVector::Zero(size);
  for (int i = 0; i < size; ++i) (m.easy_[i] ? m.easy_mask_(i) : m.hard_mask_(i)) = 1.0;
  return m;
}

bool PenaltyMetric::is_biinvariant() const {
  return (penalty_.array() - 1.0).abs().maxCoeff() == 0.0;
}

Matrix PenaltyMetric::apply_G(const Matrix& a) const { return scale_pauli_diag(a, penalty_, n_); }
Matrix PenaltyMetric::apply_F(const Matrix& a) const {
  return scale_pauli_diag(a, inv_penalty_, n_);
}
Matrix PenaltyMetric::apply_F2(const Matrix& a) const {
  return scale_pauli_diag(a, inv2_penalty_, n_);
}
Matrix PenaltyMetric::apply_P(const Matrix& a) const { return scale_pauli_diag(a, easy_mask_, n_); }
Matrix PenaltyMetric::apply_Q(const Matrix& a) const { return scale_pauli_diag(a, hard_mask_, n_); }

Matrix PenaltyMetric::apply_weight_projector(const Matrix& a, int weight) const {
  RVector mask = RVector::Zero(basis_size(n_));
  for (int i = 0; i < basis_size(n_); ++i) {
    if (word_weight(n_, i) == weight) mask(i) = 1.0;
  }
  return scale_pauli_diag(a, mask, n_);
}

double PenaltyMetric::inner(const Matrix& h, const Matrix& j) const {
  if (h.rows() != dim_of(n_) || j.rows() != dim_of(n_)) {
    throw std::invalid_argument("inner: operator dimension does not match the metric");
  }
  CVector ch = pauli_spectrum(h, n_);
  CVector cj = pauli_spectrum(j, n_);
  double acc = 0.0;
  for (int i = 0; i < basis_size(n_); ++i) {
    acc += penalty_(i) * (std::conj(ch(i)) * cj(i)).real();
  }
  return acc;
}

PenaltyMetric dualize_metric_from_kind(const std::string& kind, int n, double q, double s,
                                       const std::vector<std::string>& easy_words) {
  if (kind == "standard") return PenaltyMetric::standard(n, q);
  if (kind == "three_qubit_stq") return PenaltyMetric::three_qubit_stq(s, q);
  if (kind == "projective") return PenaltyMetric::projective(n, q, easy_words);
  throw std::invalid_argument("unknown metric kind: " + kind);
}

Matrix dual(const Matrix& h, const PenaltyMetric& metric) { return metric.apply_G(h); }
Matrix inverse_dual(const Matrix& l, const PenaltyMetric& metric) { return metric.apply_F(l); }

std::pair<Matrix, Matrix> split_PQ(const Matrix& h, const PenaltyMetric& metric) {
  Matrix hp = metric.apply_P(h);
  return {hp, h - hp};
}

double curve_length(const RVector& times, const std::vector<Matrix>& hs,
                    const PenaltyMetric& metric) {
  const Eigen::Index m = times.size();
  if (m < 2 || hs.size() != static_cast<size_t>(m)) {
    throw std::invalid_argument("curve_length: need at least 2 samples");
  }
  RVector speed(m);
  for (Eigen::Index i = 0; i < m; ++i) speed(i) = metric.norm(hs[i]);

  const double h0 = times(1) - times(0);
  bool uniform = true;
  for (Eigen::Index i = 0; i + 1 < m; ++i) {
    const double h = times(i + 1) - times(i);
    if (h <= 0) throw std::invalid_argument("curve_length: grid must be strictly increasing");
    if (std::abs(h - h0) > 1e-9 * std::max(1.0, std::abs(h0))) uniform = false;
  }
  if (!uniform) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i + 1 < m; ++i) {
      acc += 0.5 * (speed(i) + speed(i + 1)) * (times(i + 1) - times(i));
    }
    return acc;
  }

  Eigen::Index intervals = m - 1;
  double acc = 0.0;
  Eigen::Index start = 0;
  if (intervals % 2 == 1) {
    if (intervals >= 3) {
      // Simpson 3/8 on the first three intervals, plain Simpson after.
      acc += 3.0 * h0 / 8.0 * (speed(0) + 3 * speed(1) + 3 * speed(2) + speed(3));
      start = 3;
      intervals -= 3;
    } else {
      return 0.5 * (speed(0) + speed(1)) * h0;
    }
  }
  for (Eigen::Index i = start; i < start + intervals; i += 2) {
    acc += h0 / 3.0 * (speed(i) + 4 * speed(i + 1) + speed(i + 2));
  }
  return acc;
}

namespace {

// G_X(a) = E_X^dag o G o E_X (a), truncated at the requested order in X,
// with E_X = I - (i/2) ad_X - (1/6) ad_X^2 + ... and E_X^dag = E_{-X}.
Matrix apply_GX(const Matrix& x, const Matrix& a, const PenaltyMetric& metric, int order) {
  if (order < 1 || order > 2) {
    throw std::invalid_argument("pauli_coordinate_metric: order must be 1 or 2");
  }
  auto ad = [&x](const Matrix& m) { return commutator(x, m); };
  Matrix out = metric.apply_G(a);
  // (i/2)[ad_X, G](a)
  out += 0.5 * kI * (ad(metric.apply_G(a)) - metric.apply_G(ad(a)));
  if (order >= 2) {
    const Matrix ada = ad(a);
    out += -(1.0 / 6.0) * ad(ad(metric.apply_G(a)));
    out += -(1.0 / 6.0) * metric.apply_G(ad(ada));
    out += 0.25 * ad(metric.apply_G(ada));
  }
  return out;
}

}  // namespace

RMatrix pauli_coordinate_metric(const Matrix& x, const PenaltyMetric& metric, int order) {
  const int n = metric.n();
  const int dim = basis_size(n) - 1;
  RMatrix g(dim, dim);
  for (int t = 0; t < dim; ++t) {
    Matrix tau = to_matrix(PauliWord::from_index(n, t + 1));
    Matrix gx_tau = apply_GX(x, tau, metric, order);
    g.col(t) = traceless_coeffs(gx_tau, n);
  }
  // The analytic tensor is symmetric; flush roundoff asymmetry.
  return 0.5 * (g + g.transpose());
}

double metric_coordinate_derivative(const PauliWord& sigma, const PauliWord& tau,
                                    const PauliWord& mu, const PenaltyMetric& metric) {
  const int n = metric.n();
  Matrix ms = to_matrix(sigma);
  Matrix mt = to_matrix(tau);
  Matrix mm = to_matrix(mu);
  Matrix bracket = commutator(metric.apply_G(ms), mt) + commutator(metric.apply_G(mt), ms);
  Complex val = kI * (bracket * mm).trace() / static_cast<double>(2 * dim_of(n));
  return val.real();
}

double christoffel(const PauliWord& rho, const PauliWord& sigma, const PauliWord& tau,
                   const PenaltyMetric& metric) {
  if (rho.n() != sigma.n() || sigma.n() != tau.n()) {
    throw std::invalid_argument("christoffel: words of unequal length");
  }
  // [sigma, G(tau)] + [tau, G(sigma)] = (q_tau - q_sigma)[sigma, tau].
  if (commutes(sigma, tau)) return 0.0;
  PauliProduct p = pauli_product(sigma, tau);
  if (!(p.word == rho)) return 0.0;
  // [sigma,tau] = 2 i^k rho; the full prefactor i * i^k is real for
  // anticommuting words (k odd).
  const double sign = (p.phase_exponent == 1) ? -1.0 : 1.0;
  return sign * (metric.penalty(tau) - metric.penalty(sigma)) / metric.penalty(rho);
}

Matrix connection_right_invariant(const Matrix& y, const Matrix& z, const PenaltyMetric& metric) {
  Matrix bracket = commutator(y, metric.apply_G(z)) + commutator(z, metric.apply_G(y));
  return 0.5 * kI * (commutator(y, z) + metric.apply_F(bracket));
}

std::vector<Matrix> covariant_derivative(const RVector& times, const std::vector<Matrix>& ys,
                                         const std::vector<Matrix>& zs,
                                         const PenaltyMetric& metric, double fd_tolerance) {
  const Eigen::Index m = times.size();
  if (m < 3 || ys.size() != static_cast<size_t>(m) || zs.size() != static_cast<size_t>(m)) {
    throw std::invalid_argument("covariant_derivative: need at least 3 aligned samples");
  }
  std::vector<Matrix> dz(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (i == 0) {
      const double h = times(1) - times(0);
      dz[i] = (-3.0 * zs[0] + 4.0 * zs[1] - zs[2]) / (2.0 * h);
    } else if (i == m - 1) {
      const double h = times(m - 1) - times(m - 2);
      dz[i] = (3.0 * zs[m - 1] - 4.0 * zs[m - 2] + zs[m - 3]) / (2.0 * h);
    } else {
      dz[i] = (zs[i + 1] - zs[i - 1]) / (times(i + 1) - times(i - 1));
    }
  }
  if (fd_tolerance > 0.0 && m >= 5) {
    double worst = 0.0;
    for (Eigen::Index i = 2; i + 2 < m; ++i) {
      Matrix coarse = (zs[i + 2] - zs[i - 2]) / (times(i + 2) - times(i - 2));
      worst = std::max(worst, hs_norm(dz[i] - coarse) / 3.0);
    }
    if (worst > fd_tolerance) {
      throw std::runtime_error("covariant_derivative: grid too coarse (fd error estimate " +
                               std::to_string(worst) + ")");
    }
  }
  std::vector<Matrix> out(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    Matrix bracket =
        commutator(ys[i], metric.apply_G(zs[i])) + commutator(zs[i], metric.apply_G(ys[i]));
    out[i] = dz[i] + 0.5 * kI * (commutator(ys[i], zs[i]) + metric.apply_F(bracket));
  }
  return out;
}

}  // namespace qcgeo
