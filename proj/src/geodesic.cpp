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

#include "qcgeo/geodesic.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace qcgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_traceless_hermitian(const Matrix& a, const char* who) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw std::invalid_argument(std::string(who) + ": input is not Hermitian");
  }
  if (std::abs(a.trace()) > 1e-9 * scale * a.rows()) {
    throw std::invalid_argument(std::string(who) + ": input is not traceless");
  }
}

struct GeodesicState {
  Matrix L;
  Matrix U;
};

GeodesicState rhs(const GeodesicState& s, const PenaltyMetric& metric) {
  Matrix h = metric.apply_F(s.L);
  return {kI * commutator(s.L, h), -kI * (h * s.U)};
}

}  // namespace

GeodesicTrajectory integrate_geodesic(const Matrix& l0, const PenaltyMetric& metric, double T,
                                      int steps) {
  if (steps < 2) throw std::invalid_argument("integrate_geodesic: steps must be at least 2");
  check_traceless_hermitian(l0, "integrate_geodesic");
  const int d = dim_of(metric.n());
  if (l0.rows() != d) {
    throw std::invalid_argument("integrate_geodesic: L0 dimension does not match the metric");
  }

  GeodesicTrajectory traj;
  traj.metric = metric;
  traj.T = T;
  traj.times = RVector::LinSpaced(steps + 1, 0.0, T);
  traj.L.reserve(steps + 1);
  traj.H.reserve(steps + 1);
  traj.U.reserve(steps + 1);

  GeodesicState s{l0, Matrix::Identity(d, d)};
  const double h = T / steps;
  for (int i = 0;; ++i) {
    traj.L.push_back(s.L);
    traj.H.push_back(metric.apply_F(s.L));
    traj.U.push_back(s.U);
    if (i == steps) break;

    GeodesicState k1 = rhs(s, metric);
    GeodesicState k2 = rhs({s.L + 0.5 * h * k1.L, s.U + 0.5 * h * k1.U}, metric);
    GeodesicState k3 = rhs({s.L + 0.5 * h * k2.L, s.U + 0.5 * h * k2.U}, metric);
    GeodesicState k4 = rhs({s.L + h * k3.L, s.U + h * k3.U}, metric);
    s.L += (h / 6.0) * (k1.L + 2.0 * k2.L + 2.0 * k3.L + k4.L);
    s.U += (h / 6.0) * (k1.U + 2.0 * k2.U + 2.0 * k3.U + k4.U);

    s.L = 0.5 * (s.L + s.L.adjoint().eval());
    if (!s.L.allFinite() || !s.U.allFinite()) {
      throw std::runtime_error("integrate_geodesic: non-finite values at t = " +
                               std::to_string((i + 1) * h));
    }
    if ((s.U.adjoint() * s.U - Matrix::Identity(d, d)).norm() > 1e-12) {
      s.U = polar_unitary(s.U);
      ++traj.unitarity_repairs;
    }
  }
  return traj;
}

ConservedReport conserved_quantities(const GeodesicTrajectory& traj) {
  ConservedReport rep;
  const PenaltyMetric& metric = traj.metric;
  const Matrix& l0 = traj.L.front();
  const double speed0 = metric.inner(traj.H.front(), traj.H.front());
  for (int i = 0; i < traj.nodes(); ++i) {
    Matrix back = traj.U[i].adjoint() * traj.L[i] * traj.U[i];
    rep.max_constant_drift = std::max(rep.max_constant_drift, operator_norm(back - l0));
    rep.max_speed_drift =
        std::max(rep.max_speed_drift, std::abs(metric.inner(traj.H[i], traj.H[i]) - speed0));
  }
  if (metric.kind() == PenaltyMetric::Kind::Standard) {
    rep.has_one_body = true;
    const int n = metric.n();
    std::vector<int> one_body;
    for (int idx = 1; idx < basis_size(n); ++idx) {
      if (word_weight(n, idx) == 1) one_body.push_back(idx);
    }
    rep.one_body_drift = RVector::Zero(one_body.size());
    CVector c0 = pauli_spectrum(l0, n);
    for (int i = 0; i < traj.nodes(); ++i) {
      CVector c = pauli_spectrum(traj.L[i], n);
      for (size_t k = 0; k < one_body.size(); ++k) {
        rep.one_body_drift(k) =
            std::max(rep.one_body_drift(k), std::abs((c(one_body[k]) - c0(one_body[k])).real()));
      }
    }
    rep.max_one_body_drift = rep.one_body_drift.size() ? rep.one_body_drift.maxCoeff() : 0.0;
  }
  return rep;
}

bool is_constant_H_geodesic(const Matrix& h, const PenaltyMetric& metric) {
  auto [hp, hq] = split_PQ(h, metric);
  return operator_norm(commutator(hq, hp)) <= 1e-12;
}

CanonicalLog canonical_hamiltonian(const Matrix& u, double T,
                                   const std::vector<int>* branch_shifts) {
  const int d = static_cast<int>(u.rows());
  if (T <= 0.0) throw std::invalid_argument("canonical_hamiltonian: T must be positive");
  if (operator_norm(u.adjoint() * u - Matrix::Identity(d, d)) > 1e-10) {
    throw std::invalid_argument("canonical_hamiltonian: input is not unitary");
  }
  // A unitary is normal, so its Schur form is diagonal and the Schur basis is
  // an orthonormal eigenbasis; more reliable than a general eigensolver.
  Eigen::ComplexSchur<Matrix> schur(u);
  CVector lambda = schur.matrixT().diagonal();
  Matrix basis = schur.matrixU();

  RVector mu(d);
  for (int j = 0; j < d; ++j) {
    double theta = std::arg(lambda(j));  // in (-pi, pi]
    double m = -theta / T;               // in [-pi/T, pi/T)
    if (m <= -kPi / T * (1.0 - 1e-15)) m += 2.0 * kPi / T;  // close the upper end instead
    mu(j) = m;
  }

  // Ascending eigenvalue order, so that branch shifts have a stable meaning.
  std::vector<int> perm(d);
  for (int j = 0; j < d; ++j) perm[j] = j;
  std::sort(perm.begin(), perm.end(), [&mu](int a, int b) { return mu(a) < mu(b); });
  RVector mu_sorted(d);
  Matrix basis_sorted(d, d);
  for (int j = 0; j < d; ++j) {
    mu_sorted(j) = mu(perm[j]);
    basis_sorted.col(j) = basis.col(perm[j]);
  }
  if (branch_shifts) {
    if (static_cast<int>(branch_shifts->size()) != d) {
      throw std::invalid_argument("canonical_hamiltonian: wrong number of branch shifts");
    }
    for (int j = 0; j < d; ++j) mu_sorted(j) += 2.0 * kPi * (*branch_shifts)[j] / T;
  }

  CanonicalLog out;
  out.hamiltonian = basis_sorted * mu_sorted.asDiagonal() * basis_sorted.adjoint();
  out.hamiltonian = 0.5 * (out.hamiltonian + out.hamiltonian.adjoint().eval());
  out.trace_rate = mu_sorted.sum() / d;
  out.traceless = out.hamiltonian - out.trace_rate * Matrix::Identity(d, d);
  out.eigenvalues = mu_sorted;
  return out;
}

SuNormalized su_normalize(const Matrix& u) {
  const int d = static_cast<int>(u.rows());
  Matrix v = u;
  Complex total{1.0, 0.0};
  // Peel off the determinant phase, then shift by the 2^n-th root of unity
  // that makes the principal logarithm traceless. Eigenphase refolding can
  // reintroduce a multiple of 2 pi in the trace, hence the short loop.
  Complex det = v.determinant();
  Complex root = std::exp(Complex(0.0, -std::arg(det) / d));
  v *= root;
  total *= root;
  for (int iter = 0; iter < 6; ++iter) {
    CanonicalLog log = canonical_hamiltonian(v, 1.0);
    double m = log.eigenvalues.sum() / (2.0 * kPi);
    long mi = std::lround(m);
    if (std::abs(m - mi) > 1e-6) {
      throw std::runtime_error("su_normalize: log trace is not a multiple of 2 pi");
    }
    if (mi == 0) break;
    // Eigenphases shift by +alpha, so the log eigenvalues drop by alpha each.
    Complex shift = std::exp(Complex(0.0, 2.0 * kPi * mi / d));
    v *= shift;
    total *= shift;
  }
  return {v, total};
}

namespace {

Matrix check_weight_component(const Matrix& a, int n, int weight, const char* who) {
  CVector c = pauli_spectrum(a, n);
  double off = 0.0;
  for (int i = 0; i < basis_size(n); ++i) {
    if (word_weight(n, i) != weight) off = std::max(off, std::abs(c(i)));
  }
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  if (off > 1e-12 * scale) {
    throw std::invalid_argument(std::string(who) + ": component has support outside weight " +
                                std::to_string(weight));
  }
  return a;
}

// Diagonal part of t in the eigenbasis of m. Throws if m has (numerically)
// repeated eigenvalues, where the reduction is ill-defined.
Matrix eigenbasis_diagonal_part(const Matrix& m, const Matrix& t, const char* who) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const RVector& vals = es.eigenvalues();
  const double scale = std::max(1.0, std::abs(vals(vals.size() - 1) - vals(0)));
  for (Eigen::Index j = 0; j + 1 < vals.size(); ++j) {
    if (vals(j + 1) - vals(j) < 1e-8 * scale) {
      throw std::invalid_argument(std::string(who) + ": degenerate spectrum in reduced mode");
    }
  }
  const Matrix& vecs = es.eigenvectors();
  CVector diag = (vecs.adjoint() * t * vecs).diagonal();
  return vecs * diag.asDiagonal() * vecs.adjoint();
}

}  // namespace

ThreeQubitSolution three_qubit_analytic(const Matrix& s0, const Matrix& t0, const Matrix& q0,
                                        double s, double q, double t, ThreeQubitMode mode) {
  constexpr int n = 3;
  check_weight_component(s0, n, 1, "three_qubit_analytic");
  check_weight_component(t0, n, 2, "three_qubit_analytic");
  check_weight_component(q0, n, 3, "three_qubit_analytic");
  if (s < 0.0) throw std::invalid_argument("three_qubit_analytic: s must be nonnegative");
  if (s == 0.0 && hs_norm(s0) > 1e-12) {
    throw std::invalid_argument("three_qubit_analytic: s = 0 limit requires S0 = 0");
  }
  const double q_inv = std::isinf(q) ? 0.0 : 1.0 / q;
  const double s_inv = (s > 0.0) ? 1.0 / s : 0.0;

  ThreeQubitSolution sol;
  sol.S = s0;
  // Exact conjugation form of the dual, valid for every finite penalty pair.
  Matrix w_outer = herm_expm(s0, kI * t * (q_inv - s_inv));
  Matrix w_inner = herm_expm(s0 + q0, kI * t * (1.0 - q_inv));
  sol.T = w_outer * w_inner * t0 * w_inner.adjoint() * w_outer.adjoint();
  sol.Q = w_outer * q0 * w_outer.adjoint();
  sol.L = sol.S + sol.T + sol.Q;

  const Matrix prefactor = herm_expm(s0, -kI * t * s_inv);
  switch (mode) {
    case ThreeQubitMode::Full:
      sol.U = prefactor * herm_expm(s0 + q0, kI * t) * herm_expm(s0 + t0 + q0, -kI * t);
      break;
    case ThreeQubitMode::SToZero:
      sol.U = prefactor * herm_expm(q0, kI * t) * herm_expm(t0 + q0, -kI * t);
      break;
    case ThreeQubitMode::FirstOrderReduced: {
      Matrix base = (s > 0.0) ? Matrix(s0 + q0) : q0;
      Matrix reduced = eigenbasis_diagonal_part(base, t0, "three_qubit_analytic");
      sol.U = prefactor * herm_expm(reduced, -kI * t);
      break;
    }
  }
  return sol;
}

PowerSeriesContext::PowerSeriesContext(const PenaltyMetric& metric)
    : metric_(metric), dim_(basis_size(metric.n())) {
  e_row_.assign(static_cast<size_t>(dim_) * dim_, -1);
  e_val_.assign(static_cast<size_t>(dim_) * dim_, 0.0);
  const int n = metric.n();
  for (int b = 0; b < dim_; ++b) {
    PauliWord wb = PauliWord::from_index(n, b);
    for (int c = 0; c < dim_; ++c) {
      PauliWord wc = PauliWord::from_index(n, c);
      if (commutes(wb, wc)) continue;
      PauliProduct p = pauli_product(wb, wc);
      // i[sigma_b, sigma_c] = 2 i^{k+1} w, real for anticommuting words.
      const double factor = (p.phase_exponent == 1) ? -2.0 : 2.0;
      e_row_[static_cast<size_t>(b) * dim_ + c] = p.word.index();
      e_val_[static_cast<size_t>(b) * dim_ + c] = factor / metric.penalty(c);
    }
  }
}

RVector PowerSeriesContext::apply_E(const RVector& x, const RVector& y) const {
  RVector out = RVector::Zero(dim_);
  for (int b = 0; b < dim_; ++b) {
    const double xb = x(b);
    if (xb == 0.0) continue;
    const size_t base = static_cast<size_t>(b) * dim_;
    for (int c = 0; c < dim_; ++c) {
      const int row = e_row_[base + c];
      if (row >= 0) out(row) += e_val_[base + c] * xb * y(c);
    }
  }
  return out;
}

RMatrix PowerSeriesContext::dense_E() const {
  RMatrix e = RMatrix::Zero(dim_, static_cast<Eigen::Index>(dim_) * dim_);
  for (int b = 0; b < dim_; ++b) {
    for (int c = 0; c < dim_; ++c) {
      const int row = e_row_[static_cast<size_t>(b) * dim_ + c];
      if (row >= 0) e(row, static_cast<Eigen::Index>(b) * dim_ + c) = e_val_[static_cast<size_t>(b) * dim_ + c];
    }
  }
  return e;
}

std::vector<std::vector<RVector>> PowerSeriesContext::apply_symmetrizer(
    const std::vector<RVector>& slots) {
  std::vector<std::vector<RVector>> out;
  const size_t m = slots.size();
  out.reserve(m);
  out.push_back(slots);  // identity term
  for (size_t p = 1; p < m; ++p) {
    std::vector<RVector> swapped = slots;
    std::swap(swapped[0], swapped[p]);
    out.push_back(std::move(swapped));
  }
  return out;
}

RVector PowerSeriesContext::eval_stage(std::vector<RVector> slots, int k) const {
  if (k == 0) return slots[0];
  // Stage k: contract the first two slots through E, then let
  // T_k = I + S_{1,2} + ... + S_{1,k} scatter the result over the k slots.
  RVector w = apply_E(slots[0], slots[1]);
  std::vector<RVector> merged;
  merged.reserve(k);
  merged.push_back(std::move(w));
  for (int i = 2; i <= k; ++i) merged.push_back(std::move(slots[i]));
  RVector acc = RVector::Zero(dim_);
  for (auto& term : apply_symmetrizer(merged)) {
    acc += eval_stage(std::move(term), k - 1);
  }
  return acc;
}

RVector PowerSeriesContext::derivative_coeffs(const RVector& l0, int order_j) const {
  if (order_j == 0) return l0;
  std::vector<RVector> slots(order_j + 1, l0);
  return eval_stage(std::move(slots), order_j);
}

Matrix power_series_L(const Matrix& l0, const PenaltyMetric& metric, int order, double t) {
  if (order < 0 || order > 8 || (metric.n() >= 3 && order > 4)) {
    throw std::invalid_argument("power_series_L: order too large for n");
  }
  PowerSeriesContext ctx(metric);
  CVector c0 = pauli_spectrum(l0, metric.n());
  RVector acc = c0.real();
  RVector l0r = c0.real();
  double t_pow = 1.0;
  double fact = 1.0;
  for (int j = 1; j <= order; ++j) {
    t_pow *= t;
    fact *= j;
    acc += (t_pow / fact) * ctx.derivative_coeffs(l0r, j);
  }
  return from_pauli_spectrum(acc.cast<Complex>(), metric.n());
}

}  // namespace qcgeo
