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

#include "qcgeo/jacobi.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

namespace qcgeo {

namespace {

double smallest_singular_value(const RMatrix& m) {
  Eigen::BDCSVD<RMatrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

double min_abs_eigenvalue(const RMatrix& m) {
  Eigen::EigenSolver<RMatrix> es(m, false);
  return es.eigenvalues().cwiseAbs().minCoeff();
}

// Kdot = -F(i[K,L] + i[H,G(K)]) - C.
Matrix k_rhs(const Matrix& k, const Matrix& l, const Matrix& h, const PenaltyMetric& metric) {
  Matrix inner = commutator(k, l) + commutator(h, metric.apply_G(k));
  return -metric.apply_F(kI * inner);
}

Matrix inhomogeneous_drive(const Matrix& h, const PenaltyMetric& metric) {
  auto [hp, hq] = split_PQ(h, metric);
  return metric.apply_F2(kI * commutator(hp, hq));
}

// Shared carrier for the geodesic base state plus any number of Jacobi
// columns, stepped with one RK4 so every column sees consistent stage values.
struct BigState {
  Matrix L, U;
  std::vector<Matrix> K;
  std::vector<Matrix> J;

  void add_scaled(const BigState& other, double a) {
    L += a * other.L;
    U += a * other.U;
    for (size_t i = 0; i < K.size(); ++i) K[i] += a * other.K[i];
    for (size_t i = 0; i < J.size(); ++i) J[i] += a * other.J[i];
  }
};

BigState big_rhs(const BigState& s, const PenaltyMetric& metric, bool inhomogeneous) {
  BigState d;
  Matrix h = metric.apply_F(s.L);
  d.L = kI * commutator(s.L, h);
  d.U = -kI * (h * s.U);
  d.K.resize(s.K.size());
  d.J.resize(s.J.size());
  Matrix drive;
  if (inhomogeneous) drive = inhomogeneous_drive(h, metric);
  for (size_t c = 0; c < s.K.size(); ++c) {
    d.K[c] = k_rhs(s.K[c], s.L, h, metric);
    if (inhomogeneous) d.K[c] -= drive;
    d.J[c] = s.U.adjoint() * s.K[c] * s.U;
  }
  return d;
}

void big_rk4_step(BigState& s, double h, const PenaltyMetric& metric, bool inhomogeneous,
                  int* repairs) {
  BigState k1 = big_rhs(s, metric, inhomogeneous);
  BigState s2 = s;
  s2.add_scaled(k1, 0.5 * h);
  BigState k2 = big_rhs(s2, metric, inhomogeneous);
  BigState s3 = s;
  s3.add_scaled(k2, 0.5 * h);
  BigState k3 = big_rhs(s3, metric, inhomogeneous);
  BigState s4 = s;
  s4.add_scaled(k3, h);
  BigState k4 = big_rhs(s4, metric, inhomogeneous);

  s.add_scaled(k1, h / 6.0);
  s.add_scaled(k2, h / 3.0);
  s.add_scaled(k3, h / 3.0);
  s.add_scaled(k4, h / 6.0);

  s.L = 0.5 * (s.L + s.L.adjoint().eval());
  for (auto& k : s.K) k = 0.5 * (k + k.adjoint().eval());
  if (!s.L.allFinite() || !s.U.allFinite()) {
    throw std::runtime_error("jacobi integration: non-finite values");
  }
  const int d = static_cast<int>(s.U.rows());
  if ((s.U.adjoint() * s.U - Matrix::Identity(d, d)).norm() > 1e-12) {
    s.U = polar_unitary(s.U);
    if (repairs) ++(*repairs);
  }
}

}  // namespace

LiftedField lifted_jacobi_solve(const GeodesicTrajectory& traj, const Matrix& j0,
                                const Matrix& jdot0, const LiftedSolveOptions& opts) {
  const PenaltyMetric& metric = traj.metric;
  const int steps = traj.nodes() - 1;
  const double h = traj.T / steps;

  // factor = 1 records the whole field on the trajectory grid; factor = 2 is
  // the half-step endpoint check.
  auto run = [&](int factor, LiftedField* record) -> Matrix {
    BigState s;
    s.L = traj.L.front();
    s.U = Matrix::Identity(dim_of(metric.n()), dim_of(metric.n()));
    s.K.push_back(jdot0);  // K(0) = U(0) Jdot(0) U(0)^dag = Jdot(0)
    s.J.push_back(j0);
    for (int i = 0;; ++i) {
      if (record && i % factor == 0) {
        record->J.push_back(s.J[0]);
        record->K.push_back(s.K[0]);
        record->C.push_back(inhomogeneous_drive(metric.apply_F(s.L), metric));
      }
      if (i == steps * factor) break;
      big_rk4_step(s, h / factor, metric, opts.include_inhomogeneous, nullptr);
    }
    return s.J[0];
  };

  LiftedField field;
  field.times = traj.times;
  Matrix j_end = run(1, &field);
  if (opts.halving_tolerance > 0.0) {
    Matrix fine_end = run(2, nullptr);
    const double scale = std::max(1.0, hs_norm(j_end));
    const double diff = hs_norm(j_end - fine_end) / scale;
    if (diff > opts.halving_tolerance) {
      throw std::runtime_error("lifted_jacobi_solve: grid too coarse (halving defect " +
                               std::to_string(diff) + ")");
    }
  }
  return field;
}

const RMatrix& JacobiPropagator::E4(int stored_index) const {
  if (Kprop.empty()) {
    throw std::logic_error("JacobiPropagator: K blocks were not stored");
  }
  return Kprop[stored_index];
}

RMatrix JacobiPropagator::endpoint_JT() const {
  if (stored_nodes.empty() || stored_nodes.back() != times.size() - 1) {
    throw std::logic_error("JacobiPropagator: final node blocks were not stored");
  }
  return conjU.back().transpose() * E2.back();
}

RMatrix JacobiPropagator::E2_J(int stored_index) const {
  return conjU[stored_index].transpose() * E2[stored_index];
}

JacobiPropagator jacobi_propagator(const GeodesicTrajectory& traj,
                                   const JacobiPropagatorOptions& opts) {
  const PenaltyMetric& metric = traj.metric;
  const int n = metric.n();
  const int dim = basis_size(n) - 1;
  const int steps = traj.nodes() - 1;
  const double h = traj.T / steps;

  JacobiPropagator prop;
  prop.n = n;
  prop.dim = dim;
  prop.times = traj.times;
  if (opts.node_stats) {
    prop.sigma_min = RVector::Zero(traj.nodes());
    prop.min_abs_eig = RVector::Zero(traj.nodes());
  }

  BigState s;
  s.L = traj.L.front();
  s.U = Matrix::Identity(dim_of(n), dim_of(n));
  s.K.resize(dim);
  s.J.resize(dim);
  for (int c = 0; c < dim; ++c) {
    s.K[c] = to_matrix(PauliWord::from_index(n, c + 1));
    s.J[c] = Matrix::Zero(dim_of(n), dim_of(n));
  }

  auto store_node = [&](int node) {
    const bool keep =
        (opts.store_stride > 0 && node % opts.store_stride == 0) || node == steps;
    if (!keep && !opts.node_stats) return;
    RMatrix e2j(dim, dim);  // J frame: Jdot(0) -> J(t)
    for (int c = 0; c < dim; ++c) e2j.col(c) = traceless_coeffs(s.J[c], n);
    if (keep) {
      RMatrix oc = conjugation_coeff_matrix(s.U, n);
      prop.stored_nodes.push_back(node);
      prop.E2.push_back(oc * e2j);  // body frame
      prop.conjU.push_back(std::move(oc));
      if (opts.store_K) {
        RMatrix kp(dim, dim);
        for (int c = 0; c < dim; ++c) kp.col(c) = traceless_coeffs(s.K[c], n);
        prop.Kprop.push_back(std::move(kp));
      }
    }
    if (opts.node_stats) {
      prop.sigma_min(node) = smallest_singular_value(e2j);
      prop.min_abs_eig(node) = min_abs_eigenvalue(e2j);
    }
  };

  for (int i = 0;; ++i) {
    store_node(i);
    if (i == steps) break;
    big_rk4_step(s, h, metric, false, nullptr);
  }
  if (!opts.node_stats) {
    prop.sigma_min = RVector::Zero(1);
    prop.min_abs_eig = RVector::Zero(1);
    const RMatrix jt = prop.endpoint_JT();
    prop.sigma_min(0) = smallest_singular_value(jt);
    prop.min_abs_eig(0) = min_abs_eigenvalue(jt);
  }
  return prop;
}

ConstantHJacobi::ConstantHJacobi(const Matrix& h, const PenaltyMetric& metric)
    : n_(metric.n()), dim_(basis_size(metric.n()) - 1) {
  if (!is_constant_H_geodesic(h, metric)) {
    throw std::invalid_argument("ConstantHJacobi: [P(H),Q(H)] != 0, Hamiltonian is not constant");
  }
  Matrix l = metric.apply_G(h);
  m_real_.resize(dim_, dim_);
  w_real_.resize(dim_, dim_);
  for (int b = 0; b < dim_; ++b) {
    Matrix sigma = to_matrix(PauliWord::from_index(n_, b + 1));
    Matrix kdot = kI * metric.apply_F(commutator(l, sigma) - commutator(h, metric.apply_G(sigma)));
    m_real_.col(b) = traceless_coeffs(kdot, n_);
    w_real_.col(b) = traceless_coeffs(kI * commutator(h, sigma), n_);
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> em(m_real_.cast<Complex>());
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ew(w_real_.cast<Complex>());
  lm_ = em.eigenvalues();
  lw_ = ew.eigenvalues();
  vm_ = em.eigenvectors();
  vw_ = ew.eigenvectors();
  // For two-body Hamiltonians L = H, so the K generator collapses to
  // -i(q-1) F ad_H Q, which has nilpotent blocks; the eigenvector basis is
  // then numerically singular and the phi route is unusable.
  const double cond_guard = 1e-7;
  double rm = (vm_ * lm_.asDiagonal() * vm_.inverse() - m_real_.cast<Complex>()).norm();
  double rw = (vw_ * lw_.asDiagonal() * vw_.inverse() - w_real_.cast<Complex>()).norm();
  double scale = std::max(1.0, std::max(m_real_.norm(), w_real_.norm()));
  if (rm > cond_guard * scale || rw > cond_guard * scale) {
    use_ode_fallback_ = true;
  } else {
    vm_inv_ = vm_.inverse();
    vw_inv_ = vw_.inverse();
    cmat_ = vw_inv_ * vm_;
  }
}

namespace {

Complex phi1(Complex z) {
  if (std::abs(z) < 1e-6) {
    // (e^z - 1)/z = 1 + z/2 + z^2/6 + z^3/24
    return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
  }
  return (std::exp(z) - 1.0) / z;
}

// Z(t) = int_0^t e^{Wr} e^{Mr} dr by exact interval doubling:
// Z(a+b) = Z(a) + e^{Wa} Z(b) e^{Ma}, seeded with a short series on a
// substep where ||W||h, ||M||h <= 2^-5. Valid for defective M.
RMatrix integral_by_doubling(const RMatrix& w, const RMatrix& m, double t) {
  const int dim = static_cast<int>(w.rows());
  if (t == 0.0) return RMatrix::Zero(dim, dim);
  if (t < 0.0) return -integral_by_doubling(RMatrix(-w), RMatrix(-m), -t);

  const double omega = std::max({1.0, w.cwiseAbs().rowwise().sum().maxCoeff(),
                                 m.cwiseAbs().rowwise().sum().maxCoeff()});
  int doublings = 0;
  double h = t;
  while (omega * h > 0.03125) {
    h *= 0.5;
    ++doublings;
  }

  constexpr int kOrder = 10;
  std::vector<RMatrix> wp(kOrder + 1), mp(kOrder + 1);  // W^k h^k / k!, M^k h^k / k!
  wp[0] = mp[0] = RMatrix::Identity(dim, dim);
  for (int k = 1; k <= kOrder; ++k) {
    wp[k] = (wp[k - 1] * w) * (h / k);
    mp[k] = (mp[k - 1] * m) * (h / k);
  }
  RMatrix ew = RMatrix::Zero(dim, dim), em = RMatrix::Zero(dim, dim);
  RMatrix z = RMatrix::Zero(dim, dim);
  for (int j = 0; j <= kOrder; ++j) {
    ew += wp[j];
    em += mp[j];
    RMatrix cj = RMatrix::Zero(dim, dim);  // coefficient of r^j in e^{Wr}e^{Mr}, times h^j
    for (int k = 0; k <= j; ++k) cj += wp[k] * mp[j - k];
    z += cj * (h / (j + 1));
  }
  for (int s = 0; s < doublings; ++s) {
    z = z + ew * z * em;
    ew = ew * ew;
    em = em * em;
  }
  return z;
}

}  // namespace

RMatrix ConstantHJacobi::E2(double t) const {
  if (use_ode_fallback_) {
    return integral_by_doubling(w_real_, m_real_, t);
  }
  Eigen::MatrixXcd phi(dim_, dim_);
  for (int j = 0; j < dim_; ++j) {
    for (int k = 0; k < dim_; ++k) {
      phi(j, k) = cmat_(j, k) * t * phi1((lw_(j) + lm_(k)) * t);
    }
  }
  Eigen::MatrixXcd e2 = vw_ * phi * vm_inv_;
  return e2.real();
}

double ConstantHJacobi::sigma_min(double t) const { return smallest_singular_value(E2(t)); }

Matrix ConstantHJacobi::solve(const Matrix& j0, const Matrix& jdot0, double t) const {
  RVector jc = E2(t) * traceless_coeffs(jdot0, n_);
  return j0 + from_traceless_coeffs(jc, n_);
}

Matrix constant_H_closed_form(const Matrix& h, const PenaltyMetric& metric, const Matrix& j0,
                              const Matrix& jdot0, double t) {
  return ConstantHJacobi(h, metric).solve(j0, jdot0, t);
}

namespace {

double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          int iters = 60) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && (b - a) > 1e-13 * std::max(1.0, std::abs(b)); ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

ConjugateScanResult conjugate_scan(const GeodesicTrajectory& traj,
                                   const ConjugateScanOptions& opts) {
  JacobiPropagatorOptions popts = opts.propagator;
  popts.node_stats = true;
  JacobiPropagator prop = jacobi_propagator(traj, popts);

  ConjugateScanResult res;
  const int nodes = traj.nodes();
  res.rows.resize(nodes);
  for (int i = 0; i < nodes; ++i) {
    res.rows[i] = {traj.times(i), prop.sigma_min(i), prop.min_abs_eig(i), false};
  }

  RVector sorted = prop.sigma_min;
  std::sort(sorted.data(), sorted.data() + sorted.size());
  res.median_sigma = sorted(sorted.size() / 2);
  const double threshold = opts.rel_threshold * res.median_sigma;

  const bool const_h = is_constant_H_geodesic(traj.H.front(), traj.metric);
  std::optional<ConstantHJacobi> ctx;
  if (const_h) ctx.emplace(traj.H.front(), traj.metric);

  auto refine = [&](int node) -> ConjugatePoint {
    const double t_lo = traj.times(std::max(0, node - 1));
    const double t_hi = traj.times(std::min(nodes - 1, node + 1));
    if (ctx) {
      double tc = golden_section_min([&](double t) { return ctx->sigma_min(t); }, t_lo, t_hi);
      return {tc, ctx->sigma_min(tc)};
    }
    // Parabolic vertex in log sigma over the bracketing nodes.
    if (node == 0 || node == nodes - 1) return {traj.times(node), prop.sigma_min(node)};
    const double y0 = std::log(std::max(prop.sigma_min(node - 1), 1e-300));
    const double y1 = std::log(std::max(prop.sigma_min(node), 1e-300));
    const double y2 = std::log(std::max(prop.sigma_min(node + 1), 1e-300));
    const double denom = y0 - 2.0 * y1 + y2;
    double tc = traj.times(node);
    double yv = y1;
    if (denom > 0) {
      const double delta = 0.5 * (y0 - y2) / denom;
      tc += delta * (traj.times(node + 1) - traj.times(node));
      yv = y1 - 0.25 * (y0 - y2) * delta;
    }
    return {tc, std::exp(yv)};
  };

  for (int i = 1; i < nodes; ++i) {
    const bool interior_min = i + 1 < nodes && prop.sigma_min(i) < prop.sigma_min(i - 1) &&
                              prop.sigma_min(i) < prop.sigma_min(i + 1);
    const bool falling_end = i == nodes - 1 && prop.sigma_min(i) < prop.sigma_min(i - 1) &&
                             prop.sigma_min(i) <= threshold;
    if (!interior_min && !falling_end) continue;
    // Shallow wiggles near the median are not worth refining.
    if (!falling_end && prop.sigma_min(i) > 0.5 * res.median_sigma) continue;
    ConjugatePoint cp = refine(i);
    if (cp.sigma_refined <= threshold) {
      res.rows[i].dip = true;
      res.conjugate_points.push_back(cp);
    }
  }
  std::sort(res.conjugate_points.begin(), res.conjugate_points.end(),
            [](const ConjugatePoint& a, const ConjugatePoint& b) { return a.t < b.t; });
  if (!res.conjugate_points.empty()) res.first_tc = res.conjugate_points.front().t;
  return res;
}

BiinvariantTimes biinvariant_conjugate_times(const Matrix& h, double t_max) {
  constexpr double kPi = 3.14159265358979323846;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RVector& vals = es.eigenvalues();
  const int d = static_cast<int>(vals.size());
  const double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());

  BiinvariantTimes out;
  std::set<double> uniq;
  bool any_gap = false;
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      const double gap = std::abs(vals(k) - vals(j));
      if (gap < 1e-12 * scale) continue;
      any_gap = true;
      const double base = 2.0 * kPi / gap;
      for (int m = 1; m * base <= t_max; ++m) {
        const double t = m * base;
        auto it = uniq.lower_bound(t - 1e-10);
        if (it != uniq.end() && std::abs(*it - t) <= 1e-10) continue;
        uniq.insert(t);
      }
    }
  }
  out.degenerate = !any_gap;
  out.times.assign(uniq.begin(), uniq.end());
  return out;
}

}  // namespace qcgeo
