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

#include "doctest.h"
#include "qcgeo/random.hpp"
#include "qcgeo/targets.hpp"

using namespace qcgeo;

namespace {

Matrix word_matrix(const std::string& s) { return to_matrix(PauliWord::from_string(s)); }

PenaltyMetric curved_n2(double q) {
  return PenaltyMetric::projective(2, q, {"IX", "IY", "IZ", "XI", "YI", "ZI"});
}

}  // namespace

TEST_CASE("q = 1 geodesics have constant dual and exponential unitary") {
  PenaltyMetric metric = PenaltyMetric::standard(3, 1.0);
  Rng rng(2);
  Matrix l0 = random_unit_speed_dual(metric, rng);
  GeodesicTrajectory traj = integrate_geodesic(l0, metric, 1.0, 500);
  double worst = 0.0;
  for (int i = 0; i < traj.nodes(); ++i) {
    worst = std::max(worst, hs_norm(traj.L[i] - l0));
  }
  CHECK(worst < 1e-10);
  Matrix expect = herm_expm(l0, -kI * 1.0);
  CHECK(operator_norm(traj.endpoint() - expect) < 1e-10);
}

TEST_CASE("two-body initial data stays constant at any penalty") {
  PenaltyMetric metric = PenaltyMetric::standard(3, 64.0);
  Matrix h0 = ising_hamiltonian(3, 1.0);
  GeodesicTrajectory traj = integrate_geodesic(metric.apply_G(h0), metric, 1.0, 500);
  double worst = 0.0;
  for (const auto& l : traj.L) worst = std::max(worst, hs_norm(l - h0));
  CHECK(worst < 1e-10);
  CHECK(operator_norm(traj.endpoint() - herm_expm(h0, -kI * 1.0)) < 1e-9);
}

TEST_CASE("conserved quantities on random hard geodesics") {
  PenaltyMetric metric = PenaltyMetric::standard(3, 64.0);
  Rng rng(4);
  for (int trial = 0; trial < 3; ++trial) {
    Matrix l0 = random_unit_speed_dual(metric, rng);
    GeodesicTrajectory traj = integrate_geodesic(l0, metric, 1.0, 1000);
    ConservedReport rep = conserved_quantities(traj);
    CHECK(rep.max_constant_drift < 1e-8);
    CHECK(rep.max_speed_drift < 1e-8);
    CHECK(rep.has_one_body);
    CHECK(rep.max_one_body_drift < 1e-8);

    GeodesicTrajectory fine = integrate_geodesic(l0, metric, 1.0, 2000);
    ConservedReport rep2 = conserved_quantities(fine);
    CHECK(rep2.max_constant_drift * 8.0 <= rep.max_constant_drift);
  }
}

TEST_CASE("curve length of a unit-speed geodesic is T") {
  PenaltyMetric metric = PenaltyMetric::standard(3, 64.0);
  Rng rng(6);
  Matrix l0 = random_unit_speed_dual(metric, rng);
  GeodesicTrajectory traj = integrate_geodesic(l0, metric, 1.5, 600);
  CHECK(curve_length(traj.times, traj.H, metric) == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("differentiating the conserved form recovers the geodesic equation") {
  PenaltyMetric metric = PenaltyMetric::standard(3, 64.0);
  Rng rng(8);
  Matrix l0 = random_unit_speed_dual(metric, rng);
  GeodesicTrajectory traj = integrate_geodesic(l0, metric, 0.5, 2000);
  const double h = traj.times(1) - traj.times(0);
  double worst = 0.0;
  for (int i = 1; i + 1 < traj.nodes(); i += 97) {
    Matrix conserved_prev = traj.U[i - 1] * l0 * traj.U[i - 1].adjoint();
    Matrix conserved_next = traj.U[i + 1] * l0 * traj.U[i + 1].adjoint();
    Matrix fd = (conserved_next - conserved_prev) / (2.0 * h);
    Matrix rhs = kI * commutator(traj.L[i], traj.H[i]);
    worst = std::max(worst, hs_norm(fd - rhs));
  }
  CHECK(worst < 1e-5);  // second-order finite difference on an O(1) curvature
}

TEST_CASE("covariant derivative of the tangent vanishes along geodesics") {
  PenaltyMetric metric = PenaltyMetric::standard(3, 64.0);
  Rng rng(10);
  Matrix l0 = random_unit_speed_dual(metric, rng);
  GeodesicTrajectory traj = integrate_geodesic(l0, metric, 0.5, 2000);
  auto dh = covariant_derivative(traj.times, traj.H, traj.H, metric);
  double worst = 0.0;
  for (int i = 1; i + 1 < traj.nodes(); ++i) worst = std::max(worst, hs_norm(dh[i]));
  CHECK(worst < 1e-5);
}

TEST_CASE("constant Hamiltonian criterion") {
  PenaltyMetric metric = PenaltyMetric::standard(3, 64.0);
  CHECK(is_constant_H_geodesic(ising_hamiltonian(3, 1.0), metric));
  Matrix commuting = word_matrix("XII") + word_matrix("XXX");
  CHECK(is_constant_H_geodesic(commuting, metric));
  Matrix mixed = word_matrix("ZII") + word_matrix("XXX");
  CHECK_FALSE(is_constant_H_geodesic(mixed, metric));

  GeodesicTrajectory traj = integrate_geodesic(metric.apply_G(commuting), metric, 1.0, 500);
  double worst = 0.0;
  for (const auto& l : traj.L) worst = std::max(worst, operator_norm(l - traj.L.front()));
  CHECK(worst <= 1e-10);
}

TEST_CASE("canonical logarithm") {
  CHECK(hs_norm(canonical_hamiltonian(Matrix::Identity(4, 4), 1.0).hamiltonian) < 1e-12);

  Matrix u(2, 2);
  u.setZero();
  const double pi = 3.14159265358979323846;
  u(0, 0) = std::exp(Complex(0, -pi / 2));
  u(1, 1) = std::exp(Complex(0, pi / 2));
  CanonicalLog log = canonical_hamiltonian(u, 1.0);
  CHECK(hs_norm(log.hamiltonian - (pi / 2) * word_matrix("Z")) < 1e-12);

  Rng rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix v = haar_unitary(8, rng);
    const double T = 0.7;
    CanonicalLog lg = canonical_hamiltonian(v, T);
    CHECK(operator_norm(herm_expm(lg.hamiltonian, -kI * T) - v) < 1e-10);
    CHECK(lg.eigenvalues.minCoeff() > -pi / T - 1e-12);
    CHECK(lg.eigenvalues.maxCoeff() <= pi / T + 1e-12);
    // branch shifts move single eigenvalues by 2 pi / T
    std::vector<int> shifts(8, 0);
    shifts[0] = 1;
    CanonicalLog shifted = canonical_hamiltonian(v, T, &shifts);
    CHECK(operator_norm(herm_expm(shifted.hamiltonian, -kI * T) - v) < 1e-9);
    CHECK(shifted.eigenvalues.sum() ==
          doctest::Approx(lg.eigenvalues.sum() + 2 * pi / T).epsilon(1e-10));
  }
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(canonical_hamiltonian(bad, 1.0), std::invalid_argument);
}

TEST_CASE("su normalization produces a traceless principal logarithm") {
  Rng rng(14);
  for (int trial = 0; trial < 8; ++trial) {
    Matrix v = haar_unitary(8, rng);
    SuNormalized norm = su_normalize(v);
    CHECK(std::abs(norm.u.determinant() - Complex(1, 0)) < 1e-10);
    CanonicalLog lg = canonical_hamiltonian(norm.u, 1.0);
    CHECK(std::abs(lg.trace_rate) < 1e-10);
    CHECK(operator_norm(norm.u - norm.applied_phase * v) < 1e-12);
  }
}

TEST_CASE("three-qubit analytic solution basics") {
  Rng rng(16);
  PenaltyMetric metric = PenaltyMetric::standard(3, 64.0);
  Matrix s0 = metric.apply_weight_projector(random_traceless_hermitian(3, rng), 1);
  Matrix t0 = metric.apply_weight_projector(random_traceless_hermitian(3, rng), 2);
  Matrix q0 = metric.apply_weight_projector(random_traceless_hermitian(3, rng), 3);

  // collapsed exponentials when T0 = Q0 = 0
  Matrix zero = Matrix::Zero(8, 8);
  ThreeQubitSolution sol = three_qubit_analytic(s0, zero, zero, 0.5, 64.0, 0.8,
                                                ThreeQubitMode::Full);
  CHECK(operator_norm(sol.U - herm_expm(s0, -kI * 0.8 / 0.5)) < 1e-11);

  // S is a constant of the motion
  sol = three_qubit_analytic(s0, t0, q0, 0.5, 64.0, 1.3, ThreeQubitMode::Full);
  CHECK(hs_norm(sol.S - s0) == 0.0);

  // wrong weight class rejected
  CHECK_THROWS_AS(three_qubit_analytic(t0, t0, q0, 1.0, 64.0, 0.5, ThreeQubitMode::Full),
                  std::invalid_argument);
  // s = 0 demands S0 = 0
  CHECK_THROWS_AS(three_qubit_analytic(s0, t0, q0, 0.0, 64.0, 0.5, ThreeQubitMode::Full),
                  std::invalid_argument);
  ThreeQubitSolution lim = three_qubit_analytic(zero, t0, q0, 0.0, 64.0, 0.5,
                                                ThreeQubitMode::SToZero);
  CHECK(operator_norm(lim.U - herm_expm(q0, kI * 0.5) * herm_expm(t0 + q0, -kI * 0.5)) < 1e-11);
}

TEST_CASE("three-qubit dual components match the integrated geodesic") {
  // The conjugation form of S, T, Q is exact for every finite penalty pair.
  Rng rng(18);
  const double s = 0.7, q = 9.0;
  PenaltyMetric metric = PenaltyMetric::three_qubit_stq(s, q);
  Matrix s0 = metric.apply_weight_projector(random_traceless_hermitian(3, rng), 1);
  Matrix t0 = metric.apply_weight_projector(random_traceless_hermitian(3, rng), 2);
  Matrix q0 = metric.apply_weight_projector(random_traceless_hermitian(3, rng), 3);
  Matrix l0 = s0 + t0 + q0;
  const double t = 0.6;
  GeodesicTrajectory traj = integrate_geodesic(l0, metric, t, 4000);
  ThreeQubitSolution sol = three_qubit_analytic(s0, t0, q0, s, q, t, ThreeQubitMode::Full);
  CHECK(hs_norm(sol.L - traj.L.back()) < 1e-9);
}

TEST_CASE("three-qubit product form converges as q grows") {
  Rng rng(20);
  PenaltyMetric base = PenaltyMetric::standard(3, 2.0);
  Matrix s0 = base.apply_weight_projector(random_traceless_hermitian(3, rng), 1);
  Matrix t0 = base.apply_weight_projector(random_traceless_hermitian(3, rng), 2);
  Matrix qbar = base.apply_weight_projector(random_traceless_hermitian(3, rng), 3);
  const double t = 0.5;
  double prev_err = 1e9;
  for (double q : {1e2, 1e4}) {
    Matrix q0 = std::sqrt(q) * qbar;  // keeps <H,H> of order one
    PenaltyMetric metric = PenaltyMetric::standard(3, q);
    GeodesicTrajectory traj = integrate_geodesic(s0 + t0 + q0, metric, t, 6000);
    ThreeQubitSolution sol = three_qubit_analytic(s0, t0, q0, 1.0, q, t, ThreeQubitMode::Full);
    const double err = operator_norm(sol.U - traj.endpoint());
    CHECK(err < prev_err * 0.2);  // at least the q^{-1/2} trend
    prev_err = err;
  }
}

TEST_CASE("power series context reproduces the vectorized bilinear map") {
  for (const PenaltyMetric& metric :
       {PenaltyMetric::standard(1, 1.0), static_cast<const PenaltyMetric&>(curved_n2(8.0))}) {
    PowerSeriesContext ctx(metric);
    Rng rng(22);
    Matrix l = random_traceless_hermitian(metric.n(), rng);
    RVector lc = pauli_spectrum(l, metric.n()).real();
    RMatrix dense = ctx.dense_E();
    RVector kron(lc.size() * lc.size());
    for (int b = 0; b < lc.size(); ++b) {
      for (int c = 0; c < lc.size(); ++c) kron(b * lc.size() + c) = lc(b) * lc(c);
    }
    RVector via_dense = dense * kron;
    RVector direct = ctx.apply_E(lc, lc);
    RVector expect = pauli_spectrum(kI * commutator(l, metric.apply_F(l)), metric.n()).real();
    CHECK((via_dense - expect).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((direct - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("power series limits") {
  PenaltyMetric flat = PenaltyMetric::standard(2, 1.0);
  Rng rng(24);
  Matrix l0 = random_traceless_hermitian(2, rng);
  CHECK(hs_norm(power_series_L(l0, flat, 0, 0.3) - l0) < 1e-14);
  for (int order : {2, 5}) {
    CHECK(hs_norm(power_series_L(l0, flat, order, 0.3) - l0) < 1e-13);
  }
  CHECK_THROWS_AS(power_series_L(l0, flat, 9, 0.1), std::invalid_argument);
  PenaltyMetric hard3 = PenaltyMetric::standard(3, 4.0);
  Matrix l3 = random_traceless_hermitian(3, rng);
  CHECK_THROWS_AS(power_series_L(l3, hard3, 5, 0.1), std::invalid_argument);
}

TEST_CASE("power series matches the integrator and scales as t^7") {
  PenaltyMetric metric = curved_n2(8.0);
  Rng rng(26);
  Matrix l0 = random_unit_speed_dual(metric, rng);
  auto residual = [&](double t) {
    GeodesicTrajectory traj = integrate_geodesic(l0, metric, t, 2000);
    return hs_norm(power_series_L(l0, metric, 6, t) - traj.L.back());
  };
  const double r1 = residual(0.05);
  CHECK(r1 < 1e-9);
  const double r2 = residual(0.025);
  const double ratio = r1 / std::max(r2, 1e-300);
  // order-6 truncation leaves a t^7 tail; allow one order either way
  CHECK(ratio > std::pow(2.0, 6.0));
  CHECK(ratio < std::pow(2.0, 8.0));
}
