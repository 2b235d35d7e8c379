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

#include "doctest.h"
#include "qcgeo/random.hpp"

using namespace qcgeo;

namespace {

Matrix word_matrix(const std::string& s) { return to_matrix(PauliWord::from_string(s)); }

// A projective metric that is genuinely curved at n = 2: only one-body
// directions are easy.
PenaltyMetric curved_n2(double q) {
  return PenaltyMetric::projective(2, q, {"IX", "IY", "IZ", "XI", "YI", "ZI"});
}

}  // namespace

TEST_CASE("inner products of the standard metric") {
  PenaltyMetric metric = PenaltyMetric::standard(3, 64.0);
  Matrix x1 = word_matrix("XII");
  Matrix zzz = word_matrix("ZZZ");
  CHECK(metric.inner(x1, x1) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(metric.inner(zzz, zzz) == doctest::Approx(64.0).epsilon(1e-13));
  Matrix h = x1 + zzz;
  CHECK(metric.inner(h, h) == doctest::Approx(65.0).epsilon(1e-13));
}

TEST_CASE("positive definiteness") {
  PenaltyMetric metric = PenaltyMetric::standard(3, 64.0);
  for (int i = 1; i < basis_size(3); ++i) {
    Matrix w = to_matrix(PauliWord::from_index(3, i));
    CHECK(metric.inner(w, w) > 0.0);
  }
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Matrix h = random_traceless_hermitian(3, rng);
    CHECK(metric.inner(h, h) > 0.0);
  }
}

TEST_CASE("dual maps") {
  PenaltyMetric metric = PenaltyMetric::standard(3, 64.0);
  CHECK(hs_norm(dual(word_matrix("XII"), metric) - word_matrix("XII")) < 1e-13);
  CHECK(hs_norm(dual(word_matrix("ZZZ"), metric) - 64.0 * word_matrix("ZZZ")) < 1e-12);
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix h = random_traceless_hermitian(3, rng);
    CHECK(hs_norm(inverse_dual(dual(h, metric), metric) - h) < 1e-13);
  }
}

TEST_CASE("three qubit stq penalties") {
  PenaltyMetric metric = PenaltyMetric::three_qubit_stq(0.25, 16.0);
  CHECK(metric.penalty(PauliWord::from_string("XII")) == 0.25);
  CHECK(metric.penalty(PauliWord::from_string("XXI")) == 1.0);
  CHECK(metric.penalty(PauliWord::from_string("XXX")) == 16.0);
  CHECK(metric.is_easy(PauliWord::from_string("XXI").index()));
  CHECK_FALSE(metric.is_easy(PauliWord::from_string("XXX").index()));
}

TEST_CASE("curve length of constant curves") {
  PenaltyMetric metric = PenaltyMetric::standard(3, 64.0);
  const int nodes = 101;
  RVector times = RVector::LinSpaced(nodes, 0.0, 1.0);
  std::vector<Matrix> hs(nodes, word_matrix("XII"));
  CHECK(curve_length(times, hs, metric) == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<Matrix> hard(nodes, word_matrix("ZZZ"));
  CHECK(curve_length(times, hard, metric) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK_THROWS_AS(curve_length(RVector::Zero(1), {word_matrix("XII")}, metric),
                  std::invalid_argument);
}

TEST_CASE("coordinate metric at the origin is the penalty diagonal") {
  PenaltyMetric metric = PenaltyMetric::standard(3, 64.0);
  Matrix zero = Matrix::Zero(8, 8);
  RMatrix g = pauli_coordinate_metric(zero, metric, 1);
  for (int a = 0; a < 63; ++a) {
    for (int b = 0; b < 63; ++b) {
      const double expect = (a == b) ? metric.penalty(a + 1) : 0.0;
      CHECK(g(a, b) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("biinvariant coordinate metric stays flat to first order") {
  PenaltyMetric metric = PenaltyMetric::standard(2, 1.0);
  Rng rng(13);
  Matrix x = 1e-4 * random_traceless_hermitian(2, rng);
  RMatrix g = pauli_coordinate_metric(x, metric, 1);
  // [ad_X, G] = 0 at q = 1, so the first-order correction vanishes and only
  // O(X^2) remains.
  CHECK((g - RMatrix::Identity(15, 15)).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("analytic metric derivative matches central differences") {
  const double step = 1e-5;
  for (const PenaltyMetric& metric :
       {PenaltyMetric::standard(3, 64.0), static_cast<const PenaltyMetric&>(curved_n2(4.0))}) {
    const int n = metric.n();
    Rng rng(17 + n);
    for (int trial = 0; trial < 6; ++trial) {
      PauliWord sigma = PauliWord::from_index(n, 1 + static_cast<int>(rng.uniform() * (basis_size(n) - 1)));
      PauliWord tau = PauliWord::from_index(n, 1 + static_cast<int>(rng.uniform() * (basis_size(n) - 1)));
      PauliWord mu = PauliWord::from_index(n, 1 + static_cast<int>(rng.uniform() * (basis_size(n) - 1)));
      Matrix mmu = to_matrix(mu);
      RMatrix gp = pauli_coordinate_metric(step * mmu, metric, 1);
      RMatrix gm = pauli_coordinate_metric(-step * mmu, metric, 1);
      const double fd = (gp(sigma.index() - 1, tau.index() - 1) - gm(sigma.index() - 1, tau.index() - 1)) /
                        (2.0 * step);
      const double analytic = metric_coordinate_derivative(sigma, tau, mu, metric);
      CHECK(fd == doctest::Approx(analytic).epsilon(1e-6));
    }
  }
}

TEST_CASE("christoffel examples") {
  PenaltyMetric flat = PenaltyMetric::standard(3, 1.0);
  PenaltyMetric metric = PenaltyMetric::standard(3, 64.0);
  CHECK(christoffel(PauliWord::from_string("YZZ"), PauliWord::from_string("XII"),
                    PauliWord::from_string("ZZZ"), flat) == 0.0);
  CHECK(christoffel(PauliWord::from_string("YZZ"), PauliWord::from_string("XII"),
                    PauliWord::from_string("ZZZ"), metric) ==
        doctest::Approx(63.0 / 64.0).epsilon(1e-14));
  // commuting pair
  CHECK(christoffel(PauliWord::from_string("XII"), PauliWord::from_string("ZZI"),
                    PauliWord::from_string("IIZ"), metric) == 0.0);
}

TEST_CASE("christoffel symmetry over all triples at n <= 2") {
  for (double q : {1.0, 2.0, 64.0}) {
    for (int n = 1; n <= 2; ++n) {
      PenaltyMetric metric = (n == 2) ? curved_n2(q) : PenaltyMetric::standard(1, q);
      for (int r = 1; r < basis_size(n); ++r) {
        for (int s = 1; s < basis_size(n); ++s) {
          for (int t = 1; t < basis_size(n); ++t) {
            PauliWord rho = PauliWord::from_index(n, r);
            PauliWord sig = PauliWord::from_index(n, s);
            PauliWord tau = PauliWord::from_index(n, t);
            CHECK(christoffel(rho, sig, tau, metric) == christoffel(rho, tau, sig, metric));
          }
        }
      }
    }
  }
}

TEST_CASE("christoffel agrees with the finite-difference construction") {
  // Gamma^rho_{st} = (1/2) g^{rho mu}(g_{mu s,t} + g_{mu t,s} - g_{st,mu});
  // at the origin g^{rho mu} is diagonal with entries 1/q_rho, and the
  // derivatives come from central differences of the coordinate metric.
  const double step = 1e-5;
  PenaltyMetric metric = curved_n2(4.0);
  const int n = 2;
  auto g_deriv_fd = [&](int a, int b, int mu_idx) {
    Matrix mmu = to_matrix(PauliWord::from_index(n, mu_idx));
    RMatrix gp = pauli_coordinate_metric(step * mmu, metric, 1);
    RMatrix gm = pauli_coordinate_metric(-step * mmu, metric, 1);
    return (gp(a - 1, b - 1) - gm(a - 1, b - 1)) / (2.0 * step);
  };
  Rng rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    const int r = 1 + static_cast<int>(rng.uniform() * 15);
    const int s = 1 + static_cast<int>(rng.uniform() * 15);
    const int t = 1 + static_cast<int>(rng.uniform() * 15);
    const double fd = 0.5 / metric.penalty(r) *
                      (g_deriv_fd(r, s, t) + g_deriv_fd(r, t, s) - g_deriv_fd(s, t, r));
    const double exact = christoffel(PauliWord::from_index(n, r), PauliWord::from_index(n, s),
                                     PauliWord::from_index(n, t), metric);
    CHECK(fd == doctest::Approx(exact).epsilon(1e-6));
  }
}

TEST_CASE("right-invariant connection") {
  PenaltyMetric flat = PenaltyMetric::standard(2, 1.0);
  Rng rng(29);
  Matrix y = random_traceless_hermitian(2, rng);
  Matrix z = random_traceless_hermitian(2, rng);
  CHECK(hs_norm(connection_right_invariant(y, z, flat) - 0.5 * kI * commutator(y, z)) < 1e-12);

  PenaltyMetric metric = PenaltyMetric::standard(3, 64.0);
  Matrix w = word_matrix("XYZ");
  CHECK(hs_norm(connection_right_invariant(w, w, metric)) < 1e-13);

  // single words match i c_{sigma,tau} [sigma, tau]
  PauliWord sigma = PauliWord::from_string("XII");
  PauliWord tau = PauliWord::from_string("ZZZ");
  const double q_bracket = metric.penalty(pauli_product(sigma, tau).word);
  const double c = 0.5 * (1.0 + (metric.penalty(tau) - metric.penalty(sigma)) / q_bracket);
  Matrix lhs = connection_right_invariant(to_matrix(sigma), to_matrix(tau), metric);
  Matrix rhs = kI * c * commutator(to_matrix(sigma), to_matrix(tau));
  CHECK(hs_norm(lhs - rhs) < 1e-12);
}

TEST_CASE("metric compatibility and torsion") {
  PenaltyMetric metric = PenaltyMetric::standard(3, 64.0);
  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix x = random_traceless_hermitian(3, rng);
    Matrix y = random_traceless_hermitian(3, rng);
    Matrix z = random_traceless_hermitian(3, rng);
    const double lhs = metric.inner(x, connection_right_invariant(y, z, metric));
    const double rhs = -metric.inner(connection_right_invariant(y, x, metric), z);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    Matrix torsion = connection_right_invariant(y, z, metric) -
                     connection_right_invariant(z, y, metric) - kI * commutator(y, z);
    CHECK(hs_norm(torsion) < 1e-12);
  }
}

TEST_CASE("covariant derivative of constant fields") {
  PenaltyMetric metric = PenaltyMetric::standard(2, 1.0);
  const int nodes = 21;
  RVector times = RVector::LinSpaced(nodes, 0.0, 1.0);
  Rng rng(37);
  Matrix y = random_traceless_hermitian(2, rng);
  Matrix z = random_traceless_hermitian(2, rng);
  std::vector<Matrix> ys(nodes, y), zs(nodes, z);
  auto dz = covariant_derivative(times, ys, zs, metric);
  for (const auto& d : dz) {
    CHECK(hs_norm(d - 0.5 * kI * commutator(y, z)) < 1e-12);
  }
  // a field along its own word flow is parallel
  Matrix w = word_matrix("XZ");
  std::vector<Matrix> ws(nodes, w);
  auto dw = covariant_derivative(times, ws, ws, PenaltyMetric::standard(2, 1.0));
  for (const auto& d : dw) CHECK(hs_norm(d) < 1e-13);
}
