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

#include "qcgeo/pauli.hpp"

#include "doctest.h"
#include "qcgeo/metric.hpp"
#include "qcgeo/random.hpp"

using namespace qcgeo;

TEST_CASE("word weight") {
  CHECK(PauliWord::from_string("IXZ").weight() == 2);
  CHECK(PauliWord::from_string("III").weight() == 0);
  CHECK(PauliWord::from_string("XYZ").weight() == 3);
}

TEST_CASE("canonical index round trip") {
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < basis_size(n); ++i) {
      PauliWord w = PauliWord::from_index(n, i);
      CHECK(w.index() == i);
      CHECK(word_weight(n, i) == w.weight());
      CHECK(PauliWord::from_string(w.str()) == w);
    }
  }
  // base-4 lexicographic, leftmost qubit most significant
  CHECK(PauliWord::from_index(2, 0).str() == "II");
  CHECK(PauliWord::from_index(2, 1).str() == "IX");
  CHECK(PauliWord::from_index(2, 4).str() == "XI");
  CHECK(PauliWord::from_index(2, 7).str() == "XZ");
}

TEST_CASE("single products") {
  auto p = pauli_product(PauliWord::from_string("X"), PauliWord::from_string("Y"));
  CHECK(p.word.str() == "Z");
  CHECK(p.phase() == Complex(0, 1));

  p = pauli_product(PauliWord::from_string("X"), PauliWord::from_string("X"));
  CHECK(p.word.str() == "I");
  CHECK(p.phase() == Complex(1, 0));

  p = pauli_product(PauliWord::from_string("XI"), PauliWord::from_string("IZ"));
  CHECK(p.word.str() == "XZ");
  CHECK(p.phase() == Complex(1, 0));

  CHECK_THROWS_AS(pauli_product(PauliWord::from_string("X"), PauliWord::from_string("XY")),
                  std::invalid_argument);
}

TEST_CASE("product matches dense multiplication for all pairs at n <= 2") {
  for (int n = 1; n <= 2; ++n) {
    for (int a = 0; a < basis_size(n); ++a) {
      for (int b = 0; b < basis_size(n); ++b) {
        PauliWord wa = PauliWord::from_index(n, a);
        PauliWord wb = PauliWord::from_index(n, b);
        PauliProduct p = pauli_product(wa, wb);
        Matrix lhs = to_matrix(wa) * to_matrix(wb);
        Matrix rhs = p.phase() * to_matrix(p.word);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
        // phase is always a fourth root of unity by construction
        CHECK(std::abs(std::abs(p.phase()) - 1.0) < 1e-15);
      }
    }
  }
}

TEST_CASE("commutation") {
  CHECK_FALSE(commutes(PauliWord::from_string("X"), PauliWord::from_string("Z")));
  CHECK(commutes(PauliWord::from_string("XX"), PauliWord::from_string("ZZ")));
  for (int i = 0; i < basis_size(2); ++i) {
    CHECK(commutes(PauliWord::from_index(2, i), PauliWord::identity(2)));
  }
  // agreement with the dense commutator for all pairs at n <= 2
  for (int n = 1; n <= 2; ++n) {
    for (int a = 0; a < basis_size(n); ++a) {
      for (int b = 0; b < basis_size(n); ++b) {
        PauliWord wa = PauliWord::from_index(n, a);
        PauliWord wb = PauliWord::from_index(n, b);
        Matrix comm = commutator(to_matrix(wa), to_matrix(wb));
        CHECK(commutes(wa, wb) == (comm.cwiseAbs().maxCoeff() == 0.0));
      }
    }
  }
}

TEST_CASE("dense realizations") {
  Matrix z = to_matrix(PauliWord::from_string("Z"));
  CHECK(z(0, 0) == Complex(1, 0));
  CHECK(z(1, 1) == Complex(-1, 0));
  CHECK(z(0, 1) == Complex(0, 0));

  Matrix xi = to_matrix(PauliWord::from_string("XI"));
  CHECK(xi.rows() == 4);
  CHECK(xi(0, 2) == Complex(1, 0));
  CHECK(xi(1, 3) == Complex(1, 0));
  CHECK(xi(0, 0) == Complex(0, 0));

  for (int i = 1; i < basis_size(3); ++i) {
    CHECK(std::abs(to_matrix(PauliWord::from_index(3, i)).trace()) == 0.0);
  }
}

TEST_CASE("orthogonality of the word basis at n <= 3") {
  for (int n = 1; n <= 3; ++n) {
    const int d = dim_of(n);
    for (int a = 0; a < basis_size(n); ++a) {
      Matrix ma = to_matrix(PauliWord::from_index(n, a));
      for (int b = 0; b < basis_size(n); ++b) {
        Matrix mb = to_matrix(PauliWord::from_index(n, b));
        Complex tr = (ma * mb).trace() / static_cast<double>(d);
        CHECK(tr == (a == b ? Complex(1, 0) : Complex(0, 0)));
      }
    }
  }
}

TEST_CASE("decompose basics") {
  Matrix xi = to_matrix(PauliWord::from_string("XI"));
  PauliVector v = decompose(xi, 2);
  for (int i = 0; i < 16; ++i) {
    CHECK(v[i] == doctest::Approx(i == PauliWord::from_string("XI").index() ? 1.0 : 0.0)
                      .epsilon(1e-14));
  }
  PauliVector zero = decompose(Matrix::Zero(4, 4), 2);
  CHECK(zero.coeffs.cwiseAbs().maxCoeff() == 0.0);

  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(decompose(bad, 1), std::invalid_argument);
}

TEST_CASE("decompose round trip and Parseval on random Hermitians") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    Matrix a = random_traceless_hermitian(n, rng);
    PauliVector v = decompose(a, n);
    CHECK(hs_norm(compose(v) - a) < 1e-12);
    const double parseval = v.coeffs.squaredNorm();
    const double hs = (a * a).trace().real() / dim_of(n);
    CHECK(parseval == doctest::Approx(hs).epsilon(1e-12));
  }
}

TEST_CASE("split into easy and hard parts") {
  PenaltyMetric metric = PenaltyMetric::standard(3, 64.0);
  Matrix x1 = to_matrix(PauliWord::from_string("XII"));
  Matrix zzz = to_matrix(PauliWord::from_string("ZZZ"));
  auto [hp, hq] = split_PQ(x1 + zzz, metric);
  CHECK(hs_norm(hp - x1) < 1e-13);
  CHECK(hs_norm(hq - zzz) < 1e-13);

  Matrix ising = to_matrix(PauliWord::from_string("ZZI")) + to_matrix(PauliWord::from_string("IXX"));
  auto [p2, q2] = split_PQ(ising, metric);
  CHECK(hs_norm(q2) == 0.0);

  Rng rng(3);
  Matrix h = random_traceless_hermitian(3, rng);
  auto [hp3, hq3] = split_PQ(h, metric);
  CHECK(hs_norm(hp3 + hq3 - h) < 1e-12);
}

TEST_CASE("conjugation coefficient matrix is orthogonal") {
  Rng rng(11);
  Matrix u = haar_unitary(8, rng);
  RMatrix o = conjugation_coeff_matrix(u, 3);
  CHECK((o.transpose() * o - RMatrix::Identity(63, 63)).cwiseAbs().maxCoeff() < 1e-12);
}
