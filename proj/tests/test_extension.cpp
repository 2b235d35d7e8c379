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

#include "qcgeo/extension.hpp"

#include "doctest.h"
#include "qcgeo/pauli.hpp"
#include "qcgeo/random.hpp"

using namespace qcgeo;

namespace {

// Ancilla-sector unitary fixing |0>, embedded as I_n (x) W.
Matrix ancilla_rotation(int n, int m, Rng& rng) {
  const int da = dim_of(m);
  Matrix w = Matrix::Identity(da, da);
  if (da > 1) {
    Matrix sub = haar_unitary(da - 1, rng);
    w.block(1, 1, da - 1, da - 1) = sub;
  }
  const int dn = dim_of(n);
  Matrix out = Matrix::Zero(dn * da, dn * da);
  for (int x = 0; x < dn; ++x) out.block(x * da, x * da, da, da) = w;
  return out;
}

}  // namespace

TEST_CASE("identity extends to the identity") {
  Matrix um = canonical_extension(Matrix::Identity(2, 2), 1, 1);
  CHECK((um - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single-qubit X with one ancilla, exhaustive case analysis") {
  Matrix x = to_matrix(PauliWord::from_string("X"));
  Matrix um = canonical_extension(x, 1, 1);
  // basis index = x*4 + y*2 + z
  for (int xi = 0; xi < 2; ++xi) {
    for (int y = 0; y < 2; ++y) {
      for (int z = 0; z < 2; ++z) {
        CVector in = CVector::Zero(8);
        in(xi * 4 + y * 2 + z) = 1.0;
        CVector out = um * in;
        CVector expect = CVector::Zero(8);
        if (y == 0) {
          expect((1 - xi) * 4 + y * 2 + z) = 1.0;  // X (and X^dag = X) flips x
        } else {
          expect(xi * 4 + y * 2 + z) = 1.0;
        }
        CHECK((out - expect).cwiseAbs().maxCoeff() < 1e-14);
      }
    }
  }
}

TEST_CASE("canonical extensions are special extensions") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 2;
    const int m = trial % 3;
    Matrix u = haar_unitary(dim_of(n), rng);
    Matrix um = canonical_extension(u, n, m);
    CHECK(operator_norm(um.adjoint() * um - Matrix::Identity(um.rows(), um.rows())) < 1e-10);
    ExtensionCheck chk = special_extension_check(um, u, n, m + 1);
    CHECK(chk.is_extension);
    CHECK(chk.is_special);
  }
}

TEST_CASE("sector preservation away from the zero ancilla") {
  Rng rng(9);
  Matrix u = haar_unitary(4, rng);
  const int n = 2, m = 2;
  Matrix um = canonical_extension(u, n, m);
  const int tail = dim_of(m + 1);
  for (int x = 0; x < dim_of(n); ++x) {
    for (int y = 1; y < dim_of(m); ++y) {
      for (int z = 0; z < 2; ++z) {
        CVector in = CVector::Zero(um.rows());
        in(x * tail + y * 2 + z) = 1.0;
        CVector out = um * in;
        CHECK((out - in).cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }
}

TEST_CASE("the circuit is independent of the special extension used") {
  Rng rng(11);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 1 + trial % 2;
    const int m = 1 + trial % 2;
    Matrix u = haar_unitary(dim_of(n), rng);
    // first special extension: U (x) I
    Matrix v1 = Matrix::Zero(dim_of(n + m), dim_of(n + m));
    for (int a = 0; a < dim_of(m); ++a) {
      for (int r = 0; r < dim_of(n); ++r) {
        for (int c = 0; c < dim_of(n); ++c) v1(r * dim_of(m) + a, c * dim_of(m) + a) = u(r, c);
      }
    }
    // second: conjugated by an ancilla rotation fixing |0>
    Matrix w = ancilla_rotation(n, m, rng);
    Matrix v2 = w * v1 * w.adjoint();
    CHECK(special_extension_check(v2, u, n, m).is_special);

    Matrix c1 = extension_circuit(v1, n, m);
    Matrix c2 = extension_circuit(v2, n, m);
    CHECK(operator_norm(c1 - c2) < 1e-10);
    CHECK(operator_norm(c1 - canonical_extension(u, n, m)) < 1e-10);
  }
}

TEST_CASE("zero-overlap lemma for special extensions") {
  Rng rng(13);
  const int n = 2, m = 1;
  Matrix u = haar_unitary(4, rng);
  Matrix v = Matrix::Zero(8, 8);
  for (int a = 0; a < 2; ++a) {
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) v(r * 2 + a, c * 2 + a) = u(r, c);
    }
  }
  Matrix w = ancilla_rotation(n, m, rng);  // trivial for m = 1 (fixes both states? no: 2-dim)
  // for m = 1 the only |0>-fixing rotations are phases on |1>; apply one
  Matrix phase = Matrix::Identity(8, 8);
  for (int x = 0; x < 4; ++x) phase(x * 2 + 1, x * 2 + 1) = Complex(0, 1);
  v = phase * v * phase.adjoint();
  for (int x = 0; x < 4; ++x) {
    for (int y = 1; y < 2; ++y) {
      CVector in = CVector::Zero(8);
      in(x * 2 + y) = 1.0;
      CVector out = v * in;
      for (int xp = 0; xp < 4; ++xp) {
        CHECK(std::abs(out(xp * 2 + 0)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("extension recognition") {
  Rng rng(15);
  Matrix u = haar_unitary(4, rng);
  const int n = 2, m = 1;

  Matrix v = Matrix::Zero(8, 8);
  for (int a = 0; a < 2; ++a) {
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) v(r * 2 + a, c * 2 + a) = u(r, c);
    }
  }
  ExtensionCheck chk = special_extension_check(v, u, n, m);
  CHECK(chk.is_extension);
  CHECK(chk.is_special);
  REQUIRE(chk.ancilla_state.has_value());
  CHECK(std::abs((*chk.ancilla_state)(0) - Complex(1, 0)) < 1e-12);

  // U (x) W with W|0> = |1>: an extension, but not special
  Matrix w(2, 2);
  w << 0, 1, 1, 0;
  Matrix vw = Matrix::Zero(8, 8);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) vw(r * 2 + a, c * 2 + b) = u(r, c) * w(a, b);
      }
    }
  }
  chk = special_extension_check(vw, u, n, m);
  CHECK(chk.is_extension);
  CHECK_FALSE(chk.is_special);
  REQUIRE(chk.ancilla_state.has_value());
  CHECK(std::abs((*chk.ancilla_state)(1) - Complex(1, 0)) < 1e-12);

  // CNOT leaks the input into the ancilla: not an extension of the identity
  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(3, 2) = cnot(2, 3) = 1.0;
  chk = special_extension_check(cnot, Matrix::Identity(2, 2), 1, 1);
  CHECK_FALSE(chk.is_extension);
}

TEST_CASE("boolean function unitaries") {
  BooleanUnitaries trivial = boolean_unitaries(std::string("0000"));
  CHECK((trivial.u_f - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((trivial.v_f - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  BooleanUnitaries andf = boolean_unitaries(std::string("0001"));
  Matrix toffoli = Matrix::Identity(8, 8);
  toffoli(6, 6) = toffoli(7, 7) = 0.0;
  toffoli(6, 7) = toffoli(7, 6) = 1.0;
  CHECK((andf.u_f - toffoli).cwiseAbs().maxCoeff() == 0.0);

  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    std::string bits(8, '0');
    for (auto& c : bits) c = rng.uniform() < 0.5 ? '0' : '1';
    BooleanUnitaries bu = boolean_unitaries(bits);
    CHECK((bu.v_f * bu.v_f - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);
    // exact permutation entries
    for (int r = 0; r < bu.u_f.rows(); ++r) {
      double row_sum = 0.0;
      for (int c = 0; c < bu.u_f.cols(); ++c) {
        const Complex e = bu.u_f(r, c);
        CHECK((e == Complex(0, 0) || e == Complex(1, 0)));
        row_sum += e.real();
      }
      CHECK(row_sum == 1.0);
    }
  }
  CHECK_THROWS_AS(boolean_unitaries(std::string("001")), std::invalid_argument);
}

TEST_CASE("size and unitarity guards") {
  Rng rng(19);
  Matrix u = haar_unitary(4, rng);
  CHECK_THROWS_AS(canonical_extension(u, 2, 8), std::invalid_argument);
  Matrix bad = 2.0 * u;
  CHECK_THROWS_AS(canonical_extension(bad, 2, 1), std::invalid_argument);
}
