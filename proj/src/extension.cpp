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

#include <cmath>
#include <stdexcept>

namespace qcgeo {

namespace {

void check_unitary(const Matrix& u, const char* who) {
  const int d = static_cast<int>(u.rows());
  if (u.cols() != d) throw std::invalid_argument(std::string(who) + ": matrix is not square");
  if (operator_norm(u.adjoint() * u - Matrix::Identity(d, d)) > 1e-10) {
    throw std::invalid_argument(std::string(who) + ": matrix is not unitary");
  }
}

}  // namespace

Matrix canonical_extension(const Matrix& u, int n, int m) {
  if (n < 1 || m < 0 || n + m + 1 > 10) {
    throw std::invalid_argument("canonical_extension: register size out of range (n+m+1 <= 10)");
  }
  if (u.rows() != dim_of(n)) {
    throw std::invalid_argument("canonical_extension: U does not act on n qubits");
  }
  check_unitary(u, "canonical_extension");

  const int dx = dim_of(n);
  const int dtotal = dim_of(n + m + 1);
  const int tail = dim_of(m + 1);  // (y,z) block size
  Matrix um = Matrix::Identity(dtotal, dtotal);
  // Basis index = x * 2^{m+1} + y * 2 + z.
  for (int xo = 0; xo < dx; ++xo) {
    for (int xi = 0; xi < dx; ++xi) {
      um(xo * tail + 0, xi * tail + 0) = u(xo, xi);               // y = 0, z = 0: U
      um(xo * tail + 1, xi * tail + 1) = std::conj(u(xi, xo));    // y = 0, z = 1: U^dag
    }
  }
  return um;
}

ExtensionCheck special_extension_check(const Matrix& v, const Matrix& u, int n, int m) {
  if (v.rows() != dim_of(n + m) || u.rows() != dim_of(n)) {
    throw std::invalid_argument("special_extension_check: dimension mismatch");
  }
  check_unitary(v, "special_extension_check");
  check_unitary(u, "special_extension_check");

  const int dx = dim_of(n);
  const int da = dim_of(m);
  // Column x of the restricted map, reshaped so row blocks are x' and
  // columns are ancilla states: should equal (U e_x) A^T for a common A.
  // Least-squares A with the unit vectors u_x as weights.
  CVector a = CVector::Zero(da);
  std::vector<Matrix> blocks(dx);
  for (int x = 0; x < dx; ++x) {
    CVector w = v.col(x * da);  // |x>|0...0>
    Matrix mx(dx, da);
    for (int xp = 0; xp < dx; ++xp) {
      for (int ap = 0; ap < da; ++ap) mx(xp, ap) = w(xp * da + ap);
    }
    blocks[x] = mx;
    a += (u.col(x).adjoint() * mx).transpose();
  }
  a /= static_cast<double>(dx);

  ExtensionCheck out;
  double worst = 0.0;
  for (int x = 0; x < dx; ++x) {
    Matrix expect = u.col(x) * a.transpose();
    worst = std::max(worst, (blocks[x] - expect).cwiseAbs().maxCoeff());
  }
  out.max_deviation = worst;
  out.is_extension = worst <= 1e-10;
  if (out.is_extension) {
    out.ancilla_state = a;
    CVector zero = CVector::Zero(da);
    zero(0) = 1.0;
    out.is_special = (a - zero).norm() <= 1e-10;
  }
  return out;
}

Matrix extension_circuit(const Matrix& v, int n, int m) {
  if (v.rows() != dim_of(n + m)) {
    throw std::invalid_argument("extension_circuit: V does not act on n+m qubits");
  }
  check_unitary(v, "extension_circuit");
  const int dv = dim_of(n + m);
  const int dtotal = dim_of(n + m + 1);

  // Gate 1/3: V (V^dag) on the (x,y) register when z = 0.
  auto controlled_on_z0 = [&](const Matrix& g) {
    Matrix out = Matrix::Identity(dtotal, dtotal);
    for (int r = 0; r < dv; ++r) {
      for (int c = 0; c < dv; ++c) out(r * 2, c * 2) = g(r, c);
    }
    return out;
  };
  // Gate 2/4: X on z when the whole y register is |0>.
  Matrix flip = Matrix::Identity(dtotal, dtotal);
  const int da = dim_of(m);
  for (int x = 0; x < dim_of(n); ++x) {
    const int base = (x * da + 0) * 2;
    flip(base, base) = 0;
    flip(base + 1, base + 1) = 0;
    flip(base, base + 1) = 1;
    flip(base + 1, base) = 1;
  }
  Matrix g1 = controlled_on_z0(v);
  Matrix g3 = controlled_on_z0(v.adjoint());
  return flip * g3 * flip * g1;
}

BooleanUnitaries boolean_unitaries(const std::vector<int>& truth_table) {
  const size_t size = truth_table.size();
  int n = 0;
  while ((size_t{1} << n) < size) ++n;
  if ((size_t{1} << n) != size || size == 0) {
    throw std::invalid_argument("boolean_unitaries: truth table length must be a power of two");
  }
  for (int b : truth_table) {
    if (b != 0 && b != 1) throw std::invalid_argument("boolean_unitaries: entries must be bits");
  }
  BooleanUnitaries out;
  const int dx = dim_of(n);
  out.u_f = Matrix::Zero(2 * dx, 2 * dx);
  for (int x = 0; x < dx; ++x) {
    const int f = truth_table[x];
    out.u_f(x * 2 + f, x * 2 + 0) = 1.0;
    out.u_f(x * 2 + (1 - f), x * 2 + 1) = 1.0;
  }
  out.v_f = Matrix::Zero(dx, dx);
  for (int x = 0; x < dx; ++x) out.v_f(x, x) = truth_table[x] ? -1.0 : 1.0;
  return out;
}

BooleanUnitaries boolean_unitaries(const std::string& truth_table_bits) {
  std::vector<int> table;
  table.reserve(truth_table_bits.size());
  for (char c : truth_table_bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("boolean_unitaries: truth table must be 0/1 characters");
    }
    table.push_back(c - '0');
  }
  return boolean_unitaries(table);
}

}  // namespace qcgeo
