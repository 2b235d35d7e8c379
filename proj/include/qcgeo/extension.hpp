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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcgeo/types.hpp"

namespace qcgeo {

/// Canonical ancilla extension U_m on n + m + 1 qubits, register layout
/// (x: n)(y: m)(z: 1) most-significant-first: applies U on the y=0,z=0
/// sector, U^dag on the y=0,z=1 sector, and the identity elsewhere.
/// Dense construction; throws when n + m + 1 > 10 or U is not unitary.
Matrix canonical_extension(const Matrix& u, int n, int m);

struct ExtensionCheck {
  bool is_extension = false;
  bool is_special = false;
  std::optional<CVector> ancilla_state;
  double max_deviation = 0.0;
};

/// Does V (on n+m qubits) act as V |psi>|0> = (U |psi>) |A> for a common
/// ancilla state |A>? Special additionally requires |A> = |0> (phase
/// included). Tolerance 1e-10 per basis state.
ExtensionCheck special_extension_check(const Matrix& v, const Matrix& u, int n, int m);

/// The four-gate circuit that realizes the canonical extension from any
/// special extension V of U: controlled-V / flag flip on y=0 / controlled-
/// V^dag / flag flip, with the V's applied only when the flag is 0.
Matrix extension_circuit(const Matrix& v, int n, int m);

struct BooleanUnitaries {
  Matrix u_f;  // |x>|z> -> |x>|z xor f(x)>, a permutation matrix
  Matrix v_f;  // |x> -> (-1)^f(x) |x>, diagonal +-1
};

/// Truth table given as 2^n bits (0/1 characters or ints).
BooleanUnitaries boolean_unitaries(const std::vector<int>& truth_table);
BooleanUnitaries boolean_unitaries(const std::string& truth_table_bits);

}  // namespace qcgeo
