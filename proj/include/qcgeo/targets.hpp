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

#include "qcgeo/random.hpp"
#include "qcgeo/types.hpp"

namespace qcgeo {

/// Quantum Fourier transform on n qubits, U[k][j] = exp(2 pi i j k / 2^n)/sqrt(2^n).
Matrix qft_unitary(int n);

/// Transverse Ising Hamiltonian sum_j Z_j Z_{j+1} + h sum_j X_j. The default
/// ring couples qubit n back to qubit 1; open drops the wrap-around term.
Matrix ising_hamiltonian(int n, double h, bool periodic = true);

}  // namespace qcgeo
