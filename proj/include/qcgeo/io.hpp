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

#include <string>
#include <vector>

#include "qcgeo/pauli.hpp"
#include "qcgeo/types.hpp"

namespace qcgeo {

/// Format a double with 17 significant digits (round-trip exact).
std::string format_g17(double x);

/// Dense complex matrix file: first line the dimension, then one row per
/// line as interleaved "re im" pairs, 17 significant digits, row-major.
void write_unitary_file(const std::string& path, const Matrix& u);
Matrix read_unitary_file(const std::string& path);

/// PauliVector CSV: one "word,coefficient" row per basis word.
void write_pauli_vector_csv(const std::string& path, const PauliVector& v);
PauliVector read_pauli_vector_csv(const std::string& path, int n);

}  // namespace qcgeo
