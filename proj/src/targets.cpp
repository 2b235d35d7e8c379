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

#include "qcgeo/targets.hpp"

#include <cmath>
#include <stdexcept>

#include "qcgeo/pauli.hpp"

namespace qcgeo {

Matrix qft_unitary(int n) {
  const int d = dim_of(n);
  Matrix u(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  const double step = 2.0 * 3.14159265358979323846 / d;
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      const double angle = step * ((static_cast<long long>(j) * k) % d);
      u(k, j) = norm * Complex(std::cos(angle), std::sin(angle));
    }
  }
  return u;
}

Matrix ising_hamiltonian(int n, double h, bool periodic) {
  if (n < 2) throw std::invalid_argument("ising_hamiltonian: need at least 2 qubits");
  PauliVector v;
  v.n = n;
  v.coeffs = RVector::Zero(basis_size(n));
  auto add_word = [&](const std::string& s, double c) {
    v.coeffs(PauliWord::from_string(s).index()) += c;
  };
  for (int j = 0; j + 1 < n; ++j) {
    std::string w(n, 'I');
    w[j] = 'Z';
    w[j + 1] = 'Z';
    add_word(w, 1.0);
  }
  if (periodic && n > 2) {
    std::string w(n, 'I');
    w[0] = 'Z';
    w[n - 1] = 'Z';
    add_word(w, 1.0);
  }
  for (int j = 0; j < n; ++j) {
    std::string w(n, 'I');
    w[j] = 'X';
    add_word(w, h);
  }
  return compose(v);
}

}  // namespace qcgeo
