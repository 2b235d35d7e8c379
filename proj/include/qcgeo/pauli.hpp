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

#include <cstdint>
#include <string>
#include <vector>

#include "qcgeo/types.hpp"

namespace qcgeo {

/// A length-n word over {I,X,Y,Z}. Words are enumerated in base-4
/// lexicographic order (I=0, X=1, Y=2, Z=3) with the leftmost qubit most
/// significant; that index is the canonical layout used for coefficient
/// vectors, CSV columns and propagator rows throughout.
class PauliWord {
 public:
  PauliWord() = default;
  explicit PauliWord(std::vector<uint8_t> letters);

  static PauliWord from_string(const std::string& s);
  static PauliWord from_index(int n, int index);
  static PauliWord identity(int n);

  int n() const { return static_cast<int>(letters_.size()); }
  uint8_t letter(int i) const { return letters_[i]; }
  int weight() const;
  int index() const;
  std::string str() const;
  bool is_identity() const { return weight() == 0; }

  bool operator==(const PauliWord& other) const { return letters_ == other.letters_; }

 private:
  std::vector<uint8_t> letters_;
};

struct PauliProduct {
  int phase_exponent = 0;  // product phase is i^phase_exponent
  PauliWord word;
  Complex phase() const;
};

/// Letterwise product; matrix_of(a)*matrix_of(b) == phase * matrix_of(word)
/// exactly. Throws on length mismatch.
PauliProduct pauli_product(const PauliWord& a, const PauliWord& b);

/// True iff the number of sites where both letters are non-identity and
/// differ is even. Throws on length mismatch.
bool commutes(const PauliWord& a, const PauliWord& b);

/// Dense realization as a Kronecker product of single-qubit Paulis.
Matrix to_matrix(const PauliWord& w);

/// Real Pauli expansion coefficients of a Hermitian operator, indexed
/// canonically; coeffs(sigma) = tr(A sigma)/2^n.
struct PauliVector {
  int n = 0;
  RVector coeffs;  // 4^n entries

  double& operator[](int i) { return coeffs[i]; }
  double operator[](int i) const { return coeffs[i]; }
};

/// Weight of the canonically indexed word (number of nonzero base-4 digits).
int word_weight(int n, int index);

/// Full complex Pauli spectrum of an arbitrary 2^n x 2^n matrix,
/// c_sigma = tr(A sigma)/2^n, computed by the qubit-wise fast transform.
CVector pauli_spectrum(const Matrix& a, int n);

/// Inverse of pauli_spectrum.
Matrix from_pauli_spectrum(const CVector& coeffs, int n);

/// Decompose a Hermitian operator into real Pauli coefficients. Throws if
/// max |A - A^dag| entry exceeds 1e-9.
PauliVector decompose(const Matrix& a, int n);

/// Rebuild the dense operator from real coefficients.
Matrix compose(const PauliVector& v);

/// Scale every Pauli coefficient of `a` by `weights` (a 4^n vector). This is
/// how the diagonal superoperators (projectors, G, F) act.
Matrix scale_pauli_diag(const Matrix& a, const RVector& weights, int n);

/// Real coefficient vector over the 4^n - 1 non-identity words (canonical
/// order with the identity entry dropped); the layout used by Jacobi
/// propagator blocks.
RVector traceless_coeffs(const Matrix& a, int n);
Matrix from_traceless_coeffs(const RVector& c, int n);

/// Real matrix O with O * traceless_coeffs(A) = traceless_coeffs(U A U^dag).
/// Orthogonal, since conjugation preserves the trace inner product.
RMatrix conjugation_coeff_matrix(const Matrix& u, int n);

}  // namespace qcgeo
