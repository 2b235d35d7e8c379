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

#include <array>
#include <stdexcept>

namespace qcgeo {

namespace {

constexpr char kLetterChars[4] = {'I', 'X', 'Y', 'Z'};

// Single-qubit products a*b: resulting letter and phase exponent k in i^k.
constexpr uint8_t kProdLetter[4][4] = {
    {0, 1, 2, 3},
    {1, 0, 3, 2},
    {2, 3, 0, 1},
    {3, 2, 1, 0},
};
constexpr uint8_t kProdPhase[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},
    {0, 3, 0, 1},
    {0, 1, 3, 0},
};

const Matrix& single_qubit_pauli(int letter) {
  static const std::array<Matrix, 4> mats = [] {
    std::array<Matrix, 4> m;
    m[0] = Matrix::Identity(2, 2);
    m[1] = (Matrix(2, 2) << 0, 1, 1, 0).finished();
    m[2] = (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
    m[3] = (Matrix(2, 2) << 1, 0, 0, -1).finished();
    return m;
  }();
  return mats[letter];
}

void check_same_length(const PauliWord& a, const PauliWord& b) {
  if (a.n() != b.n()) {
    throw std::invalid_argument("PauliWord length mismatch");
  }
}

}  // namespace

PauliWord::PauliWord(std::vector<uint8_t> letters) : letters_(std::move(letters)) {
  for (uint8_t l : letters_) {
    if (l > 3) throw std::invalid_argument("Pauli letter out of range");
  }
}

PauliWord PauliWord::from_string(const std::string& s) {
  std::vector<uint8_t> letters;
  letters.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case 'I': letters.push_back(0); break;
      case 'X': letters.push_back(1); break;
      case 'Y': letters.push_back(2); break;
      case 'Z': letters.push_back(3); break;
      default: throw std::invalid_argument("invalid Pauli letter in \"" + s + "\"");
    }
  }
  return PauliWord(std::move(letters));
}

PauliWord PauliWord::from_index(int n, int index) {
  if (index < 0 || index >= basis_size(n)) {
    throw std::invalid_argument("Pauli word index out of range");
  }
  std::vector<uint8_t> letters(n);
  for (int i = n - 1; i >= 0; --i) {
    letters[i] = static_cast<uint8_t>(index & 3);
    index >>= 2;
  }
  return PauliWord(std::move(letters));
}

PauliWord PauliWord::identity(int n) { return PauliWord(std::vector<uint8_t>(n, 0)); }

int PauliWord::weight() const {
  int w = 0;
  for (uint8_t l : letters_) w += (l != 0);
  return w;
}

int PauliWord::index() const {
  int idx = 0;
  for (uint8_t l : letters_) idx = (idx << 2) | l;
  return idx;
}

std::string PauliWord::str() const {
  std::string s(letters_.size(), 'I');
  for (size_t i = 0; i < letters_.size(); ++i) s[i] = kLetterChars[letters_[i]];
  return s;
}

Complex PauliProduct::phase() const {
  switch (phase_exponent & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

PauliProduct pauli_product(const PauliWord& a, const PauliWord& b) {
  check_same_length(a, b);
  std::vector<uint8_t> letters(a.n());
  int phase = 0;
  for (int i = 0; i < a.n(); ++i) {
    letters[i] = kProdLetter[a.letter(i)][b.letter(i)];
    phase += kProdPhase[a.letter(i)][b.letter(i)];
  }
  return {phase & 3, PauliWord(std::move(letters))};
}

bool commutes(const PauliWord& a, const PauliWord& b) {
  check_same_length(a, b);
  int clashes = 0;
  for (int i = 0; i < a.n(); ++i) {
    uint8_t la = a.letter(i), lb = b.letter(i);
    if (la != 0 && lb != 0 && la != lb) ++clashes;
  }
  return (clashes & 1) == 0;
}

Matrix to_matrix(const PauliWord& w) {
  Matrix m = Matrix::Identity(1, 1);
  for (int i = 0; i < w.n(); ++i) {
    // leftmost letter is the outermost Kronecker factor
    const Matrix& p = single_qubit_pauli(w.letter(i));
    Matrix next(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        next.block(r * 2, c * 2, 2, 2) = m(r, c) * p;
      }
    }
    m.swap(next);
  }
  return m;
}

int word_weight(int n, int index) {
  int w = 0;
  for (int i = 0; i < n; ++i) {
    w += ((index >> (2 * i)) & 3) != 0;
  }
  return w;
}

namespace {

// Qubit-wise fast Pauli transform. Layout invariant after k processed
// qubits: idx = (w * m + r) * m + c with m = 2^(n-k), w the base-4 digits of
// the already-processed qubits (most significant first), and (r, c) the
// remaining row/column bits. Forward combines the leading bit pair of (r, c)
// into the next base-4 digit.
void fast_transform_forward(std::vector<Complex>& buf, std::vector<Complex>& tmp, int n) {
  int m = 1 << n;
  int words = 1;
  for (int k = 0; k < n; ++k) {
    const int h = m / 2;
    for (int w = 0; w < words; ++w) {
      for (int r = 0; r < h; ++r) {
        for (int c = 0; c < h; ++c) {
          const Complex a00 = buf[(w * m + r) * m + c];
          const Complex a01 = buf[(w * m + r) * m + (c + h)];
          const Complex a10 = buf[(w * m + (r + h)) * m + c];
          const Complex a11 = buf[(w * m + (r + h)) * m + (c + h)];
          const int base = w * 4;
          tmp[((base + 0) * h + r) * h + c] = a00 + a11;
          tmp[((base + 1) * h + r) * h + c] = a01 + a10;
          tmp[((base + 2) * h + r) * h + c] = kI * (a01 - a10);
          tmp[((base + 3) * h + r) * h + c] = a00 - a11;
        }
      }
    }
    buf.swap(tmp);
    m = h;
    words *= 4;
  }
}

void fast_transform_inverse(std::vector<Complex>& buf, std::vector<Complex>& tmp, int n) {
  int m = 1;
  int words = basis_size(n);
  for (int k = 0; k < n; ++k) {
    const int h = m;
    m *= 2;
    words /= 4;
    for (int w = 0; w < words; ++w) {
      for (int r = 0; r < h; ++r) {
        for (int c = 0; c < h; ++c) {
          const int base = w * 4;
          const Complex ci = buf[((base + 0) * h + r) * h + c];
          const Complex cx = buf[((base + 1) * h + r) * h + c];
          const Complex cy = buf[((base + 2) * h + r) * h + c];
          const Complex cz = buf[((base + 3) * h + r) * h + c];
          tmp[(w * m + r) * m + c] = ci + cz;
          tmp[(w * m + r) * m + (c + h)] = cx - kI * cy;
          tmp[(w * m + (r + h)) * m + c] = cx + kI * cy;
          tmp[(w * m + (r + h)) * m + (c + h)] = ci - cz;
        }
      }
    }
    buf.swap(tmp);
  }
}

std::vector<Complex>& scratch_a() {
  thread_local std::vector<Complex> buf;
  return buf;
}
std::vector<Complex>& scratch_b() {
  thread_local std::vector<Complex> buf;
  return buf;
}

}  // namespace

CVector pauli_spectrum(const Matrix& a, int n) {
  const int d = dim_of(n);
  if (a.rows() != d || a.cols() != d) {
    throw std::invalid_argument("pauli_spectrum: matrix size does not match qubit count");
  }
  auto& buf = scratch_a();
  auto& tmp = scratch_b();
  buf.resize(basis_size(n));
  tmp.resize(basis_size(n));
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) buf[r * d + c] = a(r, c);
  }
  fast_transform_forward(buf, tmp, n);
  CVector out(basis_size(n));
  const double norm = 1.0 / d;
  for (int i = 0; i < basis_size(n); ++i) out(i) = buf[i] * norm;
  return out;
}

Matrix from_pauli_spectrum(const CVector& coeffs, int n) {
  if (coeffs.size() != basis_size(n)) {
    throw std::invalid_argument("from_pauli_spectrum: wrong coefficient count");
  }
  auto& buf = scratch_a();
  auto& tmp = scratch_b();
  buf.resize(basis_size(n));
  tmp.resize(basis_size(n));
  for (int i = 0; i < basis_size(n); ++i) buf[i] = coeffs(i);
  fast_transform_inverse(buf, tmp, n);
  const int d = dim_of(n);
  Matrix out(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) out(r, c) = buf[r * d + c];
  }
  return out;
}

PauliVector decompose(const Matrix& a, int n) {
  const double herm_defect = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > 1e-9) {
    throw std::invalid_argument("decompose: input is not Hermitian (defect " +
                                std::to_string(herm_defect) + ")");
  }
  CVector c = pauli_spectrum(a, n);
  PauliVector v;
  v.n = n;
  v.coeffs = c.real();
  return v;
}

Matrix compose(const PauliVector& v) {
  return from_pauli_spectrum(v.coeffs.cast<Complex>(), v.n);
}

Matrix scale_pauli_diag(const Matrix& a, const RVector& weights, int n) {
  CVector c = pauli_spectrum(a, n);
  c.array() *= weights.array().cast<Complex>();
  return from_pauli_spectrum(c, n);
}

RVector traceless_coeffs(const Matrix& a, int n) {
  CVector c = pauli_spectrum(a, n);
  return c.tail(basis_size(n) - 1).real();
}

Matrix from_traceless_coeffs(const RVector& c, int n) {
  CVector full = CVector::Zero(basis_size(n));
  full.tail(basis_size(n) - 1) = c.cast<Complex>();
  return from_pauli_spectrum(full, n);
}

RMatrix conjugation_coeff_matrix(const Matrix& u, int n) {
  const int dim = basis_size(n) - 1;
  RMatrix o(dim, dim);
  for (int b = 0; b < dim; ++b) {
    Matrix sigma = to_matrix(PauliWord::from_index(n, b + 1));
    o.col(b) = traceless_coeffs(u * sigma * u.adjoint(), n);
  }
  return o;
}

}  // namespace qcgeo
