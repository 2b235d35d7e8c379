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

#include <complex>
#include <Eigen/Dense>

namespace qcgeo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Hilbert space dimension 2^n.
inline int dim_of(int n) { return 1 << n; }

/// Pauli basis size 4^n.
inline int basis_size(int n) { return 1 << (2 * n); }

/// Frobenius norm scaled as sqrt(tr(A^dag A)/2^n); the natural norm in the
/// bi-invariant (q=1) metric when A is Hermitian.
double hs_norm(const Matrix& a);

/// Largest singular value.
double operator_norm(const Matrix& a);

/// Commutator [a,b] = ab - ba.
Matrix commutator(const Matrix& a, const Matrix& b);

/// exp(factor * H) for Hermitian H via eigendecomposition.
Matrix herm_expm(const Matrix& h, Complex factor);

/// Nearest unitary in Frobenius norm (polar factor).
Matrix polar_unitary(const Matrix& u);

}  // namespace qcgeo
