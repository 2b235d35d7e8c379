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

#include "qcgeo/types.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qcgeo {

double hs_norm(const Matrix& a) {
  return a.norm() / std::sqrt(static_cast<double>(a.rows()));
}

double operator_norm(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix herm_expm(const Matrix& h, Complex factor) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const auto& vals = es.eigenvalues();
  const Matrix& vecs = es.eigenvectors();
  CVector phases(vals.size());
  for (Eigen::Index j = 0; j < vals.size(); ++j) {
    phases(j) = std::exp(factor * vals(j));
  }
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

Matrix polar_unitary(const Matrix& u) {
  Eigen::JacobiSVD<Matrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace qcgeo
