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

#include "qcgeo/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qcgeo {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_unitary_file(const std::string& path, const Matrix& u) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << u.rows() << "\n";
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      if (c) out << " ";
      out << format_g17(u(r, c).real()) << " " << format_g17(u(r, c).imag());
    }
    out << "\n";
  }
}

Matrix read_unitary_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  int d = 0;
  in >> d;
  if (d <= 0 || d > 4096) throw std::runtime_error("bad dimension in unitary file: " + path);
  Matrix u(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      double re, im;
      if (!(in >> re >> im)) throw std::runtime_error("truncated unitary file: " + path);
      u(r, c) = Complex(re, im);
    }
  }
  return u;
}

void write_pauli_vector_csv(const std::string& path, const PauliVector& v) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "word,coefficient\n";
  for (int i = 0; i < basis_size(v.n); ++i) {
    out << PauliWord::from_index(v.n, i).str() << "," << format_g17(v.coeffs(i)) << "\n";
  }
}

PauliVector read_pauli_vector_csv(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  PauliVector v;
  v.n = n;
  v.coeffs = RVector::Zero(basis_size(n));
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("malformed row in " + path);
    PauliWord w = PauliWord::from_string(line.substr(0, comma));
    if (w.n() != n) throw std::runtime_error("wrong word length in " + path);
    v.coeffs(w.index()) = std::stod(line.substr(comma + 1));
  }
  return v;
}

}  // namespace qcgeo
