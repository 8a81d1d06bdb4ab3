// Copyright 2026 The designet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "designet/kernels.hpp"

#include <stdexcept>

namespace designet {

void matvec(const CMatrix &m, const Complex *x, Complex *y) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Complex *row = m.data() + r * cols;
    Complex acc(0.0, 0.0);
    for (Eigen::Index c = 0; c < cols; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
}

void matvec_adjoint(const CMatrix &m, const Complex *x, Complex *y) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index r = 0; r < cols; ++r) {
    // Row r of M^dagger is the conjugate of column r of M (strided for a
    // row-major M).
    const Complex *col = m.data() + r;
    Complex acc(0.0, 0.0);
    for (Eigen::Index c = 0; c < rows; ++c)
      acc += std::conj(col[c * cols]) * x[c];
    y[r] = acc;
  }
}

namespace {

inline void gate_on_column(Complex *col, const Eigen::Matrix4cd &gate,
                           Eigen::Index d, uint64_t hi_mask,
                           uint64_t lo_mask) {
  for (Eigen::Index base = 0; base < d; ++base) {
    if (base & (hi_mask | lo_mask)) continue;
    const Eigen::Index i0 = base;
    const Eigen::Index i1 = base | lo_mask;
    const Eigen::Index i2 = base | hi_mask;
    const Eigen::Index i3 = base | hi_mask | lo_mask;
    const Complex a0 = col[i0], a1 = col[i1], a2 = col[i2], a3 = col[i3];
    col[i0] = gate(0, 0) * a0 + gate(0, 1) * a1 + gate(0, 2) * a2 +
              gate(0, 3) * a3;
    col[i1] = gate(1, 0) * a0 + gate(1, 1) * a1 + gate(1, 2) * a2 +
              gate(1, 3) * a3;
    col[i2] = gate(2, 0) * a0 + gate(2, 1) * a1 + gate(2, 2) * a2 +
              gate(2, 3) * a3;
    col[i3] = gate(3, 0) * a0 + gate(3, 1) * a1 + gate(3, 2) * a2 +
              gate(3, 3) * a3;
  }
}

inline void gate_masks(int n_qubits, int site, uint64_t &hi_mask,
                       uint64_t &lo_mask) {
  if (site < 0 || site + 1 >= n_qubits)
    throw std::out_of_range("two-qubit gate site out of range");
  // Site 0 is the MSB; the gate's 2-bit row index is (bit of site, bit of
  // site+1), matching kron order with site `site` as the left factor.
  hi_mask = uint64_t{1} << (n_qubits - 1 - site);
  lo_mask = uint64_t{1} << (n_qubits - 2 - site);
}

}  // namespace

void apply_two_qubit_gate_columns(Eigen::MatrixXcd &m,
                                  const Eigen::Matrix4cd &gate, int n_qubits,
                                  int site) {
  uint64_t hi_mask = 0, lo_mask = 0;
  gate_masks(n_qubits, site, hi_mask, lo_mask);
  const Eigen::Index d = m.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    gate_on_column(m.data() + c * d, gate, d, hi_mask, lo_mask);
}

namespace ref {

void matvec_serial(const CMatrix &m, const Complex *x, Complex *y) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Complex *row = m.data() + r * cols;
    Complex acc(0.0, 0.0);
    for (Eigen::Index c = 0; c < cols; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
}

void matvec_adjoint_serial(const CMatrix &m, const Complex *x, Complex *y) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  for (Eigen::Index r = 0; r < cols; ++r) {
    const Complex *col = m.data() + r;
    Complex acc(0.0, 0.0);
    for (Eigen::Index c = 0; c < rows; ++c)
      acc += std::conj(col[c * cols]) * x[c];
    y[r] = acc;
  }
}

void apply_two_qubit_gate_columns_serial(Eigen::MatrixXcd &m,
                                         const Eigen::Matrix4cd &gate,
                                         int n_qubits, int site) {
  uint64_t hi_mask = 0, lo_mask = 0;
  gate_masks(n_qubits, site, hi_mask, lo_mask);
  const Eigen::Index d = m.rows();
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    gate_on_column(m.data() + c * d, gate, d, hi_mask, lo_mask);
}

}  // namespace ref

}  // namespace designet
