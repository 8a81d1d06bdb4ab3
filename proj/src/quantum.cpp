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

#include "designet/quantum.hpp"

#include <cmath>

#include "designet/kernels.hpp"

namespace designet {

namespace {

// Bit position of `site` in a basis-state index: site 0 is the MSB.
inline uint64_t site_mask(int n_qubits, int site) {
  return uint64_t{1} << (n_qubits - 1 - site);
}

void check_state_capacity(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("n_qubits must be >= 1");
  if (n_qubits > kMaxStateQubits)
    throw capacity_error("state of " + std::to_string(n_qubits) +
                         " qubits exceeds the dense-state limit of " +
                         std::to_string(kMaxStateQubits));
}

void check_same_dim(Eigen::Index a, Eigen::Index b) {
  if (a != b)
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a) +
                                " vs " + std::to_string(b));
}

}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  throw std::invalid_argument("bad Pauli value");
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
  }
  throw std::invalid_argument(std::string("bad Pauli letter '") + c + "'");
}

StateVector basis_state(int n_qubits, uint64_t index) {
  check_state_capacity(n_qubits);
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  if (index >= static_cast<uint64_t>(d))
    throw std::out_of_range("basis index out of range");
  StateVector psi{n_qubits, CVector::Zero(d)};
  psi.amps[static_cast<Eigen::Index>(index)] = Complex(1.0, 0.0);
  return psi;
}

StateVector random_state(int n_qubits, Rng &rng) {
  check_state_capacity(n_qubits);
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  StateVector psi{n_qubits, CVector(d)};
  for (Eigen::Index k = 0; k < d; ++k) psi.amps[k] = rng.complex_normal();
  psi.amps /= psi.amps.norm();
  return psi;
}

StateVector apply_pauli(const StateVector &psi, int site, Pauli label) {
  detail::check_site(psi, site);
  if (label == Pauli::I) return psi;
  const Eigen::Index d = psi.dim();
  const uint64_t mask = site_mask(psi.n_qubits, site);
  StateVector out{psi.n_qubits, CVector(d)};
  const Complex *in = psi.amps.data();
  Complex *dst = out.amps.data();
  switch (label) {
    case Pauli::X:
      for (Eigen::Index k = 0; k < d; ++k) dst[k] = in[k ^ mask];
      break;
    case Pauli::Y:
      // Y|0> = i|1>, Y|1> = -i|0>; as matrix elements Y[k, k^1]:
      // bit set -> +i, bit clear -> -i.
      for (Eigen::Index k = 0; k < d; ++k) {
        const Complex v = in[k ^ mask];
        dst[k] = (k & mask) ? Complex(-v.imag(), v.real())
                            : Complex(v.imag(), -v.real());
      }
      break;
    case Pauli::Z:
      for (Eigen::Index k = 0; k < d; ++k)
        dst[k] = (k & mask) ? -in[k] : in[k];
      break;
    default:
      break;
  }
  return out;
}

StateVector apply_pauli_string(const StateVector &psi, const PauliString &p) {
  if (p.n_qubits() != psi.n_qubits)
    throw std::invalid_argument("PauliString length " +
                                std::to_string(p.n_qubits()) +
                                " does not match state of " +
                                std::to_string(psi.n_qubits) + " qubits");
  // Fused single pass: out[k] = (-i)^{n_Y} * (-1)^{popcount(k & pmask)}
  // * in[k ^ flip], with flip the X|Y sites and pmask the Y|Z sites.
  uint64_t flip = 0;
  uint64_t pmask = 0;
  int n_y = 0;
  for (int s = 0; s < p.n_qubits(); ++s) {
    const uint64_t m = site_mask(psi.n_qubits, s);
    switch (p.labels[s]) {
      case Pauli::I: break;
      case Pauli::X: flip |= m; break;
      case Pauli::Y: flip |= m; pmask |= m; ++n_y; break;
      case Pauli::Z: pmask |= m; break;
    }
  }
  static const Complex kYPhase[4] = {
      {1, 0}, {0, -1}, {-1, 0}, {0, 1}};  // (-i)^n
  const Complex base = kYPhase[n_y & 3];
  const Eigen::Index d = psi.dim();
  StateVector out{psi.n_qubits, CVector(d)};
  const Complex *in = psi.amps.data();
  Complex *dst = out.amps.data();
  for (Eigen::Index k = 0; k < d; ++k) {
    const Complex v = in[k ^ flip];
    const bool neg = std::popcount(static_cast<uint64_t>(k) & pmask) & 1;
    dst[k] = neg ? -base * v : base * v;
  }
  return out;
}

StateVector apply_dense(const StateVector &psi, const DenseUnitary &u) {
  check_same_dim(psi.dim(), u.dim());
  StateVector out{psi.n_qubits, CVector(psi.dim())};
  matvec(u.mat, psi.amps.data(), out.amps.data());
  return out;
}

StateVector apply_dense_adjoint(const StateVector &psi,
                                const DenseUnitary &u) {
  check_same_dim(psi.dim(), u.dim());
  StateVector out{psi.n_qubits, CVector(psi.dim())};
  matvec_adjoint(u.mat, psi.amps.data(), out.amps.data());
  return out;
}

Complex inner(const StateVector &a, const StateVector &b) {
  check_same_dim(a.dim(), b.dim());
  return a.amps.dot(b.amps);  // Eigen's dot conjugates the left argument.
}

double norm(const StateVector &psi) { return psi.amps.norm(); }

DenseUnitary adjoint(const DenseUnitary &u) {
  return {u.n_qubits, u.mat.adjoint()};
}

DenseUnitary identity_unitary(int n_qubits) {
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  return {n_qubits, CMatrix::Identity(d, d)};
}

DensityMatrix pure_density(const StateVector &psi) {
  return {psi.amps * psi.amps.adjoint()};
}

CMatrix pauli_matrix(Pauli p) {
  CMatrix m(2, 2);
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y:
      m << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix densify(const PauliString &p) {
  if (p.n_qubits() < 1 || p.n_qubits() > kMaxDenseQubits)
    throw capacity_error("cannot densify a Pauli string on " +
                         std::to_string(p.n_qubits()) + " qubits");
  CMatrix m = pauli_matrix(p.labels[0]);
  for (int s = 1; s < p.n_qubits(); ++s) m = kron(m, pauli_matrix(p.labels[s]));
  return m;
}

bool all_finite(const CMatrix &m) { return m.allFinite(); }
bool all_finite(const CVector &v) { return v.allFinite(); }

}  // namespace designet
