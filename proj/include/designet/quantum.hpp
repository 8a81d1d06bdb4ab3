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

#ifndef DESIGNET_QUANTUM_HPP
#define DESIGNET_QUANTUM_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "designet/rng.hpp"

namespace designet {

using Complex = std::complex<double>;
using CMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

/// Raised when a requested system size would exceed dense-simulation limits.
struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Largest qubit count for which state vectors are allocated (16 GiB of
/// amplitudes at the limit).
constexpr int kMaxStateQubits = 26;
/// Largest qubit count for which d x d dense unitaries are materialized.
constexpr int kMaxDenseQubits = 13;

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// Tensor product of single-site Paulis, one label per qubit. Global phases
/// are never tracked, so every PauliString is Hermitian and involutive.
struct PauliString {
  std::vector<Pauli> labels;

  int n_qubits() const { return static_cast<int>(labels.size()); }
  bool operator==(const PauliString &other) const = default;
};

/// Pure state of `n_qubits` qubits. Site 0 is the most significant bit of
/// the basis-state index; this convention is used consistently everywhere.
struct StateVector {
  int n_qubits = 0;
  CVector amps;

  Eigen::Index dim() const { return amps.size(); }
};

struct DenseUnitary {
  int n_qubits = 0;
  CMatrix mat;

  Eigen::Index dim() const { return mat.rows(); }
};

struct DensityMatrix {
  CMatrix mat;
};

// ---- State construction ----

/// |index> in the computational basis.
StateVector basis_state(int n_qubits, uint64_t index);

/// Haar-random pure state: i.i.d. standard complex normal amplitudes,
/// normalized to unit 2-norm.
StateVector random_state(int n_qubits, Rng &rng);

// ---- Operators ----

/// Applies `label` on `site` (identity elsewhere) in O(d) via bit arithmetic.
StateVector apply_pauli(const StateVector &psi, int site, Pauli label);

/// Applies the full tensor-product operator in a single O(d) pass.
StateVector apply_pauli_string(const StateVector &psi, const PauliString &p);

/// Dense matrix-vector product. Row-parallel; results are identical at any
/// thread count because each output amplitude is reduced by one thread.
StateVector apply_dense(const StateVector &psi, const DenseUnitary &u);

/// Matrix-vector product with the adjoint of `u`, without materializing it.
StateVector apply_dense_adjoint(const StateVector &psi, const DenseUnitary &u);

/// <a|b> = sum_k conj(a_k) b_k.
Complex inner(const StateVector &a, const StateVector &b);

double norm(const StateVector &psi);

DenseUnitary adjoint(const DenseUnitary &u);

DenseUnitary identity_unitary(int n_qubits);

DensityMatrix pure_density(const StateVector &psi);

// ---- Dense helpers (small N; used by design oracles and tests) ----

CMatrix pauli_matrix(Pauli p);

CMatrix kron(const CMatrix &a, const CMatrix &b);

/// Dense d x d matrix of a Pauli string. Guarded to small N.
CMatrix densify(const PauliString &p);

/// True when every entry of `m` is finite.
bool all_finite(const CMatrix &m);
bool all_finite(const CVector &v);

namespace detail {
inline void check_site(const StateVector &psi, int site) {
  if (site < 0 || site >= psi.n_qubits)
    throw std::out_of_range("site " + std::to_string(site) +
                            " out of range for " +
                            std::to_string(psi.n_qubits) + " qubits");
}
}  // namespace detail

}  // namespace designet

#endif  // DESIGNET_QUANTUM_HPP
