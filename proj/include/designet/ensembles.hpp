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

#ifndef DESIGNET_ENSEMBLES_HPP
#define DESIGNET_ENSEMBLES_HPP

#include <optional>
#include <string>
#include <variant>

#include "designet/quantum.hpp"
#include "designet/rng.hpp"

namespace designet {

/// Raised when brickwork depth calibration fails to converge.
struct calibration_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EnsembleKind { Pauli1Design, Brickwork2Design, Haar };

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::Haar;
  int n_qubits = 1;
  // Brickwork parameters; depth 0 means "use default_brickwork_depth".
  int depth = 0;
  double epsilon_target = 1e-3;
};

/// Ensemble names accepted on the command line: "pauli1", "brickwork2",
/// "haar".
EnsembleSpec parse_ensemble(const std::string &name, int n_qubits,
                            std::optional<int> depth = std::nullopt);
std::string ensemble_name(const EnsembleSpec &spec);

/// A sampled ensemble member: sparse Pauli string for the 1-design, dense
/// matrix otherwise.
using UnitaryRep = std::variant<PauliString, DenseUnitary>;

/// Uniform over the 4^N phase-free Pauli strings.
PauliString random_pauli_string(int n_qubits, Rng &rng);

/// Haar/CUE sample: complex Ginibre matrix, QR factorization, then each
/// column of Q rescaled by the phase of the matching diagonal entry of R so
/// that diag(R) is real positive.
DenseUnitary haar_unitary(int n_qubits, Rng &rng);

/// `depth` alternating layers of independent Haar 2-qubit gates on an open
/// chain: even layers pair (0,1),(2,3),...; odd layers pair (1,2),(3,4),...
DenseUnitary brickwork_unitary(int n_qubits, int depth, Rng &rng);

/// Default brickwork depth when none is configured: 4 layers per qubit
/// (40 at N=10), a generous multiple of the small-N calibrated depth.
int default_brickwork_depth(int n_qubits);

UnitaryRep sample(const EnsembleSpec &spec, Rng &rng);

StateVector apply_unitary(const StateVector &psi, const UnitaryRep &u);
/// Applies the adjoint. Pauli strings are Hermitian, so this is the same
/// operator in that case.
StateVector apply_unitary_adjoint(const StateVector &psi,
                                  const UnitaryRep &u);

/// Dense matrix of a sampled member (small N only for Pauli strings).
CMatrix densify(const UnitaryRep &u);

int rep_qubits(const UnitaryRep &u);

// ---- Design-order oracles ----

/// Draws a fixed random pure rho, estimates the 1-twirl
/// M = mean_t U_t rho U_t^dagger over `trials` samples and returns
/// ||M - I/d||_F (the exact Haar first moment of any unit-trace rho is I/d).
/// Requires n_qubits <= 6.
double first_moment_twirl_error(const EnsembleSpec &spec, int trials,
                                Rng &rng);

/// Fixed random pure rho on the doubled space (dimension d^2); estimates
/// the 2-twirl mean_t (U_t (x) U_t) rho (U_t (x) U_t)^dagger and returns the
/// Frobenius distance to a Haar Monte-Carlo reference computed with
/// 10x `trials` samples. Requires n_qubits <= 3.
double second_moment_twirl_error(const EnsembleSpec &spec, int trials,
                                 Rng &rng);

/// Frame potential estimate F^(k) = mean |tr(U^dagger V)|^{2k} over `pairs`
/// independent draws. Haar values: F^(1)=1, F^(2)=2. Requires k in {1,2}
/// and n_qubits <= 6.
double estimate_frame_potential(const EnsembleSpec &spec, int k, int pairs,
                                Rng &rng);

/// Exact frame potential of the Pauli 1-design by exhaustive enumeration of
/// all 4^N x 4^N pairs with numerically computed traces. n_qubits <= 3.
double frame_potential_pauli_exact(int n_qubits, int k);

struct CalibrationResult {
  int depth = 0;        // depth recommended for the requested size
  int measured_n = 0;   // size the threshold search ran at
  int measured_depth = 0;
  // Present when the requested size needed linear extrapolation.
  std::optional<int> depth_at_2;
  std::optional<int> depth_at_3;
  std::string rule;     // human-readable extrapolation rule
};

/// Finds the smallest depth whose second-moment twirl error falls below
/// epsilon_target plus the statistical floor (the Haar ensemble's own
/// distance to the reference at the same trial count). Sizes above 3 qubits
/// are extrapolated linearly from measurements at 2 and 3 qubits.
CalibrationResult calibrate_brickwork_depth(int n_qubits,
                                            double epsilon_target, Rng &rng,
                                            int trials = 3000,
                                            int depth_cap = 64);

}  // namespace designet

#endif  // DESIGNET_ENSEMBLES_HPP
