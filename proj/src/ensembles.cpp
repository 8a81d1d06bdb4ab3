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

#include "designet/ensembles.hpp"

#include <Eigen/QR>
#include <cmath>

#include "designet/kernels.hpp"

namespace designet {

namespace {

void check_dense_capacity(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("n_qubits must be >= 1");
  if (n_qubits > kMaxDenseQubits)
    throw capacity_error("dense unitary on " + std::to_string(n_qubits) +
                         " qubits exceeds the limit of " +
                         std::to_string(kMaxDenseQubits));
}

void check_oracle_capacity(int n_qubits, int limit, const char *what) {
  if (n_qubits > limit)
    throw capacity_error(std::string(what) + " supports at most " +
                         std::to_string(limit) + " qubits (requested " +
                         std::to_string(n_qubits) + ")");
}

}  // namespace

EnsembleSpec parse_ensemble(const std::string &name, int n_qubits,
                            std::optional<int> depth) {
  EnsembleSpec spec;
  spec.n_qubits = n_qubits;
  if (name == "pauli1") {
    spec.kind = EnsembleKind::Pauli1Design;
  } else if (name == "brickwork2") {
    spec.kind = EnsembleKind::Brickwork2Design;
    if (n_qubits < 2)
      throw std::invalid_argument("brickwork2 requires at least 2 qubits");
    spec.depth = depth.value_or(0);
    if (depth && *depth < 1)
      throw std::invalid_argument("brickwork depth must be >= 1");
  } else if (name == "haar") {
    spec.kind = EnsembleKind::Haar;
  } else {
    throw std::invalid_argument("unknown ensemble '" + name +
                                "' (expected pauli1, brickwork2 or haar)");
  }
  return spec;
}

std::string ensemble_name(const EnsembleSpec &spec) {
  switch (spec.kind) {
    case EnsembleKind::Pauli1Design: return "pauli1";
    case EnsembleKind::Brickwork2Design: return "brickwork2";
    case EnsembleKind::Haar: return "haar";
  }
  return "?";
}

PauliString random_pauli_string(int n_qubits, Rng &rng) {
  PauliString p;
  p.labels.resize(n_qubits);
  for (int s = 0; s < n_qubits; ++s)
    p.labels[s] = static_cast<Pauli>(rng.uniform_below(4));
  return p;
}

namespace {

// Ginibre + QR + phase fix on an explicit dimension; shared by the full-size
// sampler and the 2-qubit brickwork gates.
Eigen::MatrixXcd haar_matrix(Eigen::Index d, Rng &rng) {
  Eigen::MatrixXcd g(d, d);
  // Column-major fill order is part of the sampler's deterministic contract.
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r) g(r, c) = rng.complex_normal();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const auto &qr_mat = qr.matrixQR();
  for (Eigen::Index c = 0; c < d; ++c) {
    const Complex r = qr_mat(c, c);
    const double a = std::abs(r);
    const Complex phase = a > 0 ? r / a : Complex(1.0, 0.0);
    q.col(c) *= phase;
  }
  return q;
}

}  // namespace

DenseUnitary haar_unitary(int n_qubits, Rng &rng) {
  check_dense_capacity(n_qubits);
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  return {n_qubits, CMatrix(haar_matrix(d, rng))};
}

int default_brickwork_depth(int n_qubits) { return 4 * n_qubits; }

DenseUnitary brickwork_unitary(int n_qubits, int depth, Rng &rng) {
  check_dense_capacity(n_qubits);
  if (n_qubits < 2)
    throw std::invalid_argument("brickwork circuits need at least 2 qubits");
  if (depth < 1) throw std::invalid_argument("brickwork depth must be >= 1");
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  // Assemble the circuit acting on the identity; columns transform like
  // states, so after all layers the matrix equals L_depth * ... * L_1.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d);
  for (int layer = 0; layer < depth; ++layer) {
    const int start = layer % 2;
    for (int site = start; site + 1 < n_qubits; site += 2) {
      Eigen::Matrix4cd gate = haar_matrix(4, rng);
      apply_two_qubit_gate_columns(m, gate, n_qubits, site);
    }
  }
  return {n_qubits, CMatrix(m)};
}

UnitaryRep sample(const EnsembleSpec &spec, Rng &rng) {
  switch (spec.kind) {
    case EnsembleKind::Pauli1Design:
      return random_pauli_string(spec.n_qubits, rng);
    case EnsembleKind::Haar:
      return haar_unitary(spec.n_qubits, rng);
    case EnsembleKind::Brickwork2Design: {
      const int depth =
          spec.depth > 0 ? spec.depth : default_brickwork_depth(spec.n_qubits);
      return brickwork_unitary(spec.n_qubits, depth, rng);
    }
  }
  throw std::invalid_argument("bad ensemble kind");
}

StateVector apply_unitary(const StateVector &psi, const UnitaryRep &u) {
  if (const auto *p = std::get_if<PauliString>(&u))
    return apply_pauli_string(psi, *p);
  return apply_dense(psi, std::get<DenseUnitary>(u));
}

StateVector apply_unitary_adjoint(const StateVector &psi,
                                  const UnitaryRep &u) {
  if (const auto *p = std::get_if<PauliString>(&u))
    return apply_pauli_string(psi, *p);
  return apply_dense_adjoint(psi, std::get<DenseUnitary>(u));
}

CMatrix densify(const UnitaryRep &u) {
  if (const auto *p = std::get_if<PauliString>(&u)) return densify(*p);
  return std::get<DenseUnitary>(u).mat;
}

int rep_qubits(const UnitaryRep &u) {
  if (const auto *p = std::get_if<PauliString>(&u)) return p->n_qubits();
  return std::get<DenseUnitary>(u).n_qubits;
}

double first_moment_twirl_error(const EnsembleSpec &spec, int trials,
                                Rng &rng) {
  check_oracle_capacity(spec.n_qubits, 6, "first-moment twirl oracle");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const Eigen::Index d = Eigen::Index{1} << spec.n_qubits;
  const StateVector rho_state = random_state(spec.n_qubits, rng);
  CMatrix m = CMatrix::Zero(d, d);
  for (int t = 0; t < trials; ++t) {
    const UnitaryRep u = sample(spec, rng);
    const StateVector phi = apply_unitary(rho_state, u);
    // rho is pure, so U rho U^dagger is the outer product of U|psi>.
    m.noalias() += phi.amps * phi.amps.adjoint();
  }
  m /= static_cast<double>(trials);
  m -= CMatrix::Identity(d, d) / static_cast<double>(d);
  return m.norm();
}

namespace {

// (U (x) U) |psi2> for psi2 on the doubled space, via the dense Kronecker
// product (oracle sizes only).
CVector twirl2_apply(const CMatrix &u, const CVector &psi2) {
  const CMatrix w = kron(u, u);
  CVector out(psi2.size());
  matvec(w, psi2.data(), out.data());
  return out;
}

}  // namespace

double second_moment_twirl_error(const EnsembleSpec &spec, int trials,
                                 Rng &rng) {
  check_oracle_capacity(spec.n_qubits, 3, "second-moment twirl oracle");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const Eigen::Index d = Eigen::Index{1} << spec.n_qubits;
  const Eigen::Index dd = d * d;
  // Fixed random pure state on the doubled space.
  CVector psi2(dd);
  for (Eigen::Index k = 0; k < dd; ++k) psi2[k] = rng.complex_normal();
  psi2 /= psi2.norm();

  CMatrix m = CMatrix::Zero(dd, dd);
  for (int t = 0; t < trials; ++t) {
    const CMatrix u = densify(sample(spec, rng));
    const CVector phi = twirl2_apply(u, psi2);
    m.noalias() += phi * phi.adjoint();
  }
  m /= static_cast<double>(trials);

  // Haar reference on the same input, 10x the samples.
  const int oracle_trials = 10 * trials;
  CMatrix r = CMatrix::Zero(dd, dd);
  for (int t = 0; t < oracle_trials; ++t) {
    const CMatrix u = haar_matrix(d, rng);
    const CVector phi = twirl2_apply(u, psi2);
    r.noalias() += phi * phi.adjoint();
  }
  r /= static_cast<double>(oracle_trials);

  return (m - r).norm();
}

double estimate_frame_potential(const EnsembleSpec &spec, int k, int pairs,
                                Rng &rng) {
  if (k != 1 && k != 2)
    throw std::invalid_argument("frame potential supports k in {1,2}");
  if (pairs < 1) throw std::invalid_argument("pairs must be >= 1");
  check_oracle_capacity(spec.n_qubits, 6, "frame-potential oracle");
  double total = 0.0;
  for (int t = 0; t < pairs; ++t) {
    const CMatrix u = densify(sample(spec, rng));
    const CMatrix v = densify(sample(spec, rng));
    // tr(U^dagger V) = sum_ij conj(U_ij) V_ij.
    const Complex tr = (u.conjugate().cwiseProduct(v)).sum();
    const double t2 = std::norm(tr);
    total += (k == 1) ? t2 : t2 * t2;
  }
  return total / static_cast<double>(pairs);
}

double frame_potential_pauli_exact(int n_qubits, int k) {
  if (k != 1 && k != 2)
    throw std::invalid_argument("frame potential supports k in {1,2}");
  check_oracle_capacity(n_qubits, 3, "exact Pauli frame potential");
  const uint64_t count = uint64_t{1} << (2 * n_qubits);
  auto string_at = [n_qubits](uint64_t idx) {
    PauliString p;
    p.labels.resize(n_qubits);
    for (int s = 0; s < n_qubits; ++s)
      p.labels[s] = static_cast<Pauli>((idx >> (2 * s)) & 3);
    return p;
  };
  double total = 0.0;
  for (uint64_t a = 0; a < count; ++a) {
    const CMatrix u = densify(string_at(a));
    for (uint64_t b = 0; b < count; ++b) {
      const CMatrix v = densify(string_at(b));
      const Complex tr = (u.conjugate().cwiseProduct(v)).sum();
      const double t2 = std::norm(tr);
      total += (k == 1) ? t2 : t2 * t2;
    }
  }
  return total / static_cast<double>(count * count);
}

CalibrationResult calibrate_brickwork_depth(int n_qubits,
                                            double epsilon_target, Rng &rng,
                                            int trials, int depth_cap) {
  if (n_qubits < 2)
    throw std::invalid_argument("calibration needs at least 2 qubits");
  if (epsilon_target <= 0.0)
    throw std::invalid_argument("epsilon_target must be positive");

  auto smallest_converged_depth = [&](int measure_n) {
    EnsembleSpec haar{EnsembleKind::Haar, measure_n, 0, 0.0};
    // Statistical floor: the Haar ensemble's own distance to the reference
    // at the same trial count.
    const double floor = second_moment_twirl_error(haar, trials, rng);
    const double threshold = epsilon_target + floor;
    for (int depth = 1; depth <= depth_cap; ++depth) {
      EnsembleSpec bw{EnsembleKind::Brickwork2Design, measure_n, depth,
                      epsilon_target};
      const double err = second_moment_twirl_error(bw, trials, rng);
      if (err <= threshold) return depth;
    }
    throw calibration_error(
        "brickwork calibration did not reach epsilon_target=" +
        std::to_string(epsilon_target) + " within depth cap " +
        std::to_string(depth_cap) + " at " + std::to_string(measure_n) +
        " qubits");
  };

  CalibrationResult result;
  if (n_qubits <= 3) {
    result.measured_n = n_qubits;
    result.measured_depth = smallest_converged_depth(n_qubits);
    result.depth = result.measured_depth;
    result.rule = "measured directly at the requested size";
    return result;
  }
  // Measure at 2 and 3 qubits, then extrapolate linearly in n_qubits.
  const int d2 = smallest_converged_depth(2);
  const int d3 = smallest_converged_depth(3);
  result.depth_at_2 = d2;
  result.depth_at_3 = d3;
  result.measured_n = 3;
  result.measured_depth = d3;
  const int slope = d3 - d2;
  result.depth = std::max(1, d2 + slope * (n_qubits - 2));
  result.rule = "depth(N) = depth(2) + (depth(3) - depth(2)) * (N - 2), "
                "clamped to >= 1";
  return result;
}

}  // namespace designet
