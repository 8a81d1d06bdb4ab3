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

#include <doctest.h>

#include "designet/quantum.hpp"

using namespace designet;

namespace {

PauliString string_from(const char *letters) {
  PauliString p;
  for (const char *c = letters; *c; ++c) p.labels.push_back(pauli_from_char(*c));
  return p;
}

}  // namespace

TEST_CASE("rng streams are deterministic and independent") {
  Rng a(42), b(42), c(43);
  for (int k = 0; k < 100; ++k) CHECK(a.next_u64() == b.next_u64());
  CHECK(Rng(42).normal() == Rng(42).normal());
  CHECK(c.next_u64() != Rng(42).next_u64());
  // derive_seed separates streams and indices.
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 1, 0));
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 0, 1));
  CHECK(derive_seed(1, 0, 5) == derive_seed(1, 0, 5));
  CHECK(derive_seed(2, 0, 5) != derive_seed(1, 0, 5));
}

TEST_CASE("rng uniform and normal look like their distributions") {
  Rng rng(7);
  double sum = 0.0, sum2 = 0.0;
  const int n = 20000;
  for (int k = 0; k < n; ++k) {
    const double v = rng.normal();
    sum += v;
    sum2 += v * v;
  }
  CHECK(std::abs(sum / n) < 0.03);
  CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.05));
  for (int k = 0; k < 1000; ++k) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("random_state is normalized at any size") {
  Rng rng(1);
  for (int n : {1, 4, 10}) {
    const StateVector psi = random_state(n, rng);
    CHECK(psi.dim() == (Eigen::Index{1} << n));
    CHECK(std::abs(norm(psi) - 1.0) < 1e-12);
    CHECK(all_finite(psi.amps));
  }
  CHECK_THROWS_AS(random_state(kMaxStateQubits + 1, rng), capacity_error);
  CHECK_THROWS_AS(random_state(0, rng), std::invalid_argument);
}

TEST_CASE("random_state amplitudes are Haar-symmetric") {
  // Monte-Carlo oracle: E |<0|sigma>|^2 = 1/2^N at N=3.
  Rng rng(11);
  double mean = 0.0;
  const int draws = 10000;
  for (int k = 0; k < draws; ++k)
    mean += std::norm(random_state(3, rng).amps[0]);
  mean /= draws;
  CHECK(mean == doctest::Approx(1.0 / 8.0).epsilon(0.08));
}

TEST_CASE("single-site Pauli actions on basis states") {
  const StateVector zero = basis_state(1, 0);
  const StateVector one = basis_state(1, 1);

  const StateVector x = apply_pauli(zero, 0, Pauli::X);
  CHECK(x.amps[0] == Complex(0, 0));
  CHECK(x.amps[1] == Complex(1, 0));

  const StateVector z = apply_pauli(zero, 0, Pauli::Z);
  CHECK(z.amps[0] == Complex(1, 0));
  CHECK(z.amps[1] == Complex(0, 0));
  const StateVector z1 = apply_pauli(one, 0, Pauli::Z);
  CHECK(z1.amps[1] == Complex(-1, 0));

  const StateVector y = apply_pauli(zero, 0, Pauli::Y);
  CHECK(y.amps[0] == Complex(0, 0));
  CHECK(y.amps[1] == Complex(0, 1));  // Y|0> = i|1>
  const StateVector y1 = apply_pauli(one, 0, Pauli::Y);
  CHECK(y1.amps[0] == Complex(0, -1));  // Y|1> = -i|0>

  CHECK_THROWS_AS(apply_pauli(zero, 1, Pauli::X), std::out_of_range);
  CHECK_THROWS_AS(apply_pauli(zero, -1, Pauli::X), std::out_of_range);
}

TEST_CASE("site 0 is the most significant bit") {
  // X on site 0 of |000> flips to |100> = index 4.
  const StateVector psi = apply_pauli(basis_state(3, 0), 0, Pauli::X);
  CHECK(psi.amps[4] == Complex(1, 0));
  // X on site 2 flips the least significant bit.
  const StateVector psi2 = apply_pauli(basis_state(3, 0), 2, Pauli::X);
  CHECK(psi2.amps[1] == Complex(1, 0));
}

TEST_CASE("pauli string basics") {
  Rng rng(5);
  const StateVector psi = random_state(3, rng);

  const StateVector same = apply_pauli_string(psi, string_from("III"));
  CHECK((same.amps - psi.amps).norm() == 0.0);

  const StateVector flipped =
      apply_pauli_string(basis_state(2, 0), string_from("XX"));
  CHECK(flipped.amps[3] == Complex(1, 0));

  CHECK_THROWS_AS(apply_pauli_string(psi, string_from("XX")),
                  std::invalid_argument);
}

TEST_CASE("pauli strings square to the identity") {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_below(4));
    const StateVector psi = random_state(n, rng);
    PauliString p;
    for (int s = 0; s < n; ++s)
      p.labels.push_back(static_cast<Pauli>(rng.uniform_below(4)));
    const StateVector twice = apply_pauli_string(apply_pauli_string(psi, p), p);
    CHECK((twice.amps - psi.amps).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("fused pauli string equals sequential single-site application") {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_below(3));
    const StateVector psi = random_state(n, rng);
    PauliString p;
    for (int s = 0; s < n; ++s)
      p.labels.push_back(static_cast<Pauli>(rng.uniform_below(4)));
    StateVector seq = psi;
    for (int s = 0; s < n; ++s) seq = apply_pauli(seq, s, p.labels[s]);
    const StateVector fused = apply_pauli_string(psi, p);
    CHECK((fused.amps - seq.amps).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("X and Z anticommute on every basis state up to N=3") {
  for (int n = 1; n <= 3; ++n) {
    for (uint64_t idx = 0; idx < (uint64_t{1} << n); ++idx) {
      for (int site = 0; site < n; ++site) {
        const StateVector psi = basis_state(n, idx);
        const StateVector xz =
            apply_pauli(apply_pauli(psi, site, Pauli::Z), site, Pauli::X);
        const StateVector zx =
            apply_pauli(apply_pauli(psi, site, Pauli::X), site, Pauli::Z);
        CHECK((xz.amps + zx.amps).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("sparse strings agree with dense tensor-product matrices") {
  Rng rng(9);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 8; ++trial) {
      PauliString p;
      for (int s = 0; s < n; ++s)
        p.labels.push_back(static_cast<Pauli>(rng.uniform_below(4)));
      const StateVector psi = random_state(n, rng);
      const DenseUnitary dense{n, densify(p)};
      const StateVector via_dense = apply_dense(psi, dense);
      const StateVector via_sparse = apply_pauli_string(psi, p);
      CHECK((via_dense.amps - via_sparse.amps).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("apply_dense basics") {
  Rng rng(10);
  const StateVector psi = random_state(3, rng);
  const DenseUnitary id = identity_unitary(3);
  CHECK((apply_dense(psi, id).amps - psi.amps).cwiseAbs().maxCoeff() == 0.0);

  // A random unitary from a Pauli string composed with phases keeps norms.
  const DenseUnitary u{3, densify(string_from("XYZ"))};
  const StateVector out = apply_dense(psi, u);
  CHECK(std::abs(norm(out) - 1.0) < 1e-10);

  const StateVector back = apply_dense(out, adjoint(u));
  CHECK((back.amps - psi.amps).cwiseAbs().maxCoeff() < 1e-9);

  const StateVector psi2 = random_state(2, rng);
  CHECK_THROWS_AS(apply_dense(psi2, u), std::invalid_argument);
}

TEST_CASE("inner product contracts") {
  Rng rng(12);
  const StateVector a = random_state(2, rng);
  const StateVector b = random_state(2, rng);
  CHECK(std::abs(inner(a, a) - Complex(1, 0)) < 1e-12);
  CHECK(inner(basis_state(1, 0), basis_state(1, 1)) == Complex(0, 0));
  const Complex ab = inner(a, b);
  const Complex ba = inner(b, a);
  CHECK(std::abs(ab - std::conj(ba)) < 1e-12);
  CHECK_THROWS_AS(inner(a, random_state(3, rng)), std::invalid_argument);
}

TEST_CASE("adjoint involution and unitarity") {
  const DenseUnitary id = identity_unitary(2);
  CHECK((adjoint(id).mat - id.mat).norm() == 0.0);
  const DenseUnitary u{2, densify(string_from("XY"))};
  CHECK((adjoint(adjoint(u)).mat - u.mat).norm() == 0.0);
  CHECK((u.mat * adjoint(u).mat - CMatrix::Identity(4, 4)).norm() < 1e-8);
}

TEST_CASE("density matrices from pure states are valid") {
  Rng rng(13);
  const StateVector psi = random_state(2, rng);
  const DensityMatrix rho = pure_density(psi);
  CHECK((rho.mat - rho.mat.adjoint().eval()).norm() < 1e-10);
  CHECK(std::abs(rho.mat.trace() - Complex(1, 0)) < 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.mat);
  CHECK(es.eigenvalues().minCoeff() > -1e-9);
}

TEST_CASE("kron and pauli_matrix agree with hand values") {
  const CMatrix zz = kron(pauli_matrix(Pauli::Z), pauli_matrix(Pauli::Z));
  CHECK(zz(0, 0) == Complex(1, 0));
  CHECK(zz(1, 1) == Complex(-1, 0));
  CHECK(zz(2, 2) == Complex(-1, 0));
  CHECK(zz(3, 3) == Complex(1, 0));
  const CMatrix y = pauli_matrix(Pauli::Y);
  CHECK(y(0, 1) == Complex(0, -1));
  CHECK(y(1, 0) == Complex(0, 1));
}
