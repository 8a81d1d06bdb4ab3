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

#include "designet/correlators.hpp"

#include <cmath>

namespace designet {

CorrelatorSpec catalog(const std::string &name) {
  CorrelatorSpec spec;
  spec.name = name;
  if (name == "xyxy") {
    spec.form = CorrelatorSpec::Form::Otoc4;
    spec.a = Pauli::X; spec.b = Pauli::Y; spec.c = Pauli::X; spec.d = Pauli::Y;
  } else if (name == "xxyy") {
    spec.form = CorrelatorSpec::Form::Otoc4;
    spec.a = Pauli::X; spec.b = Pauli::X; spec.c = Pauli::Y; spec.d = Pauli::Y;
  } else if (name == "xy2pt") {
    spec.form = CorrelatorSpec::Form::TwoPoint;
    spec.a = Pauli::X; spec.b = Pauli::Y;
  } else if (name == "zz2pt") {
    spec.form = CorrelatorSpec::Form::TwoPoint;
    spec.a = Pauli::Z; spec.b = Pauli::Z;
  } else {
    throw std::invalid_argument(
        "unknown correlator '" + name +
        "' (expected xyxy, xxyy, xy2pt or zz2pt)");
  }
  return spec;
}

uint8_t correlator_id(const CorrelatorSpec &spec) {
  if (spec.name == "xyxy") return 0;
  if (spec.name == "xxyy") return 1;
  if (spec.name == "xy2pt") return 2;
  if (spec.name == "zz2pt") return 3;
  throw std::invalid_argument("correlator '" + spec.name +
                              "' has no catalog id");
}

CorrelatorSpec correlator_from_id(uint8_t id) {
  switch (id) {
    case 0: return catalog("xyxy");
    case 1: return catalog("xxyy");
    case 2: return catalog("xy2pt");
    case 3: return catalog("zz2pt");
  }
  throw format_error("unknown correlator id " + std::to_string(id));
}

namespace {

void check_sites(int n_qubits, int i, int j) {
  if (i < 0 || i >= n_qubits || j < 0 || j >= n_qubits)
    throw std::out_of_range("operator sites (" + std::to_string(i) + "," +
                            std::to_string(j) + ") out of range for " +
                            std::to_string(n_qubits) + " qubits");
}

}  // namespace

Complex sample_term(const StateVector &sigma, const UnitaryRep &u,
                    const CorrelatorSpec &spec, int i, int j) {
  check_sites(sigma.n_qubits, i, j);
  StateVector v = apply_unitary(sigma, u);
  if (spec.form == CorrelatorSpec::Form::Otoc4) {
    v = apply_pauli(v, j, spec.d);
    v = apply_unitary_adjoint(v, u);
    v = apply_pauli(v, i, spec.c);
    v = apply_unitary(v, u);
  }
  v = apply_pauli(v, j, spec.b);
  v = apply_unitary_adjoint(v, u);
  const StateVector bra = apply_pauli(sigma, i, spec.a);
  return inner(bra, v);
}

namespace {

// Shared-draw fast path for a dense U. Reuses, per drawn pair:
//   phi      = U sigma                      (1 matvec)
//   x_j      = U^dag D_j phi                (N matvecs, D=B for 2-point)
//   L_i      = U A_i sigma                  (N matvecs, OTOC only)
//   Y_j      = U [C_0 x_j ... C_{N-1} x_j]  (N small GEMMs, OTOC only)
// and finishes each (i,j) with O(d) Pauli applications and a dot product.
// Algebraically identical to summing sample_term over (i,j).
void accumulate_dense_sample(const CorrelatorSpec &spec,
                             const StateVector &sigma, const DenseUnitary &u,
                             Eigen::MatrixXcd &entries) {
  const int n = sigma.n_qubits;
  const Eigen::Index d = sigma.dim();
  const StateVector phi = apply_dense(sigma, u);

  if (spec.form == CorrelatorSpec::Form::TwoPoint) {
    std::vector<StateVector> bra(n);
    for (int i = 0; i < n; ++i) bra[i] = apply_pauli(sigma, i, spec.a);
    for (int j = 0; j < n; ++j) {
      const StateVector x = apply_dense_adjoint(apply_pauli(phi, j, spec.b), u);
      for (int i = 0; i < n; ++i) entries(i, j) += inner(bra[i], x);
    }
    return;
  }

  std::vector<StateVector> bra(n);
  for (int i = 0; i < n; ++i)
    bra[i] = apply_dense(apply_pauli(sigma, i, spec.a), u);
  Eigen::MatrixXcd v(d, n);
  for (int j = 0; j < n; ++j) {
    const StateVector x = apply_dense_adjoint(apply_pauli(phi, j, spec.d), u);
    for (int i = 0; i < n; ++i)
      v.col(i) = apply_pauli(x, i, spec.c).amps;
    const Eigen::MatrixXcd y = u.mat * v;
    for (int i = 0; i < n; ++i) {
      StateVector yi{n, y.col(i)};
      const StateVector w = apply_pauli(yi, j, spec.b);
      entries(i, j) += bra[i].amps.dot(w.amps);
    }
  }
}

}  // namespace

SampleMatrix sample_matrix(const CorrelatorSpec &spec,
                           const EnsembleSpec &ens, int m, uint64_t seed,
                           const SampleOptions &opts) {
  if (m < 1) throw std::invalid_argument("batch number m must be >= 1");
  const int n = ens.n_qubits;
  SampleMatrix out;
  out.n_qubits = n;
  out.batch_m = m;
  out.ensemble_tag = ensemble_name(ens);
  out.seed = seed;
  out.entries = Eigen::MatrixXcd::Zero(n, n);
  Rng rng(seed);

  if (opts.fresh_draws_per_pixel) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int t = 0; t < m; ++t) {
          const StateVector sigma = random_state(n, rng);
          const UnitaryRep u = sample(ens, rng);
          out.entries(i, j) += sample_term(sigma, u, spec, i, j);
        }
      }
    }
    return out;
  }

  for (int t = 0; t < m; ++t) {
    const StateVector sigma = random_state(n, rng);
    const UnitaryRep u = sample(ens, rng);
    if (const auto *dense = std::get_if<DenseUnitary>(&u)) {
      accumulate_dense_sample(spec, sigma, *dense, out.entries);
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          out.entries(i, j) += sample_term(sigma, u, spec, i, j);
    }
  }
  return out;
}

AverageResult ensemble_average(const CorrelatorSpec &spec,
                               const EnsembleSpec &ens, int i, int j,
                               int trials, Rng &rng) {
  if (trials < 2) throw std::invalid_argument("trials must be >= 2");
  std::vector<Complex> terms(static_cast<size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    const StateVector sigma = random_state(ens.n_qubits, rng);
    const UnitaryRep u = sample(ens, rng);
    terms[static_cast<size_t>(t)] = sample_term(sigma, u, spec, i, j);
  }
  Complex mean(0.0, 0.0);
  for (const Complex &t : terms) mean += t;
  mean /= static_cast<double>(trials);
  double var_re = 0.0, var_im = 0.0;
  for (const Complex &t : terms) {
    var_re += (t.real() - mean.real()) * (t.real() - mean.real());
    var_im += (t.imag() - mean.imag()) * (t.imag() - mean.imag());
  }
  const double denom = static_cast<double>(trials) * (trials - 1);
  return {mean, std::sqrt(var_re / denom), std::sqrt(var_im / denom)};
}

void write_qcsm(const std::string &path, const SampleFileData &data) {
  BinaryWriter w(path);
  w.bytes("QCSM", 4);
  w.u16(1);
  w.u8(static_cast<uint8_t>(data.n_qubits));
  w.u8(data.correlator);
  w.u16(data.batch_m);
  w.u32(static_cast<uint32_t>(data.records.size()));
  const int n = data.n_qubits;
  for (const SampleRecord &rec : data.records) {
    if (rec.entries.rows() != n || rec.entries.cols() != n)
      throw std::invalid_argument("sample record has wrong dimensions");
    w.u8(rec.label);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        w.f64(rec.entries(i, j).real());
        w.f64(rec.entries(i, j).imag());
      }
    }
  }
  w.close();
}

SampleFileData read_qcsm(const std::string &path) {
  BinaryReader r(path);
  r.expect_magic("QCSM");
  const uint16_t version = r.u16();
  if (version != 1)
    throw format_error(path + ": unsupported QCSM version " +
                       std::to_string(version));
  SampleFileData data;
  data.n_qubits = r.u8();
  if (data.n_qubits < 1)
    throw format_error(path + ": bad qubit count at byte offset 6");
  data.correlator = r.u8();
  correlator_from_id(data.correlator);
  data.batch_m = r.u16();
  const uint32_t count = r.u32();
  const int n = data.n_qubits;
  data.records.resize(count);
  for (uint32_t k = 0; k < count; ++k) {
    SampleRecord &rec = data.records[k];
    rec.label = r.u8();
    rec.entries.resize(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double re = r.f64();
        const double im = r.f64();
        rec.entries(i, j) = Complex(re, im);
      }
    }
  }
  return data;
}

}  // namespace designet
