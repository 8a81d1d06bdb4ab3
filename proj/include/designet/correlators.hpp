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

#ifndef DESIGNET_CORRELATORS_HPP
#define DESIGNET_CORRELATORS_HPP

#include <string>
#include <vector>

#include "designet/ensembles.hpp"
#include "designet/io_util.hpp"
#include "designet/quantum.hpp"

namespace designet {

/// Which correlator form is sampled, and which Pauli letters fill the
/// operator slots. Slot letters must be non-identity.
struct CorrelatorSpec {
  enum class Form { TwoPoint, Otoc4 };

  Form form = Form::TwoPoint;
  Pauli a = Pauli::X;
  Pauli b = Pauli::X;
  // Otoc4 only:
  Pauli c = Pauli::X;
  Pauli d = Pauli::X;
  std::string name;
};

/// The four named correlators:
///   xyxy  -> Otoc4(X,Y,X,Y)
///   xxyy  -> Otoc4(X,X,Y,Y)
///   xy2pt -> TwoPoint(X,Y)
///   zz2pt -> TwoPoint(Z,Z)
CorrelatorSpec catalog(const std::string &name);

/// Stable on-disk id: 0=xyxy, 1=xxyy, 2=xy2pt, 3=zz2pt.
uint8_t correlator_id(const CorrelatorSpec &spec);
CorrelatorSpec correlator_from_id(uint8_t id);

/// One term of the sampled correlator:
///   TwoPoint: <sigma| A_i U^dag B_j U |sigma>
///   Otoc4:    <sigma| A_i U^dag B_j U C_i U^dag D_j U |sigma>
/// evaluated by sequential state applications right to left, with A_i
/// applied to the bra side (all slot letters are Hermitian).
Complex sample_term(const StateVector &sigma, const UnitaryRep &u,
                    const CorrelatorSpec &spec, int i, int j);

/// N x N matrix of m-term correlator samples plus provenance.
struct SampleMatrix {
  int n_qubits = 0;
  int batch_m = 0;
  std::string ensemble_tag;
  uint64_t seed = 0;
  Eigen::MatrixXcd entries;  // (i, j) = operator sites
};

struct SampleOptions {
  /// Default: the m pairs (sigma_n, U_n) are drawn once and shared across
  /// all (i,j), preserving cross-pixel correlations. When set, every pixel
  /// redraws its own m pairs (much slower for dense ensembles).
  bool fresh_draws_per_pixel = false;
};

/// Draws m pairs (sigma_n, U_n) and fills entries[i][j] with
/// sum_n sample_term(sigma_n, U_n, spec, i, j). The rng is consumed in a
/// fixed order (sigma_1, U_1, sigma_2, U_2, ...), so results are
/// bit-reproducible from the seed.
SampleMatrix sample_matrix(const CorrelatorSpec &spec,
                           const EnsembleSpec &ens, int m, uint64_t seed,
                           const SampleOptions &opts = {});

struct AverageResult {
  Complex mean;
  double se_re = 0.0;  // standard error of the real part of the mean
  double se_im = 0.0;
};

/// Monte-Carlo ensemble average of a single (i,j) term with a fresh Haar
/// state and a fresh unitary per trial.
AverageResult ensemble_average(const CorrelatorSpec &spec,
                               const EnsembleSpec &ens, int i, int j,
                               int trials, Rng &rng);

// ---- QCSM sample files ----
// Little-endian. Header: magic "QCSM", version u16=1, n_qubits u8,
// correlator-id u8, batch_m u16, count u32. Body: count records, each a
// label byte (ensemble class index) followed by N^2 complex entries as
// (re, im) f64 pairs in row-major (i, j) order.

struct SampleRecord {
  uint8_t label = 0;
  Eigen::MatrixXcd entries;
};

struct SampleFileData {
  int n_qubits = 0;
  uint8_t correlator = 0;
  uint16_t batch_m = 0;
  std::vector<SampleRecord> records;
};

void write_qcsm(const std::string &path, const SampleFileData &data);
SampleFileData read_qcsm(const std::string &path);

}  // namespace designet

#endif  // DESIGNET_CORRELATORS_HPP
