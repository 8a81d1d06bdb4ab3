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

#ifndef DESIGNET_CLI_HPP
#define DESIGNET_CLI_HPP

#include <optional>
#include <string>

#include "designet/cnn.hpp"
#include "designet/correlators.hpp"

namespace designet {

inline constexpr const char *kToolVersion = "0.1.0";

/// One experiment end to end: which correlator, which two ensembles (class
/// 0 and 1), dataset sizes, and where each stage reads/writes.
struct ExperimentConfig {
  int n_qubits = 10;
  std::string correlator = "xxyy";
  std::string ensemble_a = "pauli1";
  std::string ensemble_b = "haar";
  int images_per_class = 3125;
  int batch_m = 5;
  int train_count = 5000;
  uint64_t seed = 1;
  std::optional<int> brickwork_depth;  // unset -> default_brickwork_depth
  bool fresh_draws_per_pixel = false;
  int threads = 1;
  int epochs = 200;
  double learning_rate = 0.001;
  int batch_size = 100;
  int conv1_filters = 32;
  int conv1_size = 2;
  int conv2_filters = 64;
  int conv2_size = 3;
  int fc_units = 512;
  std::string samples_path = "samples.qcsm";
  std::string images_path = "images.qcim";
  std::string model_path = "model.qcnn";
  std::string metrics_path = "metrics.csv";

  CnnConfig cnn_config() const;
};

/// Flat key=value config file (UTF-8, '#' comments). Unknown keys are
/// errors.
ExperimentConfig load_config(const std::string &path);

/// Applies one key=value pair; shared by the file loader and command-line
/// overrides.
void apply_config_entry(ExperimentConfig &cfg, const std::string &key,
                        const std::string &value);

// Seed streams hung off the master seed; image index is the third hash
// input, so any single image is regenerable in isolation.
inline constexpr uint64_t kStreamClassA = 0;
inline constexpr uint64_t kStreamClassB = 1;
inline constexpr uint64_t kStreamSplit = 2;
inline constexpr uint64_t kStreamTrain = 3;
inline constexpr uint64_t kStreamVerify = 4;

/// Writes the QCSM samples file (images_per_class records per class) and a
/// JSON manifest next to it.
void run_generate(const ExperimentConfig &cfg);

/// QCSM -> QCIM, one image per record, labels preserved. When png_dir is
/// non-empty, also writes one PNG per image as <class>_<index>.png.
void run_encode(const ExperimentConfig &cfg, const std::string &samples_path,
                const std::string &images_path,
                const std::string &png_dir = "");

struct TrainSummary {
  double final_val_acc = 0.0;
  double last10_mean_val_acc = 0.0;
  double train_wall_seconds = 0.0;
};

/// Split per train_count, train per the CNN config, write checkpoint +
/// per-epoch metrics CSV + manifest.
TrainSummary run_train(const ExperimentConfig &cfg,
                       const std::string &images_path);

/// Prints accuracy to 4 decimal places and appends an `eval` row to the
/// metrics CSV. Returns the accuracy.
double run_eval(const std::string &checkpoint_path,
                const std::string &images_path,
                const std::string &metrics_path, int threads);

struct VerifyOptions {
  std::string ensemble = "haar";
  int n_qubits = 2;
  int trials = 5000;
  int fp_pairs = 10000;
  uint64_t seed = 1;
  std::optional<int> depth;  // brickwork only
  bool exact = false;        // exhaustive Pauli frame potential
  bool calibrate = false;    // also run brickwork depth calibration
  std::string out_csv = "verify.csv";
};

/// Runs the twirl-error and frame-potential oracles and writes a CSV of
/// `metric,value,stderr` rows. Oracle capacity limits apply (first moment
/// N<=6, second moment N<=3, frame potential N<=6).
void run_verify(const VerifyOptions &opts);

}  // namespace designet

#endif  // DESIGNET_CLI_HPP
