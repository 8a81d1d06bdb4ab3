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

#include "designet/cli.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "designet/imaging.hpp"

namespace designet {

using nlohmann::json;

CnnConfig ExperimentConfig::cnn_config() const {
  CnnConfig c;
  c.conv1_filters = conv1_filters;
  c.conv1_size = conv1_size;
  c.conv2_filters = conv2_filters;
  c.conv2_size = conv2_size;
  c.fc_units = fc_units;
  c.classes = 2;
  c.learning_rate = learning_rate;
  c.batch_size = batch_size;
  c.epochs = epochs;
  c.seed = seed;
  c.threads = threads;
  return c;
}

namespace {

int parse_int(const std::string &key, const std::string &value) {
  try {
    size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception &) {
    throw std::invalid_argument("config key '" + key +
                                "' expects an integer, got '" + value + "'");
  }
}

uint64_t parse_u64(const std::string &key, const std::string &value) {
  try {
    size_t pos = 0;
    const uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception &) {
    throw std::invalid_argument("config key '" + key +
                                "' expects an unsigned integer, got '" +
                                value + "'");
  }
}

double parse_double(const std::string &key, const std::string &value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception &) {
    throw std::invalid_argument("config key '" + key +
                                "' expects a number, got '" + value + "'");
  }
}

bool parse_bool(const std::string &key, const std::string &value) {
  if (value == "1" || value == "true") return true;
  if (value == "0" || value == "false") return false;
  throw std::invalid_argument("config key '" + key +
                              "' expects 0/1/true/false, got '" + value +
                              "'");
}

std::string trim(const std::string &s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

void apply_config_entry(ExperimentConfig &cfg, const std::string &key,
                        const std::string &value) {
  if (key == "n_qubits") cfg.n_qubits = parse_int(key, value);
  else if (key == "correlator") cfg.correlator = value;
  else if (key == "ensemble_a") cfg.ensemble_a = value;
  else if (key == "ensemble_b") cfg.ensemble_b = value;
  else if (key == "images_per_class") cfg.images_per_class = parse_int(key, value);
  else if (key == "batch_m") cfg.batch_m = parse_int(key, value);
  else if (key == "train_count") cfg.train_count = parse_int(key, value);
  else if (key == "seed") cfg.seed = parse_u64(key, value);
  else if (key == "brickwork_depth") cfg.brickwork_depth = parse_int(key, value);
  else if (key == "fresh_draws_per_pixel") cfg.fresh_draws_per_pixel = parse_bool(key, value);
  else if (key == "threads") cfg.threads = parse_int(key, value);
  else if (key == "epochs") cfg.epochs = parse_int(key, value);
  else if (key == "learning_rate") cfg.learning_rate = parse_double(key, value);
  else if (key == "batch_size") cfg.batch_size = parse_int(key, value);
  else if (key == "conv1_filters") cfg.conv1_filters = parse_int(key, value);
  else if (key == "conv1_size") cfg.conv1_size = parse_int(key, value);
  else if (key == "conv2_filters") cfg.conv2_filters = parse_int(key, value);
  else if (key == "conv2_size") cfg.conv2_size = parse_int(key, value);
  else if (key == "fc_units") cfg.fc_units = parse_int(key, value);
  else if (key == "samples_path") cfg.samples_path = value;
  else if (key == "images_path") cfg.images_path = value;
  else if (key == "model_path") cfg.model_path = value;
  else if (key == "metrics_path") cfg.metrics_path = value;
  else
    throw std::invalid_argument("unknown config key '" + key + "'");
}

ExperimentConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  ExperimentConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected key=value");
    apply_config_entry(cfg, trim(stripped.substr(0, eq)),
                       trim(stripped.substr(eq + 1)));
  }
  return cfg;
}

namespace {

json config_json(const ExperimentConfig &cfg) {
  json j;
  j["n_qubits"] = cfg.n_qubits;
  j["correlator"] = cfg.correlator;
  j["ensemble_a"] = cfg.ensemble_a;
  j["ensemble_b"] = cfg.ensemble_b;
  j["images_per_class"] = cfg.images_per_class;
  j["batch_m"] = cfg.batch_m;
  j["train_count"] = cfg.train_count;
  j["seed"] = cfg.seed;
  if (cfg.brickwork_depth) j["brickwork_depth"] = *cfg.brickwork_depth;
  j["fresh_draws_per_pixel"] = cfg.fresh_draws_per_pixel;
  j["threads"] = cfg.threads;
  j["epochs"] = cfg.epochs;
  j["learning_rate"] = cfg.learning_rate;
  j["batch_size"] = cfg.batch_size;
  j["conv1_filters"] = cfg.conv1_filters;
  j["conv1_size"] = cfg.conv1_size;
  j["conv2_filters"] = cfg.conv2_filters;
  j["conv2_size"] = cfg.conv2_size;
  j["fc_units"] = cfg.fc_units;
  return j;
}

char hex_digit(uint64_t v) {
  return "0123456789abcdef"[v & 0xf];
}

std::string hex64(uint64_t v) {
  std::string s(16, '0');
  for (int k = 15; k >= 0; --k) {
    s[static_cast<size_t>(k)] = hex_digit(v);
    v >>= 4;
  }
  return s;
}

void write_manifest(const std::string &out_path, const std::string &stage,
                    const ExperimentConfig &cfg,
                    const std::vector<std::string> &files,
                    json extra = json::object()) {
  json j;
  j["tool"] = "designet";
  j["version"] = kToolVersion;
  j["stage"] = stage;
  j["config"] = config_json(cfg);
  j["seed_streams"] = {{"class_a", kStreamClassA},
                       {"class_b", kStreamClassB},
                       {"split", kStreamSplit},
                       {"train", kStreamTrain},
                       {"verify", kStreamVerify}};
  json digests = json::object();
  for (const std::string &f : files) {
    std::ifstream probe(f, std::ios::binary | std::ios::ate);
    digests[f] = {{"fnv1a64", hex64(fnv1a64_file(f))},
                  {"bytes", static_cast<uint64_t>(probe.tellg())}};
  }
  j["files"] = digests;
  if (!extra.empty()) j["details"] = extra;
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
  out << j.dump(2) << "\n";
}

EnsembleSpec ensemble_for_class(const ExperimentConfig &cfg, int cls) {
  return parse_ensemble(cls == 0 ? cfg.ensemble_a : cfg.ensemble_b,
                        cfg.n_qubits, cfg.brickwork_depth);
}

}  // namespace

void run_generate(const ExperimentConfig &cfg) {
  if (cfg.images_per_class < 1)
    throw std::invalid_argument("images_per_class must be >= 1");
  const CorrelatorSpec spec = catalog(cfg.correlator);
  const EnsembleSpec ens[2] = {ensemble_for_class(cfg, 0),
                               ensemble_for_class(cfg, 1)};
  SampleOptions opts;
  opts.fresh_draws_per_pixel = cfg.fresh_draws_per_pixel;

  SampleFileData data;
  data.n_qubits = cfg.n_qubits;
  data.correlator = correlator_id(spec);
  data.batch_m = static_cast<uint16_t>(cfg.batch_m);
  const int per_class = cfg.images_per_class;
  data.records.resize(static_cast<size_t>(2) * per_class);

  const int64_t total = 2 * static_cast<int64_t>(per_class);
#pragma omp parallel for num_threads(std::max(1, cfg.threads)) \
    schedule(dynamic)
  for (int64_t k = 0; k < total; ++k) {
    const int cls = static_cast<int>(k / per_class);
    const int idx = static_cast<int>(k % per_class);
    const uint64_t stream = cls == 0 ? kStreamClassA : kStreamClassB;
    const uint64_t img_seed = derive_seed(cfg.seed, stream,
                                          static_cast<uint64_t>(idx));
    const SampleMatrix sm =
        sample_matrix(spec, ens[cls], cfg.batch_m, img_seed, opts);
    SampleRecord &rec = data.records[static_cast<size_t>(k)];
    rec.label = static_cast<uint8_t>(cls);
    rec.entries = sm.entries;
  }

  write_qcsm(cfg.samples_path, data);
  json extra;
  extra["records"] = data.records.size();
  extra["ensembles"] = {ensemble_name(ens[0]), ensemble_name(ens[1])};
  write_manifest(cfg.samples_path + ".manifest.json", "generate", cfg,
                 {cfg.samples_path}, extra);
}

void run_encode(const ExperimentConfig &cfg, const std::string &samples_path,
                const std::string &images_path, const std::string &png_dir) {
  const SampleFileData data = read_qcsm(samples_path);
  Dataset ds;
  ds.height = data.n_qubits;
  ds.width = data.n_qubits;
  ds.meta.correlator = correlator_from_id(data.correlator).name;
  ds.meta.ensemble_a = cfg.ensemble_a;
  ds.meta.ensemble_b = cfg.ensemble_b;
  ds.meta.n_qubits = data.n_qubits;
  ds.meta.batch_m = data.batch_m;
  ds.meta.seed = cfg.seed;
  ds.images.resize(data.records.size());
  const int64_t total = static_cast<int64_t>(data.records.size());
#pragma omp parallel for num_threads(std::max(1, cfg.threads)) \
    schedule(static)
  for (int64_t k = 0; k < total; ++k)
    ds.images[static_cast<size_t>(k)] =
        encode_record(data.n_qubits, data.batch_m,
                      data.records[static_cast<size_t>(k)]);
  write_qcim(images_path, ds);
  if (!png_dir.empty()) {
    std::filesystem::create_directories(png_dir);
    int index_in_class[2] = {0, 0};
    for (const LabeledImage &img : ds.images) {
      const int idx = index_in_class[img.label]++;
      const std::string name = std::to_string(int(img.label)) + "_" +
                               std::to_string(idx) + ".png";
      export_png((std::filesystem::path(png_dir) / name).string(), img);
    }
  }
  json extra;
  extra["images"] = ds.images.size();
  write_manifest(images_path + ".manifest.json", "encode", cfg,
                 {images_path}, extra);
}

TrainSummary run_train(const ExperimentConfig &cfg,
                       const std::string &images_path) {
  Dataset ds = read_qcim(images_path);
  const int total = static_cast<int>(ds.images.size());
  int per_label[2] = {0, 0};
  for (const LabeledImage &img : ds.images) {
    if (img.label > 1)
      throw std::invalid_argument("dataset has label " +
                                  std::to_string(int(img.label)) +
                                  "; two-class training expects 0/1");
    ++per_label[img.label];
  }
  if (per_label[0] == 0 || per_label[1] == 0)
    throw std::invalid_argument(
        "dataset is single-class; training needs both labels present");
  if (cfg.train_count <= 0 || cfg.train_count >= total)
    throw std::invalid_argument("train_count " +
                                std::to_string(cfg.train_count) +
                                " must be in (0, " + std::to_string(total) +
                                ")");

  Rng split_rng(derive_seed(cfg.seed, kStreamSplit, 0));
  auto [train_set, val_set] = split_dataset(ds, cfg.train_count, split_rng);

  const CnnConfig cnn_cfg = cfg.cnn_config();
  Rng train_rng(derive_seed(cfg.seed, kStreamTrain, 0));
  auto [model, report] = train(train_set, val_set, cnn_cfg, train_rng);

  save_qcnn(cfg.model_path, model);
  write_report_csv(cfg.metrics_path, report);

  TrainSummary summary;
  if (!report.rows.empty()) {
    summary.final_val_acc = report.rows.back().val_acc;
    summary.last10_mean_val_acc = last_k_mean_val_acc(report, 10);
  }
  summary.train_wall_seconds = report.wall_seconds;

  json extra;
  extra["train_images"] = train_set.images.size();
  extra["val_images"] = val_set.images.size();
  extra["final_val_acc"] = summary.final_val_acc;
  extra["last10_mean_val_acc"] = summary.last10_mean_val_acc;
  extra["wall_seconds"] = report.wall_seconds;
  write_manifest(cfg.model_path + ".manifest.json", "train", cfg,
                 {cfg.model_path, cfg.metrics_path}, extra);
  return summary;
}

double run_eval(const std::string &checkpoint_path,
                const std::string &images_path,
                const std::string &metrics_path, int threads) {
  const CnnModel model = load_qcnn(checkpoint_path);
  const Dataset ds = read_qcim(images_path);
  const double acc = evaluate(model, ds, threads);
  std::printf("%.4f\n", acc);
  if (!metrics_path.empty()) {
    std::ofstream out(metrics_path, std::ios::app);
    if (!out)
      throw std::runtime_error("cannot append to CSV: " + metrics_path);
    char line[64];
    std::snprintf(line, sizeof(line), "eval,,,%.9g\n", acc);
    out << line;
  }
  return acc;
}

void run_verify(const VerifyOptions &opts) {
  const EnsembleSpec spec =
      parse_ensemble(opts.ensemble, opts.n_qubits, opts.depth);
  std::ofstream out(opts.out_csv);
  if (!out) throw std::runtime_error("cannot open for writing: " + opts.out_csv);
  out << "metric,value,stderr\n";
  char line[128];

  Rng rng(derive_seed(opts.seed, kStreamVerify, 0));
  const double first = first_moment_twirl_error(spec, opts.trials, rng);
  std::snprintf(line, sizeof(line), "first_moment_twirl_error,%.9g,\n", first);
  out << line;

  const double second = second_moment_twirl_error(spec, opts.trials, rng);
  std::snprintf(line, sizeof(line), "second_moment_twirl_error,%.9g,\n",
                second);
  out << line;

  for (int k = 1; k <= 2; ++k) {
    double value = 0.0, se = 0.0;
    if (opts.exact) {
      if (spec.kind != EnsembleKind::Pauli1Design)
        throw std::invalid_argument(
            "--exact frame potentials are only defined for pauli1");
      value = frame_potential_pauli_exact(opts.n_qubits, k);
    } else {
      // Ten sub-estimates give the value and its standard error.
      constexpr int kGroups = 10;
      const int per_group = std::max(1, opts.fp_pairs / kGroups);
      double sub[kGroups];
      double mean = 0.0;
      for (int g = 0; g < kGroups; ++g) {
        sub[g] = estimate_frame_potential(spec, k, per_group, rng);
        mean += sub[g];
      }
      mean /= kGroups;
      double var = 0.0;
      for (int g = 0; g < kGroups; ++g)
        var += (sub[g] - mean) * (sub[g] - mean);
      value = mean;
      se = std::sqrt(var / (kGroups * (kGroups - 1)));
    }
    std::snprintf(line, sizeof(line), "frame_potential_%d,%.9g,%.9g\n", k,
                  value, se);
    out << line;
  }

  if (opts.calibrate) {
    const CalibrationResult cal = calibrate_brickwork_depth(
        opts.n_qubits, spec.epsilon_target, rng, opts.trials);
    std::snprintf(line, sizeof(line), "calibrated_depth,%d,\n", cal.depth);
    out << line;
  }
  out.close();
  if (!out) throw std::runtime_error("write failed: " + opts.out_csv);
}

}  // namespace designet
