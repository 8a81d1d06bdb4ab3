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

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "designet/cli.hpp"

namespace {

using designet::ExperimentConfig;

// Options shared by the pipeline subcommands. Command-line values override
// the config file.
struct CommonOpts {
  std::string config_path;
  std::vector<std::string> overrides;  // key=value pairs

  ExperimentConfig resolve() const {
    ExperimentConfig cfg = config_path.empty()
                               ? ExperimentConfig{}
                               : designet::load_config(config_path);
    for (const std::string &kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("--set expects key=value, got '" + kv +
                                    "'");
      designet::apply_config_entry(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
  }
};

void add_common(CLI::App *cmd, CommonOpts &common, ExperimentConfig &direct) {
  cmd->add_option("--config", common.config_path,
                  "key=value experiment config file");
  cmd->add_option("--set", common.overrides,
                  "override a config key (key=value, repeatable)");
  cmd->add_option("--seed", direct.seed, "master seed");
  cmd->add_option("--threads", direct.threads, "worker threads");
  cmd->add_option("--n-qubits", direct.n_qubits, "system size N");
  cmd->add_option("--correlator", direct.correlator,
                  "xyxy | xxyy | xy2pt | zz2pt");
  cmd->add_option("--ensemble-a", direct.ensemble_a,
                  "class-0 ensemble (pauli1 | brickwork2 | haar)");
  cmd->add_option("--ensemble-b", direct.ensemble_b, "class-1 ensemble");
  cmd->add_option("--images-per-class", direct.images_per_class,
                  "records per class");
  cmd->add_option("--batch-m", direct.batch_m, "terms per correlator sample");
  cmd->add_option("--train-count", direct.train_count,
                  "training split size");
  cmd->add_option("--epochs", direct.epochs, "training epochs");
}

// Returns cfg with explicitly passed direct flags taking precedence over
// the config file / --set pairs.
ExperimentConfig merge(const CLI::App *cmd, const CommonOpts &common,
                       const ExperimentConfig &direct) {
  ExperimentConfig cfg = common.resolve();
  auto passed = [cmd](const std::string &name) {
    return cmd->count(name) > 0;
  };
  if (passed("--seed")) cfg.seed = direct.seed;
  if (passed("--threads")) cfg.threads = direct.threads;
  if (passed("--n-qubits")) cfg.n_qubits = direct.n_qubits;
  if (passed("--correlator")) cfg.correlator = direct.correlator;
  if (passed("--ensemble-a")) cfg.ensemble_a = direct.ensemble_a;
  if (passed("--ensemble-b")) cfg.ensemble_b = direct.ensemble_b;
  if (passed("--images-per-class"))
    cfg.images_per_class = direct.images_per_class;
  if (passed("--batch-m")) cfg.batch_m = direct.batch_m;
  if (passed("--train-count")) cfg.train_count = direct.train_count;
  if (passed("--epochs")) cfg.epochs = direct.epochs;
  return cfg;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"correlator-sample imaging and ensemble classification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", designet::kToolVersion);

  CommonOpts common;
  ExperimentConfig direct;
  std::string out_path, in_path, checkpoint, metrics;

  CLI::App *generate =
      app.add_subcommand("generate", "sample correlators into a QCSM file");
  add_common(generate, common, direct);
  generate->add_option("--out", out_path, "output QCSM path");

  CLI::App *encode =
      app.add_subcommand("encode", "QCSM samples -> QCIM image dataset");
  add_common(encode, common, direct);
  encode->add_option("--in", in_path, "input QCSM path");
  encode->add_option("--out", out_path, "output QCIM path");
  std::string png_dir;
  encode->add_option("--png-dir", png_dir,
                     "also export one PNG per image into this directory");

  CLI::App *train_cmd =
      app.add_subcommand("train", "train the classifier on a QCIM dataset");
  add_common(train_cmd, common, direct);
  train_cmd->add_option("--in", in_path, "input QCIM path");
  train_cmd->add_option("--out", out_path, "output checkpoint path");

  CLI::App *eval_cmd =
      app.add_subcommand("eval", "evaluate a checkpoint on a QCIM dataset");
  eval_cmd->add_option("--checkpoint", checkpoint, "QCNN checkpoint path")
      ->required();
  eval_cmd->add_option("--in", in_path, "input QCIM path")->required();
  eval_cmd->add_option("--metrics", metrics,
                       "CSV to append the eval row to (optional)");
  int eval_threads = 1;
  eval_cmd->add_option("--threads", eval_threads, "worker threads");

  designet::VerifyOptions vopts;
  CLI::App *verify =
      app.add_subcommand("verify", "design-order oracles -> metrics CSV");
  verify->add_option("--ensemble", vopts.ensemble,
                     "pauli1 | brickwork2 | haar");
  verify->add_option("--n-qubits", vopts.n_qubits, "system size N");
  verify->add_option("--trials", vopts.trials, "twirl-oracle samples");
  verify->add_option("--pairs", vopts.fp_pairs, "frame-potential pairs");
  verify->add_option("--seed", vopts.seed, "master seed");
  int vdepth = 0;
  verify->add_option("--depth", vdepth, "brickwork depth");
  verify->add_flag("--exact", vopts.exact,
                   "exhaustive Pauli frame potential");
  verify->add_flag("--calibrate", vopts.calibrate,
                   "also calibrate brickwork depth");
  verify->add_option("--out", vopts.out_csv, "output CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      ExperimentConfig cfg = merge(generate, common, direct);
      if (!out_path.empty()) cfg.samples_path = out_path;
      designet::run_generate(cfg);
      std::fprintf(stderr, "wrote %s\n", cfg.samples_path.c_str());
    } else if (encode->parsed()) {
      ExperimentConfig cfg = merge(encode, common, direct);
      if (!in_path.empty()) cfg.samples_path = in_path;
      if (!out_path.empty()) cfg.images_path = out_path;
      designet::run_encode(cfg, cfg.samples_path, cfg.images_path, png_dir);
      std::fprintf(stderr, "wrote %s\n", cfg.images_path.c_str());
    } else if (train_cmd->parsed()) {
      ExperimentConfig cfg = merge(train_cmd, common, direct);
      if (!in_path.empty()) cfg.images_path = in_path;
      if (!out_path.empty()) cfg.model_path = out_path;
      const designet::TrainSummary s = designet::run_train(cfg, cfg.images_path);
      std::fprintf(stderr,
                   "trained in %.1fs: final val acc %.4f, last-10 mean %.4f\n",
                   s.train_wall_seconds, s.final_val_acc,
                   s.last10_mean_val_acc);
    } else if (eval_cmd->parsed()) {
      designet::run_eval(checkpoint, in_path, metrics, eval_threads);
    } else if (verify->parsed()) {
      if (verify->count("--depth")) vopts.depth = vdepth;
      designet::run_verify(vopts);
      std::fprintf(stderr, "wrote %s\n", vopts.out_csv.c_str());
    }
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
