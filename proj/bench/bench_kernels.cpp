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
//
// Serial-vs-OpenMP comparisons for the hot kernels and pipeline stages.

#include <benchmark/benchmark.h>

#include "designet/cli.hpp"
#include "designet/cnn.hpp"
#include "designet/correlators.hpp"
#include "designet/kernels.hpp"

using namespace designet;

namespace {

CMatrix random_matrix(Eigen::Index d, Rng &rng) {
  CMatrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = rng.complex_normal();
  return m;
}

void BM_MatvecSerial(benchmark::State &state) {
  const Eigen::Index d = state.range(0);
  Rng rng(1);
  const CMatrix m = random_matrix(d, rng);
  CVector x(d), y(d);
  for (Eigen::Index k = 0; k < d; ++k) x[k] = rng.complex_normal();
  for (auto _ : state) {
    ref::matvec_serial(m, x.data(), y.data());
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_MatvecOmp(benchmark::State &state) {
  const Eigen::Index d = state.range(0);
  Rng rng(1);
  const CMatrix m = random_matrix(d, rng);
  CVector x(d), y(d);
  for (Eigen::Index k = 0; k < d; ++k) x[k] = rng.complex_normal();
  for (auto _ : state) {
    matvec(m, x.data(), y.data());
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_GateColumnsSerial(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::Index d = Eigen::Index{1} << n;
  Rng rng(2);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d);
  const Eigen::Matrix4cd gate = Eigen::Matrix4cd::NullaryExpr(
      [&](Eigen::Index, Eigen::Index) { return rng.complex_normal(); });
  for (auto _ : state) {
    ref::apply_two_qubit_gate_columns_serial(m, gate, n, 0);
    benchmark::DoNotOptimize(m.data());
  }
}

void BM_GateColumnsOmp(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::Index d = Eigen::Index{1} << n;
  Rng rng(2);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d);
  const Eigen::Matrix4cd gate = Eigen::Matrix4cd::NullaryExpr(
      [&](Eigen::Index, Eigen::Index) { return rng.complex_normal(); });
  for (auto _ : state) {
    apply_two_qubit_gate_columns(m, gate, n, 0);
    benchmark::DoNotOptimize(m.data());
  }
}

void BM_HaarUnitary(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  for (auto _ : state) {
    const DenseUnitary u = haar_unitary(n, rng);
    benchmark::DoNotOptimize(u.mat.data());
  }
}

// One OTOC sample matrix via the cached production path vs the per-term
// reference summation.
void BM_SampleMatrixFast(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  const CorrelatorSpec spec = catalog("xxyy");
  const EnsembleSpec ens = parse_ensemble("haar", n);
  uint64_t seed = 1;
  for (auto _ : state) {
    const SampleMatrix sm = sample_matrix(spec, ens, 2, seed++);
    benchmark::DoNotOptimize(sm.entries.data());
  }
}

void BM_SampleMatrixPerTerm(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  const CorrelatorSpec spec = catalog("xxyy");
  const EnsembleSpec ens = parse_ensemble("haar", n);
  uint64_t seed = 1;
  for (auto _ : state) {
    Rng rng(seed++);
    Eigen::MatrixXcd entries = Eigen::MatrixXcd::Zero(n, n);
    for (int t = 0; t < 2; ++t) {
      const StateVector sigma = random_state(n, rng);
      const UnitaryRep u = sample(ens, rng);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          entries(i, j) += sample_term(sigma, u, spec, i, j);
    }
    benchmark::DoNotOptimize(entries.data());
  }
}

Dataset bench_dataset(int count) {
  Rng rng(4);
  Dataset ds;
  ds.height = 10;
  ds.width = 10;
  for (int k = 0; k < count; ++k) {
    LabeledImage img;
    img.height = 10;
    img.width = 10;
    img.label = static_cast<uint8_t>(k % 2);
    img.pixels.resize(300);
    for (auto &px : img.pixels)
      px = static_cast<uint8_t>(rng.uniform_below(256));
    ds.images.push_back(std::move(img));
  }
  return ds;
}

void BM_TrainEpoch(benchmark::State &state) {
  const int threads = static_cast<int>(state.range(0));
  const Dataset ds = bench_dataset(200);
  CnnConfig cfg;
  cfg.epochs = 1;
  cfg.threads = threads;
  for (auto _ : state) {
    Rng rng(5);
    auto [model, report] = train(ds, ds, cfg, rng);
    benchmark::DoNotOptimize(report.rows.data());
  }
}

}  // namespace

BENCHMARK(BM_MatvecSerial)->Arg(256)->Arg(1024);
BENCHMARK(BM_MatvecOmp)->Arg(256)->Arg(1024);
BENCHMARK(BM_GateColumnsSerial)->Arg(8)->Arg(10);
BENCHMARK(BM_GateColumnsOmp)->Arg(8)->Arg(10);
BENCHMARK(BM_HaarUnitary)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleMatrixFast)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleMatrixPerTerm)
    ->Arg(6)
    ->Arg(10)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrainEpoch)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
