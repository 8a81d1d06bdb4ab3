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
// A small convolutional classifier built from scratch: two valid/stride-1
// convolutions with ReLU, a fully connected hidden layer, a two-way softmax
// head, cross-entropy loss and plain SGD. Everything is templated on the
// scalar type: training runs in float, gradient checks in double.

#ifndef DESIGNET_CNN_HPP
#define DESIGNET_CNN_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "designet/imaging.hpp"
#include "designet/kernels.hpp"
#include "designet/rng.hpp"

namespace designet {

struct CnnConfig {
  int conv1_filters = 32;
  int conv1_size = 2;
  int conv2_filters = 64;
  int conv2_size = 3;
  int fc_units = 512;
  int classes = 2;
  double learning_rate = 0.001;
  int batch_size = 100;
  int epochs = 200;
  uint64_t seed = 1;
  int threads = 1;
};

template <typename T>
struct Tensor {
  std::vector<int> shape;
  std::vector<T> data;

  Tensor() = default;
  explicit Tensor(std::vector<int> s) : shape(std::move(s)) {
    data.assign(count(), T(0));
  }
  size_t count() const {
    size_t c = 1;
    for (int d : shape) c *= static_cast<size_t>(d);
    return c;
  }
  void zero() { std::fill(data.begin(), data.end(), T(0)); }
};

/// Layer dimensions deduced from the config and input image shape.
/// Throws std::invalid_argument when a filter does not fit.
struct Topology {
  int in_h = 0, in_w = 0, in_c = 0;
  int c1_f = 0, c1_k = 0, c1_oh = 0, c1_ow = 0;
  int c2_f = 0, c2_k = 0, c2_oh = 0, c2_ow = 0;
  int flat = 0;
  int fc_units = 0;
  int classes = 0;

  static Topology deduce(const CnnConfig &cfg, int in_h, int in_w, int in_c);
  bool operator==(const Topology &) const = default;
};

template <typename T>
struct ModelT {
  Topology topo;
  Tensor<T> conv1_w, conv1_b;
  Tensor<T> conv2_w, conv2_b;
  Tensor<T> fc1_w, fc1_b;
  Tensor<T> fc2_w, fc2_b;

  std::vector<Tensor<T> *> params() {
    return {&conv1_w, &conv1_b, &conv2_w, &conv2_b,
            &fc1_w,   &fc1_b,   &fc2_w,   &fc2_b};
  }
  std::vector<const Tensor<T> *> params() const {
    return {&conv1_w, &conv1_b, &conv2_w, &conv2_b,
            &fc1_w,   &fc1_b,   &fc2_w,   &fc2_b};
  }
};

using CnnModel = ModelT<float>;

/// Weights ~ N(0, 0.1^2) drawn in declaration order, biases 0.1.
template <typename T>
ModelT<T> init_model(const Topology &topo, Rng &rng);

template <typename T>
ModelT<T> zeros_like(const ModelT<T> &model);

// ---- Layer operations (shape-checked wrappers over the kernels) ----

template <typename T>
Tensor<T> conv2d_forward(const Tensor<T> &x, const Tensor<T> &filters,
                         const Tensor<T> &bias);

template <typename T>
Tensor<T> relu(const Tensor<T> &x);

template <typename T>
Tensor<T> dense_forward(const Tensor<T> &x, const Tensor<T> &weights,
                        const Tensor<T> &bias);

/// Numerically stable softmax (max subtraction).
template <typename T>
Tensor<T> softmax(const Tensor<T> &logits);

/// -ln(probs[label]) with the probability clamped below at 1e-12.
template <typename T>
T cross_entropy(const Tensor<T> &probs, int label);

/// W <- W - lr * grad for every parameter tensor.
template <typename T>
void sgd_step(ModelT<T> &model, const ModelT<T> &grads, T lr);

/// Per-example activations recorded by the forward pass for backprop.
template <typename T>
struct ForwardTrace {
  Tensor<T> x, z1, a1, z2, a2, z3, a3, logits, probs;
};

template <typename T>
void forward(const ModelT<T> &model, const Tensor<T> &x,
             ForwardTrace<T> &trace);

/// Accumulates the gradient of cross_entropy(softmax(...), label) for one
/// example into `grads` and returns the example's loss.
template <typename T>
T backward(const ModelT<T> &model, const ForwardTrace<T> &trace, int label,
           ModelT<T> &grads);

/// Mean loss and mean analytic gradients over a batch (used directly by the
/// finite-difference checks; training uses the same path per mini-batch).
template <typename T>
T loss_and_grads(const ModelT<T> &model, const std::vector<Tensor<T>> &images,
                 const std::vector<int> &labels, ModelT<T> &grads);

template <typename T>
T batch_loss(const ModelT<T> &model, const std::vector<Tensor<T>> &images,
             const std::vector<int> &labels);

/// batch_loss plus a hash of every ReLU input sign. The finite-difference
/// checks compare the hash at the two stencil points and resample probes
/// whose stencil straddles a kink, where no derivative exists for the
/// central difference to estimate.
template <typename T>
T batch_loss_pattern(const ModelT<T> &model,
                     const std::vector<Tensor<T>> &images,
                     const std::vector<int> &labels, uint64_t &pattern);

/// Image pixels scaled to [0, 1].
template <typename T>
Tensor<T> image_to_tensor(const LabeledImage &img);

// ---- Training ----

struct TrainReport {
  struct Row {
    int epoch = 0;  // 1-based
    double train_loss = 0.0;
    double train_acc = 0.0;
    double val_acc = 0.0;
  };
  std::vector<Row> rows;
  double wall_seconds = 0.0;
};

/// Shuffled mini-batch SGD for cfg.epochs epochs. Gradients accumulate in
/// fixed-size chunks that are reduced in a fixed order, so results are
/// bit-identical at any thread count.
std::pair<CnnModel, TrainReport> train(const Dataset &train_set,
                                       const Dataset &val_set,
                                       const CnnConfig &cfg, Rng &rng);

/// Fraction of argmax-correct predictions.
double evaluate(const CnnModel &model, const Dataset &ds, int threads = 1);

/// Mean validation accuracy over the last k epochs of a report.
double last_k_mean_val_acc(const TrainReport &report, int k = 10);

// ---- Persistence ----

// QCNN checkpoint, little-endian: magic "QCNN", version u16=1, then the
// topology block (layer count u8; per layer: kind u8 followed by its dims
// as u32s; kinds: 0=input [H,W,C], 1=conv [F,k,k,C], 2=dense [units,in]),
// then all parameters as f32 in declaration order (each layer's weights
// then biases).

void save_qcnn(const std::string &path, const CnnModel &model);
CnnModel load_qcnn(const std::string &path);

/// CSV with header epoch,train_loss,train_acc,val_acc.
void write_report_csv(const std::string &path, const TrainReport &report);

}  // namespace designet

#endif  // DESIGNET_CNN_HPP
