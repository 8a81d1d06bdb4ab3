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

#include "designet/cnn.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>

#include "designet/io_util.hpp"

namespace designet {

namespace {

// Mini-batch gradients accumulate in fixed chunks of this many examples;
// chunks run in parallel and are reduced in index order, which keeps
// training bit-identical at any thread count.
constexpr int kGradChunkSize = 10;

void check_counts(const CnnConfig &cfg) {
  if (cfg.conv1_filters < 1 || cfg.conv1_size < 1 || cfg.conv2_filters < 1 ||
      cfg.conv2_size < 1 || cfg.fc_units < 1 || cfg.classes < 1 ||
      cfg.batch_size < 1)
    throw std::invalid_argument("all CnnConfig counts must be >= 1");
  if (!(cfg.learning_rate > 0.0))
    throw std::invalid_argument("learning rate must be positive");
  if (cfg.epochs < 0)
    throw std::invalid_argument("epochs must be non-negative");
}

template <typename T>
int argmax(const Tensor<T> &t) {
  return static_cast<int>(
      std::max_element(t.data.begin(), t.data.end()) - t.data.begin());
}

}  // namespace

Topology Topology::deduce(const CnnConfig &cfg, int in_h, int in_w,
                          int in_c) {
  check_counts(cfg);
  Topology t;
  t.in_h = in_h;
  t.in_w = in_w;
  t.in_c = in_c;
  t.c1_f = cfg.conv1_filters;
  t.c1_k = cfg.conv1_size;
  t.c1_oh = in_h - cfg.conv1_size + 1;
  t.c1_ow = in_w - cfg.conv1_size + 1;
  t.c2_f = cfg.conv2_filters;
  t.c2_k = cfg.conv2_size;
  t.c2_oh = t.c1_oh - cfg.conv2_size + 1;
  t.c2_ow = t.c1_ow - cfg.conv2_size + 1;
  if (in_h < 1 || in_w < 1 || in_c < 1 || t.c1_oh < 1 || t.c1_ow < 1 ||
      t.c2_oh < 1 || t.c2_ow < 1)
    throw std::invalid_argument(
        "convolution filters do not fit the " + std::to_string(in_h) + "x" +
        std::to_string(in_w) + " input");
  t.flat = t.c2_oh * t.c2_ow * t.c2_f;
  t.fc_units = cfg.fc_units;
  t.classes = cfg.classes;
  return t;
}

template <typename T>
ModelT<T> init_model(const Topology &topo, Rng &rng) {
  ModelT<T> m;
  m.topo = topo;
  m.conv1_w = Tensor<T>({topo.c1_f, topo.c1_k, topo.c1_k, topo.in_c});
  m.conv1_b = Tensor<T>({topo.c1_f});
  m.conv2_w = Tensor<T>({topo.c2_f, topo.c2_k, topo.c2_k, topo.c1_f});
  m.conv2_b = Tensor<T>({topo.c2_f});
  m.fc1_w = Tensor<T>({topo.fc_units, topo.flat});
  m.fc1_b = Tensor<T>({topo.fc_units});
  m.fc2_w = Tensor<T>({topo.classes, topo.fc_units});
  m.fc2_b = Tensor<T>({topo.classes});
  for (Tensor<T> *w : {&m.conv1_w, &m.conv2_w, &m.fc1_w, &m.fc2_w})
    for (T &v : w->data) v = static_cast<T>(0.1 * rng.normal());
  for (Tensor<T> *b : {&m.conv1_b, &m.conv2_b, &m.fc1_b, &m.fc2_b})
    std::fill(b->data.begin(), b->data.end(), static_cast<T>(0.1));
  return m;
}

template <typename T>
ModelT<T> zeros_like(const ModelT<T> &model) {
  ModelT<T> z;
  z.topo = model.topo;
  auto src = model.params();
  auto dst = z.params();
  for (size_t k = 0; k < src.size(); ++k) *dst[k] = Tensor<T>(src[k]->shape);
  return z;
}

template <typename T>
Tensor<T> conv2d_forward(const Tensor<T> &x, const Tensor<T> &filters,
                         const Tensor<T> &bias) {
  if (x.shape.size() != 3 || filters.shape.size() != 4 ||
      bias.shape.size() != 1)
    throw std::invalid_argument("conv2d expects x[H,W,C], w[F,k,k,C], b[F]");
  const int h = x.shape[0], w = x.shape[1], c = x.shape[2];
  const int f = filters.shape[0], k = filters.shape[1];
  if (filters.shape[2] != k || filters.shape[3] != c || bias.shape[0] != f)
    throw std::invalid_argument("conv2d filter/bias shapes are inconsistent");
  if (h < k || w < k)
    throw std::invalid_argument("conv2d input smaller than the filter");
  Tensor<T> out({h - k + 1, w - k + 1, f});
  conv2d_forward_kernel(x.data.data(), h, w, c, filters.data.data(), f, k,
                        bias.data.data(), out.data.data());
  return out;
}

template <typename T>
Tensor<T> relu(const Tensor<T> &x) {
  Tensor<T> out = x;
  relu_forward_kernel(out.data.data(), out.data.size());
  return out;
}

template <typename T>
Tensor<T> dense_forward(const Tensor<T> &x, const Tensor<T> &weights,
                        const Tensor<T> &bias) {
  if (weights.shape.size() != 2 || bias.shape.size() != 1)
    throw std::invalid_argument("dense expects w[m,n], b[m]");
  const int m = weights.shape[0], n = weights.shape[1];
  if (static_cast<size_t>(n) != x.count() || bias.shape[0] != m)
    throw std::invalid_argument("dense input/weight shapes are inconsistent");
  Tensor<T> out({m});
  dense_forward_kernel(x.data.data(), n, weights.data.data(), m,
                       bias.data.data(), out.data.data());
  return out;
}

template <typename T>
Tensor<T> softmax(const Tensor<T> &logits) {
  Tensor<T> out = logits;
  const T mx = *std::max_element(out.data.begin(), out.data.end());
  T sum = T(0);
  for (T &v : out.data) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (T &v : out.data) v /= sum;
  return out;
}

template <typename T>
T cross_entropy(const Tensor<T> &probs, int label) {
  if (label < 0 || static_cast<size_t>(label) >= probs.data.size())
    throw std::out_of_range("class label out of range");
  const T p = std::max(probs.data[static_cast<size_t>(label)],
                       static_cast<T>(1e-12));
  return -std::log(p);
}

template <typename T>
void sgd_step(ModelT<T> &model, const ModelT<T> &grads, T lr) {
  auto p = model.params();
  auto g = grads.params();
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k]->shape != g[k]->shape)
      throw std::invalid_argument("gradient shape does not match parameter");
    T *pd = p[k]->data.data();
    const T *gd = g[k]->data.data();
    const size_t n = p[k]->data.size();
    for (size_t i = 0; i < n; ++i) pd[i] -= lr * gd[i];
  }
}

template <typename T>
void forward(const ModelT<T> &model, const Tensor<T> &x,
             ForwardTrace<T> &trace) {
  const Topology &t = model.topo;
  if (x.shape != std::vector<int>{t.in_h, t.in_w, t.in_c})
    throw std::invalid_argument("input image does not match model topology");
  trace.x = x;
  trace.z1 = conv2d_forward(x, model.conv1_w, model.conv1_b);
  trace.a1 = relu(trace.z1);
  trace.z2 = conv2d_forward(trace.a1, model.conv2_w, model.conv2_b);
  trace.a2 = relu(trace.z2);
  Tensor<T> flat = trace.a2;
  flat.shape = {t.flat};
  trace.z3 = dense_forward(flat, model.fc1_w, model.fc1_b);
  trace.a3 = relu(trace.z3);
  trace.logits = dense_forward(trace.a3, model.fc2_w, model.fc2_b);
  trace.probs = softmax(trace.logits);
}

template <typename T>
T backward(const ModelT<T> &model, const ForwardTrace<T> &trace, int label,
           ModelT<T> &grads) {
  const Topology &t = model.topo;
  const T loss = cross_entropy(trace.probs, label);

  // Softmax + cross-entropy head: dlogits = probs - onehot.
  Tensor<T> dlogits = trace.probs;
  dlogits.data[static_cast<size_t>(label)] -= T(1);

  Tensor<T> da3({t.fc_units});
  dense_backward_kernel(trace.a3.data.data(), t.fc_units,
                        model.fc2_w.data.data(), t.classes,
                        dlogits.data.data(), grads.fc2_w.data.data(),
                        grads.fc2_b.data.data(), da3.data.data());
  relu_backward_kernel(trace.z3.data.data(), da3.data.data(),
                       da3.data.size());

  Tensor<T> dflat({t.flat});
  dense_backward_kernel(trace.a2.data.data(), t.flat,
                        model.fc1_w.data.data(), t.fc_units, da3.data.data(),
                        grads.fc1_w.data.data(), grads.fc1_b.data.data(),
                        dflat.data.data());
  relu_backward_kernel(trace.z2.data.data(), dflat.data.data(),
                       dflat.data.size());

  Tensor<T> da1({t.c1_oh, t.c1_ow, t.c1_f});
  conv2d_backward_kernel(trace.a1.data.data(), t.c1_oh, t.c1_ow, t.c1_f,
                         model.conv2_w.data.data(), t.c2_f, t.c2_k,
                         dflat.data.data(), grads.conv2_w.data.data(),
                         grads.conv2_b.data.data(), da1.data.data());
  relu_backward_kernel(trace.z1.data.data(), da1.data.data(),
                       da1.data.size());

  conv2d_backward_kernel(trace.x.data.data(), t.in_h, t.in_w, t.in_c,
                         model.conv1_w.data.data(), t.c1_f, t.c1_k,
                         da1.data.data(), grads.conv1_w.data.data(),
                         grads.conv1_b.data.data(),
                         static_cast<T *>(nullptr));
  return loss;
}

template <typename T>
T loss_and_grads(const ModelT<T> &model, const std::vector<Tensor<T>> &images,
                 const std::vector<int> &labels, ModelT<T> &grads) {
  if (images.empty() || images.size() != labels.size())
    throw std::invalid_argument("batch images/labels mismatch");
  for (Tensor<T> *g : grads.params()) g->zero();
  ForwardTrace<T> trace;
  T loss_sum = T(0);
  for (size_t e = 0; e < images.size(); ++e) {
    forward(model, images[e], trace);
    loss_sum += backward(model, trace, labels[e], grads);
  }
  const T inv = T(1) / static_cast<T>(images.size());
  for (Tensor<T> *g : grads.params())
    for (T &v : g->data) v *= inv;
  return loss_sum * inv;
}

template <typename T>
T batch_loss(const ModelT<T> &model, const std::vector<Tensor<T>> &images,
             const std::vector<int> &labels) {
  if (images.empty() || images.size() != labels.size())
    throw std::invalid_argument("batch images/labels mismatch");
  ForwardTrace<T> trace;
  T loss_sum = T(0);
  for (size_t e = 0; e < images.size(); ++e) {
    forward(model, images[e], trace);
    loss_sum += cross_entropy(trace.probs, labels[e]);
  }
  return loss_sum / static_cast<T>(images.size());
}

template <typename T>
T batch_loss_pattern(const ModelT<T> &model,
                     const std::vector<Tensor<T>> &images,
                     const std::vector<int> &labels, uint64_t &pattern) {
  if (images.empty() || images.size() != labels.size())
    throw std::invalid_argument("batch images/labels mismatch");
  ForwardTrace<T> trace;
  T loss_sum = T(0);
  uint64_t h = 0xcbf29ce484222325ull;
  for (size_t e = 0; e < images.size(); ++e) {
    forward(model, images[e], trace);
    loss_sum += cross_entropy(trace.probs, labels[e]);
    for (const Tensor<T> *z : {&trace.z1, &trace.z2, &trace.z3}) {
      for (const T v : z->data) {
        h ^= (v > T(0)) ? 0x9eull : 0x31ull;
        h *= 0x100000001b3ull;
      }
    }
  }
  pattern = h;
  return loss_sum / static_cast<T>(images.size());
}

template <typename T>
Tensor<T> image_to_tensor(const LabeledImage &img) {
  Tensor<T> t({img.height, img.width, 3});
  for (size_t k = 0; k < img.pixels.size(); ++k)
    t.data[k] = static_cast<T>(img.pixels[k]) / T(255);
  return t;
}

namespace {

double evaluate_tensors(const CnnModel &model,
                        const std::vector<Tensor<float>> &images,
                        const std::vector<int> &labels, int threads) {
  if (images.empty())
    throw std::invalid_argument("cannot evaluate an empty dataset");
  std::vector<uint8_t> hit(images.size(), 0);
  const int64_t total = static_cast<int64_t>(images.size());
#pragma omp parallel num_threads(std::max(1, threads))
  {
    ForwardTrace<float> trace;
#pragma omp for schedule(static)
    for (int64_t e = 0; e < total; ++e) {
      forward(model, images[static_cast<size_t>(e)], trace);
      hit[static_cast<size_t>(e)] =
          argmax(trace.probs) == labels[static_cast<size_t>(e)] ? 1 : 0;
    }
  }
  int64_t correct = 0;
  for (uint8_t h : hit) correct += h;
  return static_cast<double>(correct) / static_cast<double>(total);
}

void dataset_to_tensors(const Dataset &ds, int classes,
                        std::vector<Tensor<float>> &images,
                        std::vector<int> &labels) {
  images.clear();
  labels.clear();
  images.reserve(ds.images.size());
  labels.reserve(ds.images.size());
  for (const LabeledImage &img : ds.images) {
    if (img.height != ds.height || img.width != ds.width)
      throw std::invalid_argument("dataset images have mixed dimensions");
    if (img.label >= classes)
      throw std::invalid_argument("image label " +
                                  std::to_string(int(img.label)) +
                                  " exceeds class count");
    images.push_back(image_to_tensor<float>(img));
    labels.push_back(img.label);
  }
}

}  // namespace

std::pair<CnnModel, TrainReport> train(const Dataset &train_set,
                                       const Dataset &val_set,
                                       const CnnConfig &cfg, Rng &rng) {
  check_counts(cfg);
  if (train_set.images.empty())
    throw std::invalid_argument("training set is empty");
  const Topology topo =
      Topology::deduce(cfg, train_set.height, train_set.width, 3);
  if (!val_set.images.empty() &&
      (val_set.height != train_set.height || val_set.width != train_set.width))
    throw std::invalid_argument("validation images do not match training "
                                "dimensions");

  std::vector<Tensor<float>> train_x, val_x;
  std::vector<int> train_y, val_y;
  dataset_to_tensors(train_set, cfg.classes, train_x, train_y);
  dataset_to_tensors(val_set, cfg.classes, val_x, val_y);

  const auto t_start = std::chrono::steady_clock::now();
  CnnModel model = init_model<float>(topo, rng);
  TrainReport report;
  if (cfg.epochs == 0) return {std::move(model), std::move(report)};

  const int n = static_cast<int>(train_x.size());
  const int max_chunks = (cfg.batch_size + kGradChunkSize - 1) / kGradChunkSize;
  std::vector<CnnModel> chunk_grads;
  chunk_grads.reserve(static_cast<size_t>(max_chunks));
  for (int k = 0; k < max_chunks; ++k) chunk_grads.push_back(zeros_like(model));
  std::vector<ForwardTrace<float>> traces(static_cast<size_t>(max_chunks));
  CnnModel grads = zeros_like(model);
  const float lr = static_cast<float>(cfg.learning_rate);

  std::vector<int> order(static_cast<size_t>(n));
  std::vector<float> losses(static_cast<size_t>(n));
  std::vector<uint8_t> hits(static_cast<size_t>(n));

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    for (int k = 0; k < n; ++k) order[static_cast<size_t>(k)] = k;
    for (int k = n - 1; k > 0; --k)
      std::swap(order[static_cast<size_t>(k)],
                order[rng.uniform_below(static_cast<uint64_t>(k) + 1)]);

    for (int start = 0; start < n; start += cfg.batch_size) {
      const int bcount = std::min(cfg.batch_size, n - start);
      const int nchunks = (bcount + kGradChunkSize - 1) / kGradChunkSize;
#pragma omp parallel for num_threads(std::max(1, cfg.threads)) \
    schedule(static)
      for (int chunk = 0; chunk < nchunks; ++chunk) {
        CnnModel &cg = chunk_grads[static_cast<size_t>(chunk)];
        for (Tensor<float> *g : cg.params()) g->zero();
        ForwardTrace<float> &trace = traces[static_cast<size_t>(chunk)];
        const int from = start + chunk * kGradChunkSize;
        const int to = std::min(from + kGradChunkSize, start + bcount);
        for (int e = from; e < to; ++e) {
          const int idx = order[static_cast<size_t>(e)];
          forward(model, train_x[static_cast<size_t>(idx)], trace);
          losses[static_cast<size_t>(e)] =
              backward(model, trace, train_y[static_cast<size_t>(idx)], cg);
          hits[static_cast<size_t>(e)] =
              argmax(trace.probs) == train_y[static_cast<size_t>(idx)] ? 1
                                                                       : 0;
        }
      }
      // Fixed-order reduction over chunks, then the mean over the batch.
      for (Tensor<float> *g : grads.params()) g->zero();
      for (int chunk = 0; chunk < nchunks; ++chunk) {
        auto src = chunk_grads[static_cast<size_t>(chunk)].params();
        auto dst = grads.params();
        for (size_t k = 0; k < src.size(); ++k) {
          const float *s = src[k]->data.data();
          float *d = dst[k]->data.data();
          for (size_t i = 0; i < src[k]->data.size(); ++i) d[i] += s[i];
        }
      }
      const float inv = 1.0f / static_cast<float>(bcount);
      for (Tensor<float> *g : grads.params())
        for (float &v : g->data) v *= inv;
      sgd_step(model, grads, lr);
    }

    double loss_sum = 0.0;
    int64_t correct = 0;
    for (int e = 0; e < n; ++e) {
      loss_sum += losses[static_cast<size_t>(e)];
      correct += hits[static_cast<size_t>(e)];
    }
    TrainReport::Row row;
    row.epoch = epoch;
    row.train_loss = loss_sum / n;
    row.train_acc = static_cast<double>(correct) / n;
    row.val_acc = val_x.empty()
                      ? 0.0
                      : evaluate_tensors(model, val_x, val_y, cfg.threads);
    report.rows.push_back(row);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return {std::move(model), std::move(report)};
}

double evaluate(const CnnModel &model, const Dataset &ds, int threads) {
  if (ds.images.empty())
    throw std::invalid_argument("cannot evaluate an empty dataset");
  if (ds.height != model.topo.in_h || ds.width != model.topo.in_w)
    throw std::invalid_argument(
        "dataset images are " + std::to_string(ds.height) + "x" +
        std::to_string(ds.width) + " but the model expects " +
        std::to_string(model.topo.in_h) + "x" +
        std::to_string(model.topo.in_w));
  std::vector<Tensor<float>> images;
  std::vector<int> labels;
  dataset_to_tensors(ds, model.topo.classes, images, labels);
  return evaluate_tensors(model, images, labels, threads);
}

double last_k_mean_val_acc(const TrainReport &report, int k) {
  if (report.rows.empty())
    throw std::invalid_argument("empty training report");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const size_t take = std::min(static_cast<size_t>(k), report.rows.size());
  double sum = 0.0;
  for (size_t i = report.rows.size() - take; i < report.rows.size(); ++i)
    sum += report.rows[i].val_acc;
  return sum / static_cast<double>(take);
}

namespace {

constexpr uint8_t kLayerInput = 0;
constexpr uint8_t kLayerConv = 1;
constexpr uint8_t kLayerDense = 2;

void write_params(BinaryWriter &w, const CnnModel &model) {
  for (const Tensor<float> *p : model.params())
    for (float v : p->data) w.f32(v);
}

}  // namespace

void save_qcnn(const std::string &path, const CnnModel &model) {
  const Topology &t = model.topo;
  BinaryWriter w(path);
  w.bytes("QCNN", 4);
  w.u16(1);
  w.u8(5);  // input, conv, conv, dense, dense
  w.u8(kLayerInput);
  w.u32(static_cast<uint32_t>(t.in_h));
  w.u32(static_cast<uint32_t>(t.in_w));
  w.u32(static_cast<uint32_t>(t.in_c));
  w.u8(kLayerConv);
  w.u32(static_cast<uint32_t>(t.c1_f));
  w.u32(static_cast<uint32_t>(t.c1_k));
  w.u32(static_cast<uint32_t>(t.c1_k));
  w.u32(static_cast<uint32_t>(t.in_c));
  w.u8(kLayerConv);
  w.u32(static_cast<uint32_t>(t.c2_f));
  w.u32(static_cast<uint32_t>(t.c2_k));
  w.u32(static_cast<uint32_t>(t.c2_k));
  w.u32(static_cast<uint32_t>(t.c1_f));
  w.u8(kLayerDense);
  w.u32(static_cast<uint32_t>(t.fc_units));
  w.u32(static_cast<uint32_t>(t.flat));
  w.u8(kLayerDense);
  w.u32(static_cast<uint32_t>(t.classes));
  w.u32(static_cast<uint32_t>(t.fc_units));
  write_params(w, model);
  w.close();
}

CnnModel load_qcnn(const std::string &path) {
  BinaryReader r(path);
  r.expect_magic("QCNN");
  const uint16_t version = r.u16();
  if (version != 1)
    throw format_error(path + ": unsupported QCNN version " +
                       std::to_string(version));
  const uint8_t layers = r.u8();
  if (layers != 5)
    throw format_error(path + ": expected 5 topology records, got " +
                       std::to_string(layers));
  auto expect_kind = [&](uint8_t kind) {
    const uint8_t got = r.u8();
    if (got != kind)
      throw format_error(path + ": unexpected layer kind " +
                         std::to_string(got) + " at byte offset " +
                         std::to_string(r.offset() - 1));
  };
  CnnConfig cfg;
  expect_kind(kLayerInput);
  const int in_h = static_cast<int>(r.u32());
  const int in_w = static_cast<int>(r.u32());
  const int in_c = static_cast<int>(r.u32());
  expect_kind(kLayerConv);
  cfg.conv1_filters = static_cast<int>(r.u32());
  cfg.conv1_size = static_cast<int>(r.u32());
  const int c1_k2 = static_cast<int>(r.u32());
  const int c1_in = static_cast<int>(r.u32());
  expect_kind(kLayerConv);
  cfg.conv2_filters = static_cast<int>(r.u32());
  cfg.conv2_size = static_cast<int>(r.u32());
  const int c2_k2 = static_cast<int>(r.u32());
  const int c2_in = static_cast<int>(r.u32());
  expect_kind(kLayerDense);
  cfg.fc_units = static_cast<int>(r.u32());
  const int fc_in = static_cast<int>(r.u32());
  expect_kind(kLayerDense);
  cfg.classes = static_cast<int>(r.u32());
  const int head_in = static_cast<int>(r.u32());

  if (in_c != 3 || c1_k2 != cfg.conv1_size || c2_k2 != cfg.conv2_size ||
      c1_in != in_c || c2_in != cfg.conv1_filters ||
      head_in != cfg.fc_units)
    throw format_error(path + ": inconsistent topology block");
  Topology topo = Topology::deduce(cfg, in_h, in_w, in_c);
  if (topo.flat != fc_in)
    throw format_error(path + ": flattened size does not match topology");

  CnnModel model;
  model.topo = topo;
  model.conv1_w = Tensor<float>({topo.c1_f, topo.c1_k, topo.c1_k, topo.in_c});
  model.conv1_b = Tensor<float>({topo.c1_f});
  model.conv2_w = Tensor<float>({topo.c2_f, topo.c2_k, topo.c2_k, topo.c1_f});
  model.conv2_b = Tensor<float>({topo.c2_f});
  model.fc1_w = Tensor<float>({topo.fc_units, topo.flat});
  model.fc1_b = Tensor<float>({topo.fc_units});
  model.fc2_w = Tensor<float>({topo.classes, topo.fc_units});
  model.fc2_b = Tensor<float>({topo.classes});
  for (Tensor<float> *p : model.params())
    for (float &v : p->data) v = r.f32();
  return model;
}

void write_report_csv(const std::string &path, const TrainReport &report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "epoch,train_loss,train_acc,val_acc\n";
  char line[160];
  for (const TrainReport::Row &row : report.rows) {
    std::snprintf(line, sizeof(line), "%d,%.9g,%.9g,%.9g\n", row.epoch,
                  row.train_loss, row.train_acc, row.val_acc);
    out << line;
  }
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path);
}

// Explicit instantiations: float for training, double for gradient checks.
#define DESIGNET_INSTANTIATE_CNN(T)                                          \
  template ModelT<T> init_model<T>(const Topology &, Rng &);                  \
  template ModelT<T> zeros_like<T>(const ModelT<T> &);                       \
  template Tensor<T> conv2d_forward<T>(const Tensor<T> &, const Tensor<T> &, \
                                       const Tensor<T> &);                   \
  template Tensor<T> relu<T>(const Tensor<T> &);                             \
  template Tensor<T> dense_forward<T>(const Tensor<T> &, const Tensor<T> &,  \
                                      const Tensor<T> &);                    \
  template Tensor<T> softmax<T>(const Tensor<T> &);                          \
  template T cross_entropy<T>(const Tensor<T> &, int);                       \
  template void sgd_step<T>(ModelT<T> &, const ModelT<T> &, T);              \
  template void forward<T>(const ModelT<T> &, const Tensor<T> &,             \
                           ForwardTrace<T> &);                               \
  template T backward<T>(const ModelT<T> &, const ForwardTrace<T> &, int,    \
                         ModelT<T> &);                                       \
  template T loss_and_grads<T>(const ModelT<T> &,                            \
                               const std::vector<Tensor<T>> &,               \
                               const std::vector<int> &, ModelT<T> &);       \
  template T batch_loss<T>(const ModelT<T> &,                                \
                           const std::vector<Tensor<T>> &,                   \
                           const std::vector<int> &);                        \
  template T batch_loss_pattern<T>(const ModelT<T> &,                        \
                                   const std::vector<Tensor<T>> &,           \
                                   const std::vector<int> &, uint64_t &);    \
  template Tensor<T> image_to_tensor<T>(const LabeledImage &);

DESIGNET_INSTANTIATE_CNN(float)
DESIGNET_INSTANTIATE_CNN(double)
#undef DESIGNET_INSTANTIATE_CNN

}  // namespace designet
