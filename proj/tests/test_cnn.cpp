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

#include <filesystem>
#include <fstream>

#include "designet/cnn.hpp"

using namespace designet;

namespace {

std::string temp_path(const std::string &name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

CnnConfig small_config() {
  CnnConfig cfg;
  cfg.conv1_filters = 6;
  cfg.conv1_size = 2;
  cfg.conv2_filters = 8;
  cfg.conv2_size = 3;
  cfg.fc_units = 20;
  cfg.classes = 2;
  return cfg;
}

template <typename T>
std::vector<Tensor<T>> random_images(int count, int h, int w, Rng &rng) {
  std::vector<Tensor<T>> out;
  for (int k = 0; k < count; ++k) {
    Tensor<T> t({h, w, 3});
    for (T &v : t.data) v = static_cast<T>(rng.uniform());
    out.push_back(std::move(t));
  }
  return out;
}

LabeledImage constant_image(int h, int w, uint8_t label, RgbPixel color) {
  LabeledImage img;
  img.height = h;
  img.width = w;
  img.label = label;
  img.pixels.reserve(static_cast<size_t>(h) * w * 3);
  for (int k = 0; k < h * w; ++k) {
    img.pixels.push_back(color.r);
    img.pixels.push_back(color.g);
    img.pixels.push_back(color.b);
  }
  return img;
}

// Two fully distinguishable constant images, 20 copies each.
Dataset toy_dataset() {
  Dataset ds;
  ds.height = 6;
  ds.width = 6;
  for (int k = 0; k < 20; ++k) {
    ds.images.push_back(constant_image(6, 6, 0, {230, 30, 30}));
    ds.images.push_back(constant_image(6, 6, 1, {30, 30, 230}));
  }
  return ds;
}

}  // namespace

TEST_CASE("topology shape pipeline matches the headline architecture") {
  CnnConfig cfg;  // 32x2x2, 64x3x3, 512, 2
  const Topology t = Topology::deduce(cfg, 10, 10, 3);
  CHECK(t.c1_oh == 9);
  CHECK(t.c1_ow == 9);
  CHECK(t.c2_oh == 7);
  CHECK(t.c2_ow == 7);
  CHECK(t.flat == 7 * 7 * 64);
  CHECK(t.fc_units == 512);
  CHECK(t.classes == 2);
  CHECK_THROWS_AS(Topology::deduce(cfg, 3, 3, 3), std::invalid_argument);
  CnnConfig bad = cfg;
  bad.fc_units = 0;
  CHECK_THROWS_AS(Topology::deduce(bad, 10, 10, 3), std::invalid_argument);
}

TEST_CASE("conv2d forward shapes and degenerate filters") {
  Rng rng(81);
  Tensor<float> x({10, 10, 3});
  for (float &v : x.data) v = static_cast<float>(rng.uniform());
  Tensor<float> w({32, 2, 2, 3});
  Tensor<float> b({32});
  const Tensor<float> out = conv2d_forward(x, w, b);
  CHECK(out.shape == std::vector<int>{9, 9, 32});

  // all-zero filters, bias c -> constant-c output
  std::fill(b.data.begin(), b.data.end(), 1.5f);
  const Tensor<float> c = conv2d_forward(x, w, b);
  for (float v : c.data) CHECK(v == 1.5f);

  Tensor<float> wrong({32, 2, 2, 4});
  CHECK_THROWS_AS(conv2d_forward(x, wrong, b), std::invalid_argument);
}

TEST_CASE("relu clamps negatives") {
  Tensor<float> x({3});
  x.data = {-3.0f, 2.0f, 0.0f};
  const Tensor<float> y = relu(x);
  CHECK(y.data == std::vector<float>{0.0f, 2.0f, 0.0f});
}

TEST_CASE("dense forward basics") {
  Tensor<double> x({2});
  x.data = {3.0, 4.0};
  Tensor<double> w({1, 2});
  w.data = {1.0, 1.0};
  Tensor<double> b({1});
  CHECK(dense_forward(x, w, b).data[0] == 7.0);

  Tensor<double> id({2, 2});
  id.data = {1.0, 0.0, 0.0, 1.0};
  Tensor<double> b2({2});
  const Tensor<double> same = dense_forward(x, id, b2);
  CHECK(same.data == x.data);

  Tensor<double> zero({2});
  b2.data = {5.0, 6.0};
  CHECK(dense_forward(zero, id, b2).data == b2.data);

  Tensor<double> wrong({3, 3});
  CHECK_THROWS_AS(dense_forward(x, wrong, b), std::invalid_argument);
}

TEST_CASE("softmax is symmetric, stable and normalized") {
  Tensor<double> z({2});
  const Tensor<double> even = softmax(z);
  CHECK(even.data[0] == doctest::Approx(0.5));
  CHECK(even.data[1] == doctest::Approx(0.5));

  z.data = {1000.0, 0.0};
  const Tensor<double> extreme = softmax(z);
  CHECK(std::isfinite(extreme.data[0]));
  CHECK(extreme.data[0] == doctest::Approx(1.0));
  CHECK(extreme.data[1] == doctest::Approx(0.0));

  Rng rng(82);
  Tensor<double> r({5});
  for (double &v : r.data) v = 10.0 * (rng.uniform() - 0.5);
  const Tensor<double> p = softmax(r);
  double sum = 0.0;
  for (double v : p.data) sum += v;
  CHECK(std::abs(sum - 1.0) < 1e-6);
}

TEST_CASE("cross entropy values and clamping") {
  Tensor<double> p({2});
  p.data = {0.5, 0.5};
  CHECK(cross_entropy(p, 0) == doctest::Approx(std::log(2.0)));
  p.data = {1.0, 0.0};
  CHECK(cross_entropy(p, 0) == 0.0);
  CHECK(std::isfinite(cross_entropy(p, 1)));  // clamped, never inf
  CHECK(cross_entropy(p, 1) == doctest::Approx(-std::log(1e-12)));
  CHECK_THROWS_AS(cross_entropy(p, 2), std::out_of_range);
}

TEST_CASE("sgd step arithmetic") {
  Rng rng(83);
  const Topology topo = Topology::deduce(small_config(), 6, 6, 3);
  ModelT<double> m = init_model<double>(topo, rng);
  ModelT<double> g = zeros_like(m);
  m.fc2_b.data[0] = 1.0;
  g.fc2_b.data[0] = 0.5;
  ModelT<double> m2 = m;
  sgd_step(m2, g, 0.001);
  CHECK(m2.fc2_b.data[0] == doctest::Approx(0.9995).epsilon(1e-12));

  // eta = 0 leaves the model unchanged.
  ModelT<double> m3 = m;
  sgd_step(m3, g, 0.0);
  CHECK(m3.fc2_b.data == m.fc2_b.data);
  CHECK(m3.fc1_w.data == m.fc1_w.data);

  // Identical steps from identical states give identical models.
  ModelT<double> a = m, b = m;
  sgd_step(a, g, 0.01);
  sgd_step(b, g, 0.01);
  CHECK(a.fc2_b.data == b.fc2_b.data);
}

TEST_CASE("softmax-cross-entropy head gradient is probs minus one-hot") {
  Rng rng(84);
  const Topology topo = Topology::deduce(small_config(), 6, 6, 3);
  const ModelT<double> model = init_model<double>(topo, rng);
  const auto images = random_images<double>(1, 6, 6, rng);
  ForwardTrace<double> trace;
  forward(model, images[0], trace);
  ModelT<double> grads = zeros_like(model);
  backward(model, trace, 0, grads);
  // The fc2 bias gradient is exactly dlogits = probs - onehot.
  CHECK(grads.fc2_b.data[0] ==
        doctest::Approx(trace.probs.data[0] - 1.0).epsilon(1e-12));
  CHECK(grads.fc2_b.data[1] ==
        doctest::Approx(trace.probs.data[1]).epsilon(1e-12));
}

TEST_CASE("analytic gradients match central finite differences") {
  // Independent oracle: (L(p+h) - L(p-h)) / 2h in double precision. Probes
  // whose +-h stencil flips a ReLU sign are resampled: the loss has a kink
  // there and no derivative for the central difference to estimate.
  Rng rng(85);
  const Topology topo = Topology::deduce(small_config(), 8, 8, 3);
  ModelT<double> model = init_model<double>(topo, rng);
  const auto images = random_images<double>(4, 8, 8, rng);
  const std::vector<int> labels = {0, 1, 1, 0};

  ModelT<double> grads = zeros_like(model);
  loss_and_grads(model, images, labels, grads);

  const double h = 1e-5;
  double max_rel = 0.0;
  int probed = 0, skipped = 0;
  auto model_params = model.params();
  auto grad_params = grads.params();
  for (size_t t = 0; t < model_params.size(); ++t) {
    int taken = 0;
    while (taken < 25) {
      REQUIRE(skipped < 100);  // kink crossings must stay rare
      const size_t idx = rng.uniform_below(model_params[t]->data.size());
      const double keep = model_params[t]->data[idx];
      uint64_t pat_up = 0, pat_down = 0;
      model_params[t]->data[idx] = keep + h;
      const double up = batch_loss_pattern(model, images, labels, pat_up);
      model_params[t]->data[idx] = keep - h;
      const double down = batch_loss_pattern(model, images, labels, pat_down);
      model_params[t]->data[idx] = keep;
      if (pat_up != pat_down) {
        ++skipped;
        continue;
      }
      const double fd = (up - down) / (2.0 * h);
      const double an = grad_params[t]->data[idx];
      const double rel =
          std::abs(an - fd) / std::max({std::abs(an), std::abs(fd), 1e-6});
      max_rel = std::max(max_rel, rel);
      ++probed;
      ++taken;
    }
  }
  CHECK(probed == 200);
  CHECK(max_rel < 1e-4);
}

TEST_CASE("training separates the toy problem") {
  const Dataset toy = toy_dataset();
  CnnConfig cfg = small_config();
  cfg.epochs = 50;
  cfg.batch_size = 10;
  cfg.learning_rate = 0.01;
  cfg.seed = 5;
  Rng rng(cfg.seed);
  auto [model, report] = train(toy, toy, cfg, rng);
  REQUIRE(report.rows.size() == 50);
  CHECK(report.rows.back().val_acc == 1.0);
  CHECK(report.rows[49].train_loss < report.rows[0].train_loss);
  CHECK(evaluate(model, toy) == 1.0);
  CHECK(report.wall_seconds > 0.0);
  for (size_t k = 1; k < report.rows.size(); ++k)
    CHECK(report.rows[k].epoch == report.rows[k - 1].epoch + 1);
}

TEST_CASE("zero epochs returns an untrained model and empty report") {
  const Dataset toy = toy_dataset();
  CnnConfig cfg = small_config();
  cfg.epochs = 0;
  Rng rng(1);
  auto [model, report] = train(toy, toy, cfg, rng);
  CHECK(report.rows.empty());
  CHECK(model.topo.flat > 0);
}

TEST_CASE("training is bit-deterministic, including across thread counts") {
  const Dataset toy = toy_dataset();
  CnnConfig cfg = small_config();
  cfg.epochs = 8;
  cfg.batch_size = 10;
  cfg.seed = 9;

  cfg.threads = 1;
  Rng r1(cfg.seed);
  auto [m1, rep1] = train(toy, toy, cfg, r1);

  cfg.threads = 2;
  Rng r2(cfg.seed);
  auto [m2, rep2] = train(toy, toy, cfg, r2);

  REQUIRE(rep1.rows.size() == rep2.rows.size());
  for (size_t k = 0; k < rep1.rows.size(); ++k) {
    CHECK(rep1.rows[k].train_loss == rep2.rows[k].train_loss);
    CHECK(rep1.rows[k].train_acc == rep2.rows[k].train_acc);
    CHECK(rep1.rows[k].val_acc == rep2.rows[k].val_acc);
  }
  CHECK(m1.fc1_w.data == m2.fc1_w.data);
  CHECK(m1.conv2_w.data == m2.conv2_w.data);
}

TEST_CASE("an untrained model scores near chance on balanced noise") {
  Rng rng(88);
  const Topology topo = Topology::deduce(small_config(), 6, 6, 3);
  const CnnModel model = init_model<float>(topo, rng);
  Dataset noise;
  noise.height = 6;
  noise.width = 6;
  for (int k = 0; k < 200; ++k) {
    LabeledImage img;
    img.height = 6;
    img.width = 6;
    img.label = static_cast<uint8_t>(k % 2);
    img.pixels.resize(108);
    for (auto &px : img.pixels)
      px = static_cast<uint8_t>(rng.uniform_below(256));
    noise.images.push_back(std::move(img));
  }
  const double acc = evaluate(model, noise);
  CHECK(acc >= 0.35);
  CHECK(acc <= 0.65);
}

TEST_CASE("evaluate on a constant-prediction model is chance level") {
  Rng rng(86);
  const Topology topo = Topology::deduce(small_config(), 6, 6, 3);
  CnnModel model = init_model<float>(topo, rng);
  for (Tensor<float> *p : model.params()) p->zero();
  model.fc2_b.data[0] = 1.0f;  // always argmax class 0
  const Dataset toy = toy_dataset();  // balanced
  CHECK(evaluate(model, toy) == 0.5);

  Dataset empty;
  empty.height = 6;
  empty.width = 6;
  CHECK_THROWS_AS(evaluate(model, empty), std::invalid_argument);
}

TEST_CASE("checkpoints round-trip losslessly") {
  Rng rng(87);
  const Topology topo = Topology::deduce(small_config(), 6, 6, 3);
  const CnnModel model = init_model<float>(topo, rng);
  const std::string path = temp_path("designet_test.qcnn");
  save_qcnn(path, model);
  const CnnModel back = load_qcnn(path);
  CHECK(back.topo == model.topo);
  auto a = model.params();
  auto b = back.params();
  for (size_t k = 0; k < a.size(); ++k) CHECK(a[k]->data == b[k]->data);
  std::filesystem::remove(path);
}

TEST_CASE("report csv format and last-k averaging") {
  TrainReport report;
  for (int e = 1; e <= 12; ++e)
    report.rows.push_back({e, 1.0 / e, 0.5, e >= 10 ? 0.9 : 0.1});
  const std::string path = temp_path("designet_report.csv");
  write_report_csv(path, report);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "epoch,train_loss,train_acc,val_acc");
  int lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 12);
  std::filesystem::remove(path);

  // Last 10 rows are epochs 3..12: seven at 0.1, three at 0.9.
  CHECK(last_k_mean_val_acc(report, 10) ==
        doctest::Approx((3 * 0.9 + 7 * 0.1) / 10.0));
  CHECK(last_k_mean_val_acc(report, 3) == doctest::Approx(0.9));
  TrainReport empty;
  CHECK_THROWS_AS(last_k_mean_val_acc(empty, 10), std::invalid_argument);
}
