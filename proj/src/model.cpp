// Copyright 2026 The NDLS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ndls/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include <json.hpp>

#include "binary_io.hpp"
#include "ndls/errors.hpp"

namespace ndls {

std::size_t default_hidden_size(std::size_t num_nodes) {
  return num_nodes < 50000 ? 64 : 256;
}

bool MlpParams::all_finite() const {
  return w1.allFinite() && b1.allFinite() && w2.allFinite() &&
         b2.allFinite();
}

bool MlpParams::operator==(const MlpParams& other) const {
  auto same = [](const auto& a, const auto& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           std::equal(a.data(), a.data() + a.size(), b.data());
  };
  return same(w1, other.w1) && same(b1, other.b1) && same(w2, other.w2) &&
         same(b2, other.b2);
}

MlpModel init_mlp(std::size_t input_dim, std::size_t num_classes,
                  const MlpHyper& hyper) {
  if (num_classes == 0) throw ConfigError("model needs at least one class");
  MlpModel model;
  model.hyper = hyper;
  std::mt19937_64 rng(hyper.seed);
  auto fill = [&rng](Matrix& w, std::size_t fan_in) {
    const double bound = 1.0 / std::sqrt(double(std::max<std::size_t>(1, fan_in)));
    std::uniform_real_distribution<double> u(-bound, bound);
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = u(rng);
  };
  auto& p = model.params;
  const auto f = Eigen::Index(input_dim);
  const auto c = Eigen::Index(num_classes);
  if (hyper.hidden > 0) {
    const auto h = Eigen::Index(hyper.hidden);
    p.w1.resize(f, h);
    fill(p.w1, input_dim);
    p.b1 = Vector::Zero(h);
    p.w2.resize(h, c);
    fill(p.w2, hyper.hidden);
  } else {
    p.w2.resize(f, c);
    fill(p.w2, input_dim);
  }
  p.b2 = Vector::Zero(c);
  if (hyper.zero_output_init) p.w2.setZero();
  return model;
}

Matrix softmax_rows(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double mx = logits.row(i).maxCoeff();
    double sum = 0.0;
    for (Eigen::Index j = 0; j < logits.cols(); ++j) {
      out(i, j) = std::exp(logits(i, j) - mx);
      sum += out(i, j);
    }
    out.row(i) /= sum;
  }
  return out;
}

Matrix predict_logits(const MlpParams& params, const Matrix& features) {
  if (std::size_t(features.cols()) != params.input_dim()) {
    throw ShapeError("model expects " + std::to_string(params.input_dim()) +
                     " features, got " + std::to_string(features.cols()));
  }
  Matrix logits;
  if (params.linear()) {
    logits = features * params.w2;
  } else {
    Matrix hidden = features * params.w1;
    hidden.rowwise() += params.b1.transpose();
    hidden = hidden.cwiseMax(0.0);
    logits = hidden * params.w2;
  }
  logits.rowwise() += params.b2.transpose();
  return logits;
}

Matrix predict_soft(const MlpModel& model, const Matrix& features) {
  return softmax_rows(predict_logits(model.params, features));
}

int argmax_row(const Matrix& m, Eigen::Index row) {
  int best = 0;
  for (Eigen::Index j = 1; j < m.cols(); ++j) {
    if (m(row, j) > m(row, best)) best = int(j);
  }
  return best;
}

double evaluate_accuracy(const Matrix& soft, const std::vector<int>& labels,
                         std::span<const NodeId> mask) {
  if (mask.empty()) throw ConfigError("evaluate_accuracy: empty mask");
  std::size_t correct = 0;
  for (NodeId id : mask) {
    if (id >= soft.rows() || id >= labels.size()) {
      throw BoundsError("evaluate_accuracy: node " + std::to_string(id) +
                        " out of range");
    }
    if (argmax_row(soft, Eigen::Index(id)) == labels[id]) ++correct;
  }
  return double(correct) / double(mask.size());
}

namespace {

// Forward/backward pass with an optional inverted-dropout mask on the
// hidden activations (entries 0 or 1/(1-p)).
double forward_backward(const MlpParams& p, const Matrix& x,
                        std::span<const int> y, double weight_decay,
                        const Matrix* dropout_scale, MlpGradients* grad) {
  const Eigen::Index rows = x.rows();
  if (std::size_t(rows) != y.size()) {
    throw ShapeError("loss: feature rows and targets differ");
  }
  Matrix pre, act;
  Matrix logits;
  if (p.linear()) {
    logits = x * p.w2;
  } else {
    pre = x * p.w1;
    pre.rowwise() += p.b1.transpose();
    act = pre.cwiseMax(0.0);
    if (dropout_scale) act = act.cwiseProduct(*dropout_scale);
    logits = act * p.w2;
  }
  logits.rowwise() += p.b2.transpose();
  Matrix prob = softmax_rows(logits);

  double loss = 0.0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    loss -= std::log(std::max(prob(i, y[std::size_t(i)]),
                              std::numeric_limits<double>::min()));
  }
  loss /= double(std::max<Eigen::Index>(rows, 1));
  loss += 0.5 * weight_decay * (p.w1.squaredNorm() + p.w2.squaredNorm());

  if (grad) {
    Matrix dlogits = prob;
    for (Eigen::Index i = 0; i < rows; ++i) dlogits(i, y[std::size_t(i)]) -= 1.0;
    dlogits /= double(std::max<Eigen::Index>(rows, 1));
    grad->b2 = dlogits.colwise().sum().transpose();
    if (p.linear()) {
      grad->w2 = x.transpose() * dlogits + weight_decay * p.w2;
      grad->w1.resize(0, 0);
      grad->b1.resize(0);
    } else {
      grad->w2 = act.transpose() * dlogits + weight_decay * p.w2;
      Matrix dact = dlogits * p.w2.transpose();
      if (dropout_scale) dact = dact.cwiseProduct(*dropout_scale);
      Matrix dpre = (pre.array() > 0.0).select(dact, 0.0);
      grad->w1 = x.transpose() * dpre + weight_decay * p.w1;
      grad->b1 = dpre.colwise().sum().transpose();
    }
  }
  return loss;
}

Matrix gather_rows(const Matrix& x, std::span<const NodeId> ids) {
  Matrix out(Eigen::Index(ids.size()), x.cols());
  for (std::size_t r = 0; r < ids.size(); ++r) {
    out.row(Eigen::Index(r)) = x.row(Eigen::Index(ids[r]));
  }
  return out;
}

struct AdamState {
  MlpParams m, v;
  long step = 0;
};

template <class T>
void adam_update(T& param, const T& g, T& m, T& v, double lr, double bc1,
                 double bc2) {
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
  if (m.size() != param.size()) {
    m = T::Zero(param.rows(), param.cols());
    v = T::Zero(param.rows(), param.cols());
  }
  m = kBeta1 * m + (1.0 - kBeta1) * g;
  v = kBeta2 * v + (1.0 - kBeta2) * g.cwiseProduct(g);
  param.array() -= lr * (m.array() / bc1) /
                   ((v.array() / bc2).sqrt() + kEps);
}

void optimizer_step(MlpParams& p, const MlpGradients& g, const MlpHyper& h,
                    AdamState& state) {
  if (h.optimizer == Optimizer::kGradientDescent) {
    if (!p.linear()) {
      p.w1 -= h.learning_rate * g.w1;
      p.b1 -= h.learning_rate * g.b1;
    }
    p.w2 -= h.learning_rate * g.w2;
    p.b2 -= h.learning_rate * g.b2;
    return;
  }
  ++state.step;
  const double bc1 = 1.0 - std::pow(0.9, double(state.step));
  const double bc2 = 1.0 - std::pow(0.999, double(state.step));
  if (!p.linear()) {
    adam_update(p.w1, g.w1, state.m.w1, state.v.w1, h.learning_rate, bc1, bc2);
    adam_update(p.b1, g.b1, state.m.b1, state.v.b1, h.learning_rate, bc1, bc2);
  }
  adam_update(p.w2, g.w2, state.m.w2, state.v.w2, h.learning_rate, bc1, bc2);
  adam_update(p.b2, g.b2, state.m.b2, state.v.b2, h.learning_rate, bc1, bc2);
}

}  // namespace

double loss_and_gradient(const MlpParams& params, const Matrix& x,
                         std::span<const int> y, double weight_decay,
                         MlpGradients* grad) {
  return forward_backward(params, x, y, weight_decay, nullptr, grad);
}

MlpModel train_mlp(const Matrix& features, const std::vector<int>& labels,
                   const SplitMasks& splits, const MlpHyper& hyper,
                   int num_classes) {
  if (splits.train.empty()) throw ConfigError("train_mlp: empty train set");
  if (!(hyper.dropout >= 0.0 && hyper.dropout < 1.0)) {
    throw DomainError("dropout must lie in [0, 1)");
  }
  if (labels.size() != std::size_t(features.rows())) {
    throw ShapeError("train_mlp: labels and features differ in length");
  }
  const int classes = num_classes > 0 ? num_classes : ndls::num_classes(labels);
  // Sorting makes the result independent of the order ids were listed in.
  std::vector<NodeId> train = splits.train;
  std::sort(train.begin(), train.end());
  std::vector<int> train_y;
  for (NodeId id : train) {
    if (id >= labels.size() || labels[id] < 0 || labels[id] >= classes) {
      throw DataError("train node " + std::to_string(id) +
                      " has no valid label");
    }
    train_y.push_back(labels[id]);
  }
  for (NodeId id : splits.val) {
    if (id >= labels.size() || labels[id] < 0) {
      throw DataError("val node " + std::to_string(id) + " has no label");
    }
  }

  MlpModel model = init_mlp(std::size_t(features.cols()), std::size_t(classes),
                            hyper);
  const Matrix x_train = gather_rows(features, train);
  const Matrix x_val = gather_rows(features, splits.val);
  std::vector<int> val_y;
  for (NodeId id : splits.val) val_y.push_back(labels[id]);

  MlpParams params = model.params;
  MlpParams best = params;
  double best_acc = -1.0;
  double best_val_loss = std::numeric_limits<double>::infinity();
  int since_best = 0;

  std::mt19937_64 rng(hyper.seed ^ 0x9e3779b97f4a7c15ULL);
  std::bernoulli_distribution keep(1.0 - hyper.dropout);
  const double scale = 1.0 / (1.0 - hyper.dropout);
  Matrix dropout_scale;
  AdamState adam;
  MlpGradients grad;

  for (int epoch = 1; epoch <= hyper.epochs; ++epoch) {
    const Matrix* mask = nullptr;
    if (!params.linear() && hyper.dropout > 0.0) {
      dropout_scale.resize(x_train.rows(), Eigen::Index(hyper.hidden));
      for (Eigen::Index i = 0; i < dropout_scale.size(); ++i) {
        dropout_scale.data()[i] = keep(rng) ? scale : 0.0;
      }
      mask = &dropout_scale;
    }
    const double loss = forward_backward(params, x_train, train_y,
                                         hyper.weight_decay, mask, &grad);
    if (!std::isfinite(loss)) throw TrainingError("training loss diverged", epoch);
    optimizer_step(params, grad, hyper, adam);
    if (!params.all_finite()) {
      throw TrainingError("non-finite parameters", epoch);
    }

    EpochRecord rec{epoch, loss, 0.0};
    double val_loss = 0.0;
    if (!splits.val.empty()) {
      const Matrix logits = predict_logits(params, x_val);
      const Matrix prob = softmax_rows(logits);
      std::size_t correct = 0;
      for (Eigen::Index i = 0; i < prob.rows(); ++i) {
        const int yi = val_y[std::size_t(i)];
        if (argmax_row(prob, i) == yi) ++correct;
        val_loss -= std::log(std::max(prob(i, yi),
                                      std::numeric_limits<double>::min()));
      }
      rec.val_accuracy = double(correct) / double(prob.rows());
      if (!std::isfinite(val_loss)) {
        throw TrainingError("validation loss diverged", epoch);
      }
    } else {
      val_loss = loss;
    }
    model.history.push_back(rec);

    const bool better =
        rec.val_accuracy > best_acc ||
        (rec.val_accuracy == best_acc && val_loss < best_val_loss);
    if (better) {
      best_acc = rec.val_accuracy;
      best_val_loss = val_loss;
      best = params;
      model.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= hyper.patience) {
      break;
    }
  }

  if (model.best_epoch > 0) {
    model.params = std::move(best);
    model.best_val_accuracy = best_acc;
  }
  return model;
}

double gradient_check(const MlpModel& model, const Matrix& features,
                      std::span<const int> labels,
                      const GradCheckOptions& options) {
  const double wd = model.hyper.weight_decay;
  MlpGradients analytic;
  loss_and_gradient(model.params, features, labels, wd, &analytic);
  if (options.perturb) options.perturb(analytic);

  MlpParams probe = model.params;
  std::mt19937_64 rng(options.seed);
  double worst = 0.0;

  // Which hidden units are active; empty for the linear model.
  auto active = [&]() {
    if (probe.linear()) return Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>();
    const Matrix pre = (features * probe.w1).rowwise() + probe.b1.transpose();
    return Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>(pre.array() > 0.0);
  };

  auto check_tensor = [&](auto& param, const auto& grad) {
    if (param.size() == 0) return;
    std::uniform_int_distribution<Eigen::Index> pick(0, param.size() - 1);
    const std::size_t samples =
        std::min<std::size_t>(options.samples_per_tensor, std::size_t(param.size()));
    for (std::size_t s = 0; s < samples; ++s) {
      const Eigen::Index idx = pick(rng);
      const double saved = param.data()[idx];
      param.data()[idx] = saved + options.step;
      const double up = loss_and_gradient(probe, features, labels, wd, nullptr);
      const auto active_up = active();
      param.data()[idx] = saved - options.step;
      const double down =
          loss_and_gradient(probe, features, labels, wd, nullptr);
      const auto active_down = active();
      param.data()[idx] = saved;
      // The loss has no derivative where a ReLU switches inside the stencil.
      if ((active_up != active_down).any()) continue;
      const double numeric = (up - down) / (2.0 * options.step);
      const double a = grad.data()[idx];
      const double rel =
          std::abs(a - numeric) / std::max(std::abs(a) + std::abs(numeric), 1e-6);
      worst = std::max(worst, rel);
    }
  };
  check_tensor(probe.w1, analytic.w1);
  check_tensor(probe.b1, analytic.b1);
  check_tensor(probe.w2, analytic.w2);
  check_tensor(probe.b2, analytic.b2);
  return worst;
}

namespace {

nlohmann::ordered_json hyper_to_json(const MlpHyper& h) {
  return {{"hidden", h.hidden},
          {"dropout", h.dropout},
          {"learning_rate", h.learning_rate},
          {"weight_decay", h.weight_decay},
          {"epochs", h.epochs},
          {"patience", h.patience},
          {"seed", h.seed},
          {"optimizer",
           h.optimizer == Optimizer::kAdam ? "adam" : "gradient_descent"},
          {"zero_output_init", h.zero_output_init}};
}

template <class T>
void write_tensor(std::ostream& out, const T& t) {
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    detail::write_le<double>(out, t.data()[i]);
  }
}

template <class T>
void read_tensor(std::istream& in, T& t, const std::string& path) {
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    t.data()[i] = detail::read_le<double>(in, path);
  }
}

}  // namespace

void save_model(const MlpModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model: " + path);
  const auto& p = model.params;
  out.write("NDLSMLP1", 8);
  detail::write_le<std::uint64_t>(out, p.input_dim());
  detail::write_le<std::uint64_t>(out, p.linear() ? 0 : std::uint64_t(p.w1.cols()));
  detail::write_le<std::uint64_t>(out, p.num_classes());
  write_tensor(out, p.w1);
  write_tensor(out, p.b1);
  write_tensor(out, p.w2);
  write_tensor(out, p.b2);
  if (!out) throw IoError("write failed: " + path);

  nlohmann::ordered_json sidecar = {
      {"format", "NDLSMLP1"},
      {"hyper", hyper_to_json(model.hyper)},
      {"best_epoch", model.best_epoch},
      {"best_val_accuracy", model.best_val_accuracy},
      {"epochs_run", model.history.size()}};
  std::ofstream js(path + ".json");
  if (!js) throw IoError("cannot write model sidecar: " + path + ".json");
  js << sidecar.dump(2) << '\n';
}

MlpModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model: " + path);
  detail::expect_magic(in, "NDLSMLP1", path);
  const auto f = Eigen::Index(detail::read_le<std::uint64_t>(in, path));
  const auto h = Eigen::Index(detail::read_le<std::uint64_t>(in, path));
  const auto c = Eigen::Index(detail::read_le<std::uint64_t>(in, path));
  MlpModel model;
  auto& p = model.params;
  if (h > 0) {
    p.w1.resize(f, h);
    p.b1.resize(h);
    p.w2.resize(h, c);
  } else {
    p.w2.resize(f, c);
  }
  p.b2.resize(c);
  read_tensor(in, p.w1, path);
  read_tensor(in, p.b1, path);
  read_tensor(in, p.w2, path);
  read_tensor(in, p.b2, path);
  model.hyper.hidden = std::size_t(h);

  std::ifstream js(path + ".json");
  if (js) {
    const auto side = nlohmann::json::parse(js, nullptr, false);
    if (!side.is_discarded() && side.contains("hyper")) {
      const auto& hj = side["hyper"];
      model.hyper.dropout = hj.value("dropout", model.hyper.dropout);
      model.hyper.learning_rate =
          hj.value("learning_rate", model.hyper.learning_rate);
      model.hyper.weight_decay =
          hj.value("weight_decay", model.hyper.weight_decay);
      model.hyper.epochs = hj.value("epochs", model.hyper.epochs);
      model.hyper.patience = hj.value("patience", model.hyper.patience);
      model.hyper.seed = hj.value("seed", model.hyper.seed);
      model.best_epoch = side.value("best_epoch", -1);
      model.best_val_accuracy = side.value("best_val_accuracy", 0.0);
    }
  }
  return model;
}

}  // namespace ndls
