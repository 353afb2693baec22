#include "minutekit/learn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace minutekit::learn {

std::string to_string(LossKind k) {
  return k == LossKind::logistic ? "logistic" : "hinge";
}

std::optional<LossKind> loss_from_string(const std::string& s) {
  if (s == "logistic") return LossKind::logistic;
  if (s == "hinge") return LossKind::hinge;
  return std::nullopt;
}

Scaler fit_scaler(const Dataset& ds) {
  if (ds.size() == 0) throw EmptyDataset();
  const std::size_t d = ds.dims();
  Scaler s;
  s.mean.assign(d, 0.0);
  s.stddev.assign(d, 0.0);
  for (const auto& row : ds.x)
    for (std::size_t j = 0; j < d; ++j) s.mean[j] += row[j];
  for (double& m : s.mean) m /= static_cast<double>(ds.size());
  for (const auto& row : ds.x)
    for (std::size_t j = 0; j < d; ++j) {
      double diff = row[j] - s.mean[j];
      s.stddev[j] += diff * diff;
    }
  for (double& v : s.stddev)
    v = std::max(std::sqrt(v / static_cast<double>(ds.size())), 1e-12);
  return s;
}

std::vector<double> apply_scaler(const Scaler& s, const std::vector<double>& fv) {
  if (fv.size() != s.mean.size()) throw DimensionMismatch();
  std::vector<double> out(fv.size());
  for (std::size_t j = 0; j < fv.size(); ++j)
    out[j] = (fv[j] - s.mean[j]) / s.stddev[j];
  return out;
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double margin(const LinearModel& m, const std::vector<double>& x) {
  double z = m.bias;
  for (std::size_t j = 0; j < m.weights.size(); ++j) z += m.weights[j] * x[j];
  return z;
}

}  // namespace

LinearModel train_linear(const Dataset& ds, const Hyperparams& hp, LossKind loss) {
  if (ds.size() == 0) throw EmptyDataset();
  bool has_true = false, has_false = false;
  for (bool y : ds.y) (y ? has_true : has_false) = true;
  if (!has_true || !has_false) throw SingleClassData();

  const std::size_t n = ds.size();
  const std::size_t d = ds.dims();
  for (const auto& row : ds.x)
    if (row.size() != d) throw DimensionMismatch();
  LinearModel model;
  model.weights.assign(d, 0.0);
  model.bias = 0.0;
  model.loss = loss;
  model.hp = hp;

  std::vector<double> grad_w(d);
  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    std::fill(grad_w.begin(), grad_w.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& x = ds.x[i];
      double z = margin(model, x);
      double coeff = 0.0;
      if (loss == LossKind::logistic) {
        // d/dz of -log p(y|z) with y in {0,1}
        coeff = sigmoid(z) - (ds.y[i] ? 1.0 : 0.0);
      } else {
        double ylab = ds.y[i] ? 1.0 : -1.0;
        if (ylab * z < 1.0) coeff = -ylab;  // hinge subgradient
      }
      for (std::size_t j = 0; j < d; ++j) grad_w[j] += coeff * x[j];
      grad_b += coeff;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < d; ++j) {
      double g = grad_w[j] * inv_n + hp.lambda * model.weights[j];
      model.weights[j] -= hp.lr * g;
    }
    model.bias -= hp.lr * grad_b * inv_n;  // bias unregularized
  }
  return model;
}

double predict_prob(const LinearModel& m, const std::vector<double>& scaled_fv) {
  if (scaled_fv.size() != m.weights.size()) throw DimensionMismatch();
  // Hinge margins pass through the same squashing for ensemble comparability.
  return sigmoid(margin(m, scaled_fv));
}

namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Stratified fold ids, seeded: shuffle each class, deal round-robin.
std::vector<std::size_t> fold_assignment(const Dataset& ds, std::size_t k,
                                         std::uint64_t seed) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < ds.size(); ++i) (ds.y[i] ? pos : neg).push_back(i);
  std::mt19937_64 rng(seed);
  auto shuffle = [&rng](std::vector<std::size_t>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = rng() % i;
      std::swap(v[i - 1], v[j]);
    }
  };
  shuffle(pos);
  shuffle(neg);
  std::vector<std::size_t> fold(ds.size(), 0);
  std::size_t next = 0;
  for (std::size_t i : pos) fold[i] = next++ % k;
  for (std::size_t i : neg) fold[i] = next++ % k;
  return fold;
}

}  // namespace

CvResult cross_validate(const Dataset& ds, std::size_t k, const Hyperparams& hp,
                        LossKind loss, std::uint64_t seed) {
  if (k < 2 || ds.size() < k) throw TooFewRows();
  auto fold = fold_assignment(ds, k, seed);

  Dataset scaled;
  scaled.y = ds.y;
  scaled.ids = ds.ids;
  Scaler scaler = fit_scaler(ds);
  for (const auto& row : ds.x) scaled.x.push_back(apply_scaler(scaler, row));

  CvResult result;
  result.ensemble.scaler = scaler;
  double acc = 0.0, f1 = 0.0, prec = 0.0, rec = 0.0;
  std::size_t prec_n = 0, rec_n = 0;
  for (std::size_t f = 0; f < k; ++f) {
    Dataset train;
    std::vector<std::size_t> val_idx;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (fold[i] == f) {
        val_idx.push_back(i);
      } else {
        train.x.push_back(scaled.x[i]);
        train.y.push_back(scaled.y[i]);
      }
    }
    LinearModel model = train_linear(train, hp, loss);
    std::vector<bool> preds, golds;
    for (std::size_t i : val_idx) {
      preds.push_back(predict_prob(model, scaled.x[i]) >= result.ensemble.threshold);
      golds.push_back(scaled.y[i]);
    }
    if (!preds.empty()) {
      Metrics m = classification_metrics(preds, golds);
      acc += m.accuracy;
      f1 += m.f1;
      if (m.precision) prec += *m.precision, ++prec_n;
      if (m.recall) rec += *m.recall, ++rec_n;
    }
    result.ensemble.models.push_back(std::move(model));
  }
  result.mean_validation.accuracy = acc / static_cast<double>(k);
  result.mean_validation.f1 = f1 / static_cast<double>(k);
  if (prec_n) result.mean_validation.precision = prec / static_cast<double>(prec_n);
  if (rec_n) result.mean_validation.recall = rec / static_cast<double>(rec_n);
  return result;
}

Hyperparams hyperparam_search(const Dataset& ds, const SearchSpace& space,
                              std::size_t budget, std::uint64_t seed,
                              std::size_t k, LossKind loss) {
  std::mt19937_64 rng(seed);
  auto log_uniform = [&](double lo, double hi) {
    return std::exp(std::log(lo) + unit_uniform(rng) * (std::log(hi) - std::log(lo)));
  };
  Hyperparams best;
  double best_f1 = -1.0;
  for (std::size_t b = 0; b < budget; ++b) {
    Hyperparams hp;
    hp.lambda = log_uniform(space.lambda_min, space.lambda_max);
    hp.lr = log_uniform(space.lr_min, space.lr_max);
    hp.epochs = space.epochs;
    hp.seed = seed;
    double f1 = cross_validate(ds, k, hp, loss, seed).mean_validation.f1;
    if (f1 > best_f1) {
      best_f1 = f1;
      best = hp;
    }
  }
  return best;
}

EnsemblePrediction predict_ensemble(const CvEnsemble& ens,
                                    const std::vector<double>& fv) {
  if (ens.models.empty()) throw EmptyDataset();
  std::vector<double> scaled = apply_scaler(ens.scaler, fv);
  double sum = 0.0;
  for (const auto& m : ens.models) sum += predict_prob(m, scaled);
  EnsemblePrediction p;
  p.score = sum / static_cast<double>(ens.models.size());
  p.label = p.score >= ens.threshold;
  return p;
}

Metrics classification_metrics(const std::vector<bool>& preds,
                               const std::vector<bool>& golds) {
  if (preds.size() != golds.size() || preds.empty()) throw LengthMismatch();
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i] && golds[i]) ++tp;
    else if (preds[i] && !golds[i]) ++fp;
    else if (!preds[i] && golds[i]) ++fn;
    else ++tn;
  }
  Metrics m;
  m.accuracy = static_cast<double>(tp + tn) / static_cast<double>(preds.size());
  if (tp + fp > 0) m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0) m.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  if (m.precision && m.recall && *m.precision + *m.recall > 0.0)
    m.f1 = 2.0 * *m.precision * *m.recall / (*m.precision + *m.recall);
  return m;
}

Metrics majority_baseline(const std::vector<bool>& golds) {
  std::vector<bool> preds(golds.size(), false);
  return classification_metrics(preds, golds);
}

}  // namespace minutekit::learn
