#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace minutekit::learn {

struct EmptyDataset : std::runtime_error {
  EmptyDataset() : std::runtime_error("dataset is empty") {}
};
struct SingleClassData : std::runtime_error {
  SingleClassData() : std::runtime_error("training data contains one class only") {}
};
struct TooFewRows : std::runtime_error {
  TooFewRows() : std::runtime_error("fewer rows than folds") {}
};
struct DimensionMismatch : std::runtime_error {
  DimensionMismatch() : std::runtime_error("feature vector dimension mismatch") {}
};
struct LengthMismatch : std::runtime_error {
  LengthMismatch() : std::runtime_error("prediction/gold length mismatch") {}
};

struct Dataset {
  std::vector<std::vector<double>> x;
  std::vector<bool> y;                // TRUE = positive
  std::vector<std::string> ids;

  std::size_t size() const { return x.size(); }
  std::size_t dims() const { return x.empty() ? 0 : x.front().size(); }
};

struct Scaler {
  std::vector<double> mean;
  std::vector<double> stddev;  // floored at 1e-12
};

enum class LossKind { logistic, hinge };

std::string to_string(LossKind k);
std::optional<LossKind> loss_from_string(const std::string& s);

struct Hyperparams {
  double lambda = 1e-2;  // L2 strength (1/C)
  double lr = 0.1;
  int epochs = 300;
  std::uint64_t seed = 0;
};

struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  LossKind loss = LossKind::logistic;
  Hyperparams hp;
};

struct CvEnsemble {
  std::vector<LinearModel> models;
  Scaler scaler;
  double threshold = 0.5;
};

struct Metrics {
  double accuracy = 0.0;
  std::optional<double> precision;  // absent when no positive predictions
  std::optional<double> recall;     // absent when no positive golds
  double f1 = 0.0;
};

Scaler fit_scaler(const Dataset& ds);
std::vector<double> apply_scaler(const Scaler& s, const std::vector<double>& fv);

// Full-batch gradient descent on L2-regularized mean loss; zero-initialized,
// fully deterministic.
LinearModel train_linear(const Dataset& ds, const Hyperparams& hp, LossKind loss);

double predict_prob(const LinearModel& m, const std::vector<double>& scaled_fv);

struct CvResult {
  CvEnsemble ensemble;
  Metrics mean_validation;
};

// Stratified seeded k-fold; all k models are kept for ensembling.
CvResult cross_validate(const Dataset& ds, std::size_t k, const Hyperparams& hp,
                        LossKind loss, std::uint64_t seed);

struct SearchSpace {
  double lambda_min = 1e-4, lambda_max = 1e2;  // log-uniform
  double lr_min = 1e-3, lr_max = 1.0;          // log-uniform
  int epochs = 300;
};

// Seeded random search; best mean CV F1 wins, first seen on ties.
Hyperparams hyperparam_search(const Dataset& ds, const SearchSpace& space,
                              std::size_t budget, std::uint64_t seed,
                              std::size_t k, LossKind loss);

struct EnsemblePrediction {
  double score = 0.0;  // mean per-model probability
  bool label = false;  // TRUE iff score >= threshold
};

EnsemblePrediction predict_ensemble(const CvEnsemble& ens,
                                    const std::vector<double>& fv);

Metrics classification_metrics(const std::vector<bool>& preds,
                               const std::vector<bool>& golds);

// Metrics of the constant all-FALSE predictor.
Metrics majority_baseline(const std::vector<bool>& golds);

}  // namespace minutekit::learn
