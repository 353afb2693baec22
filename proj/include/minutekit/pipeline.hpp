#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minutekit/argmine.hpp"
#include "minutekit/config.hpp"
#include "minutekit/core.hpp"
#include "minutekit/features.hpp"
#include "minutekit/learn.hpp"
#include "minutekit/segment.hpp"
#include "minutekit/summarize.hpp"

namespace minutekit::pipeline {

struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};
struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

struct MinuteResult {
  std::string text;            // header + itemized body
  std::size_t block_count = 0;
  std::size_t repairs = 0;
};

// Full generation pipeline: segment -> summarize -> argument structure.
MinuteResult generate_minute(const core::Transcript& transcript,
                             const config::Config& cfg = {});

// Segmentation stage only, as a JSON report (blocks, repairs, depth scores).
std::string segmentation_report(const core::Transcript& transcript,
                                const config::Config& cfg = {});

// Block summaries as JSON.
std::string summaries_report(const core::Transcript& transcript,
                             const config::Config& cfg = {});

struct ManifestRow {
  std::string pair_id;
  std::string path1;
  std::string path2;
  std::optional<bool> label;  // missing in classify-only manifests
};

// TSV: pair_id<TAB>doc1_path<TAB>doc2_path[<TAB>label]
std::vector<ManifestRow> load_manifest(const std::string& path);

enum class PairTask { B, C };  // B: transcript vs minute, C: minute vs minute

struct PairModel {
  std::string feature_version = features::kFeatureVersion;
  PairTask task = PairTask::B;
  features::IdfTable idf;
  std::uint64_t embedder_seed = 0;
  int n_chunks = 4;
  std::vector<std::string> entity_tags;
  learn::CvEnsemble ensemble;
  learn::LossKind loss = learn::LossKind::logistic;
  learn::Hyperparams hp;
};

struct TrainReport {
  PairModel model;
  learn::Metrics mean_validation;
};

TrainReport train_pair_model(const std::vector<ManifestRow>& manifest,
                             PairTask task, const config::Config& cfg = {});

std::string model_to_json(const PairModel& model);
PairModel model_from_json(const std::string& json_text);

features::FeatureVector pair_features(const PairModel& model,
                                      const core::Document& d1,
                                      const core::Document& d2);

struct PairPrediction {
  std::string pair_id;
  double score = 0.0;
  bool label = false;
};

std::vector<PairPrediction> classify_pairs(const PairModel& model,
                                           const std::vector<ManifestRow>& manifest);

core::Document load_document(const std::string& path, core::DocKind kind);

}  // namespace minutekit::pipeline
