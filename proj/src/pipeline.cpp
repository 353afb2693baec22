#include "minutekit/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace minutekit::pipeline {

namespace {

using nlohmann::json;

struct Segmentation {
  std::vector<core::Sentence> sentences;
  segment::BlocksResult blocks;
  std::vector<double> depth_scores;
};

Segmentation run_segmentation(const core::Transcript& transcript,
                              const config::Config& cfg) {
  Segmentation seg;
  seg.sentences = core::transcript_sentences(transcript);
  segment::SegmenterConfig scfg{cfg.segmenter.window, cfg.segmenter.k};

  auto chunks = segment::chunk_sentences(seg.sentences, cfg.segmenter.max_tokens,
                                         cfg.segmenter.stride);
  std::vector<std::pair<segment::Chunk, std::vector<segment::BioLabel>>> preds;
  for (const auto& chunk : chunks) {
    std::vector<core::Sentence> slice(seg.sentences.begin() + chunk.begin,
                                      seg.sentences.begin() + chunk.end);
    std::vector<double>* scores =
        preds.empty() ? &seg.depth_scores : nullptr;  // report first chunk only
    auto labeling = segment::default_segmenter(slice, scfg,
                                               core::default_stopwords(), scores);
    preds.emplace_back(chunk, std::move(labeling.labels));
  }
  auto merged = segment::merge_chunk_labels(preds, seg.sentences.size());
  seg.blocks = segment::labels_to_blocks(merged);
  return seg;
}

std::string format_datestamp(const features::DateStamp& d) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year.value_or(0),
                d.month.value_or(0), d.day.value_or(0));
  std::string out = buf;
  if (d.hour) {
    std::snprintf(buf, sizeof(buf), " %02d:00", *d.hour);
    out += buf;
  }
  return out;
}

std::string block_minute(const segment::Block& block,
                         const core::Transcript& transcript,
                         const Segmentation& seg, const config::Config& cfg) {
  auto bt = summarize::format_block(block, transcript, seg.sentences);
  bt = summarize::truncate_block(bt, cfg.summarizer.max_tokens);
  summarize::SummarizerConfig sum_cfg{cfg.summarizer.ratio};
  auto summary = summarize::summarize_block(bt, sum_cfg);
  std::string text = summarize::postprocess(summary.text,
                                            summarize::default_post_rules());

  std::vector<argmine::Proposition> props;
  for (auto& sent : core::split_sentences(text))
    props.push_back(argmine::Proposition{std::move(sent), props.size()});
  if (props.empty()) return "";
  argmine::ArgumentGraph graph;
  graph.labels = argmine::label_propositions(props);
  graph.relations = argmine::extract_relations(props, graph.labels);
  graph.propositions = std::move(props);
  return argmine::render(argmine::build_structure(graph));
}

}  // namespace

MinuteResult generate_minute(const core::Transcript& transcript,
                             const config::Config& cfg) {
  Segmentation seg = run_segmentation(transcript, cfg);

  MinuteResult result;
  result.repairs = seg.blocks.repairs;

  std::string header;
  {
    std::string raw;
    for (const auto& u : transcript.utterances)
      raw += "(" + u.speaker + ") " + u.text + "\n";
    core::Document doc{transcript.id, core::DocKind::transcript, raw};
    if (auto date = features::extract_date(doc))
      header += "DATE: " + format_datestamp(*date) + "\n";
  }
  std::vector<std::string> speakers;
  for (const auto& u : transcript.utterances)
    if (std::find(speakers.begin(), speakers.end(), u.speaker) == speakers.end())
      speakers.push_back(u.speaker);
  header += "ATTENDEES: ";
  for (std::size_t i = 0; i < speakers.size(); ++i) {
    if (i) header += ", ";
    header += speakers[i];
  }
  header += "\n\n";

  std::string body;
  for (const auto& block : seg.blocks.partition.blocks) {
    std::string rendered = block_minute(block, transcript, seg, cfg);
    if (rendered.empty()) continue;
    if (!body.empty()) body += "\n";
    body += rendered;
    ++result.block_count;
  }
  result.text = header + body + "\n";
  return result;
}

std::string segmentation_report(const core::Transcript& transcript,
                                const config::Config& cfg) {
  Segmentation seg = run_segmentation(transcript, cfg);
  json report;
  report["sentence_count"] = seg.sentences.size();
  report["repairs"] = seg.blocks.repairs;
  report["boundary_scores"] = seg.depth_scores;
  report["blocks"] = json::array();
  for (const auto& b : seg.blocks.partition.blocks)
    report["blocks"].push_back({{"begin", b.begin}, {"end", b.end}});
  return report.dump(2);
}

std::string summaries_report(const core::Transcript& transcript,
                             const config::Config& cfg) {
  Segmentation seg = run_segmentation(transcript, cfg);
  json report = json::array();
  std::size_t index = 0;
  for (const auto& block : seg.blocks.partition.blocks) {
    auto bt = summarize::format_block(block, transcript, seg.sentences);
    bt = summarize::truncate_block(bt, cfg.summarizer.max_tokens);
    auto summary = summarize::summarize_block(
        bt, summarize::SummarizerConfig{cfg.summarizer.ratio});
    std::string text =
        summarize::postprocess(summary.text, summarize::default_post_rules());
    report.push_back({{"block", index++},
                      {"begin", block.begin},
                      {"end", block.end},
                      {"summary", text}});
  }
  return report.dump(2);
}

std::vector<ManifestRow> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest: " + path);
  std::vector<ManifestRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string::npos
                                            ? std::string::npos
                                            : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() < 3) throw DataError("manifest row needs >= 3 columns: " + line);
    ManifestRow row;
    row.pair_id = cols[0];
    row.path1 = cols[1];
    row.path2 = cols[2];
    if (cols.size() >= 4 && !cols[3].empty()) {
      if (cols[3] == "TRUE") row.label = true;
      else if (cols[3] == "FALSE") row.label = false;
      else throw DataError("manifest label must be TRUE or FALSE: " + cols[3]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

core::Document load_document(const std::string& path, core::DocKind kind) {
  core::Document doc;
  doc.id = path;
  doc.kind = kind;
  try {
    doc.raw = core::read_file(path);
  } catch (const std::exception& e) {
    throw DataError(e.what());
  }
  return doc;
}

features::FeatureVector pair_features(const PairModel& model,
                                      const core::Document& d1,
                                      const core::Document& d2) {
  features::TrigramHashEmbedder embedder(model.embedder_seed);
  features::FeatureConfig fcfg;
  fcfg.n_chunks = model.n_chunks;
  fcfg.entity_tags = model.entity_tags;
  return features::build_feature_vector(d1, d2, model.idf, embedder, fcfg);
}

TrainReport train_pair_model(const std::vector<ManifestRow>& manifest,
                             PairTask task, const config::Config& cfg) {
  if (manifest.empty()) throw DataError("empty training manifest");
  core::DocKind kind1 =
      task == PairTask::B ? core::DocKind::transcript : core::DocKind::minute;

  std::vector<core::Document> corpus;
  std::vector<std::pair<core::Document, core::Document>> pairs;
  for (const auto& row : manifest) {
    if (!row.label) throw DataError("training manifest row without label: " + row.pair_id);
    auto d1 = load_document(row.path1, kind1);
    auto d2 = load_document(row.path2, core::DocKind::minute);
    corpus.push_back(d1);
    corpus.push_back(d2);
    pairs.emplace_back(std::move(d1), std::move(d2));
  }

  TrainReport report;
  report.model.task = task;
  report.model.idf = features::fit_idf(corpus);
  report.model.embedder_seed = features::TrigramHashEmbedder().seed();
  report.model.n_chunks = cfg.features.n_chunks;
  report.model.entity_tags = cfg.features.entity_tags;
  report.model.loss = cfg.learn.loss;

  learn::Dataset ds;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto fv = pair_features(report.model, pairs[i].first, pairs[i].second);
    ds.x.emplace_back(fv.begin(), fv.end());
    ds.y.push_back(*manifest[i].label);
    ds.ids.push_back(manifest[i].pair_id);
  }

  learn::SearchSpace space;
  report.model.hp = learn::hyperparam_search(ds, space, cfg.learn.budget,
                                             cfg.learn.seed, cfg.learn.k,
                                             cfg.learn.loss);
  auto cv = learn::cross_validate(ds, cfg.learn.k, report.model.hp,
                                  cfg.learn.loss, cfg.learn.seed);
  report.model.ensemble = std::move(cv.ensemble);
  report.mean_validation = cv.mean_validation;
  return report;
}

std::string model_to_json(const PairModel& model) {
  json j;
  j["feature_version"] = model.feature_version;
  j["task"] = model.task == PairTask::B ? "B" : "C";
  j["loss"] = learn::to_string(model.loss);
  j["hyperparams"] = {{"lambda", model.hp.lambda},
                      {"lr", model.hp.lr},
                      {"epochs", model.hp.epochs},
                      {"seed", model.hp.seed}};
  j["embedder_seed"] = model.embedder_seed;
  j["n_chunks"] = model.n_chunks;
  j["entity_tags"] = model.entity_tags;
  j["threshold"] = model.ensemble.threshold;
  j["scaler"] = {{"mean", model.ensemble.scaler.mean},
                 {"stddev", model.ensemble.scaler.stddev}};
  j["models"] = json::array();
  for (const auto& m : model.ensemble.models)
    j["models"].push_back({{"weights", m.weights}, {"bias", m.bias}});
  j["idf"] = {{"doc_count", model.idf.doc_count},
              {"default_weight", model.idf.default_weight},
              {"weights", model.idf.weights}};
  return j.dump(2);
}

PairModel model_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ModelError(std::string("model file is not valid JSON: ") + e.what());
  }
  PairModel model;
  try {
    model.feature_version = j.at("feature_version").get<std::string>();
    if (model.feature_version != features::kFeatureVersion)
      throw ModelError("feature version mismatch: " + model.feature_version);
    model.task = j.at("task").get<std::string>() == "B" ? PairTask::B : PairTask::C;
    auto loss = learn::loss_from_string(j.at("loss").get<std::string>());
    if (!loss) throw ModelError("unknown loss kind in model file");
    model.loss = *loss;
    const auto& hp = j.at("hyperparams");
    model.hp.lambda = hp.at("lambda").get<double>();
    model.hp.lr = hp.at("lr").get<double>();
    model.hp.epochs = hp.at("epochs").get<int>();
    model.hp.seed = hp.at("seed").get<std::uint64_t>();
    model.embedder_seed = j.at("embedder_seed").get<std::uint64_t>();
    model.n_chunks = j.at("n_chunks").get<int>();
    model.entity_tags = j.at("entity_tags").get<std::vector<std::string>>();
    model.ensemble.threshold = j.at("threshold").get<double>();
    model.ensemble.scaler.mean =
        j.at("scaler").at("mean").get<std::vector<double>>();
    model.ensemble.scaler.stddev =
        j.at("scaler").at("stddev").get<std::vector<double>>();
    for (const auto& m : j.at("models")) {
      learn::LinearModel lm;
      lm.weights = m.at("weights").get<std::vector<double>>();
      lm.bias = m.at("bias").get<double>();
      lm.loss = model.loss;
      lm.hp = model.hp;
      model.ensemble.models.push_back(std::move(lm));
    }
    model.idf.doc_count = j.at("idf").at("doc_count").get<std::size_t>();
    model.idf.default_weight = j.at("idf").at("default_weight").get<double>();
    model.idf.weights =
        j.at("idf").at("weights").get<std::map<std::string, double>>();
  } catch (const json::exception& e) {
    throw ModelError(std::string("malformed model file: ") + e.what());
  }
  return model;
}

std::vector<PairPrediction> classify_pairs(const PairModel& model,
                                           const std::vector<ManifestRow>& manifest) {
  core::DocKind kind1 = model.task == PairTask::B ? core::DocKind::transcript
                                                  : core::DocKind::minute;
  std::vector<PairPrediction> out;
  for (const auto& row : manifest) {
    auto d1 = load_document(row.path1, kind1);
    auto d2 = load_document(row.path2, core::DocKind::minute);
    auto fv = pair_features(model, d1, d2);
    auto pred = learn::predict_ensemble(model.ensemble,
                                        std::vector<double>(fv.begin(), fv.end()));
    out.push_back(PairPrediction{row.pair_id, pred.score, pred.label});
  }
  return out;
}

}  // namespace minutekit::pipeline
