// minutekit: meeting-minute generation and transcript/minute pair matching.
//
// Exit codes: 0 ok, 2 input error, 3 config error, 4 data error, 5 model error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "minutekit/eval.hpp"
#include "minutekit/minuteparse.hpp"
#include "minutekit/pipeline.hpp"

namespace fs = std::filesystem;
using namespace minutekit;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kConfigError = 3;
constexpr int kDataError = 4;
constexpr int kModelError = 5;

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + out_path);
  out << content;
}

nlohmann::json tree_to_json(const minuteparse::MinuteTree& tree, std::size_t id) {
  nlohmann::json node;
  node["text"] = tree.nodes[id].text;
  node["children"] = nlohmann::json::array();
  for (std::size_t c : tree.nodes[id].children)
    node["children"].push_back(tree_to_json(tree, c));
  return node;
}

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

config::Config resolve_config(const CommonOpts& opts) {
  config::Config cfg;
  if (!opts.config_path.empty()) cfg = config::load_config(opts.config_path);
  if (opts.seed_set) cfg.learn.seed = opts.seed;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meeting minute generation and pair classification toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  app.add_option("--config", opts.config_path, "JSON config file");
  app.add_option("--out", opts.out_path, "output path ('-' = stdout)");
  app.add_flag_callback("--version", [] {
    std::cout << "minutekit 1.0 (" << features::kFeatureVersion << ")\n";
    std::exit(0);
  });
  auto* seed_opt = app.add_option("--seed", opts.seed, "override learn.seed");

  std::string transcript_path, minute_path, model_path, manifest_path;
  std::string doc1_path, doc2_path, candidates_dir, refs_dir;
  std::string task_str = "B", mode_str = "average";
  bool trace = false, dump_graph = false;

  auto* cmd_minute = app.add_subcommand("minute", "generate a structured minute");
  cmd_minute->add_option("transcript", transcript_path)->required();

  auto* cmd_segment = app.add_subcommand("segment", "topic segmentation report");
  cmd_segment->add_option("transcript", transcript_path)->required();

  auto* cmd_summarize = app.add_subcommand("summarize", "block summaries (JSON)");
  cmd_summarize->add_option("transcript", transcript_path)->required();

  auto* cmd_parse = app.add_subcommand("parse-minute", "parse a minute's structure");
  cmd_parse->add_option("minute", minute_path)->required();
  cmd_parse->add_flag("--trace", trace, "include the action sequence");

  auto* cmd_features = app.add_subcommand("features", "pair feature vector (JSON)");
  cmd_features->add_option("doc1", doc1_path)->required();
  cmd_features->add_option("doc2", doc2_path)->required();
  cmd_features->add_option("--task", task_str, "B (transcript/minute) or C");
  cmd_features->add_flag("--dump-graph", dump_graph, "unused; accepted for parity");

  auto* cmd_train = app.add_subcommand("train", "train the pair classifier");
  cmd_train->add_option("manifest", manifest_path)->required();
  cmd_train->add_option("--task", task_str, "B or C");
  cmd_train->add_option("--model-out", model_path, "model file path")->required();

  auto* cmd_classify = app.add_subcommand("classify", "score document pairs");
  cmd_classify->add_option("model", model_path)->required();
  cmd_classify->add_option("manifest", manifest_path)->required();

  auto* cmd_eval = app.add_subcommand("eval", "ROUGE evaluation report");
  cmd_eval->add_option("candidates", candidates_dir)->required();
  cmd_eval->add_option("references", refs_dir)->required();
  cmd_eval->add_option("--mode", mode_str, "average or max");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  opts.seed_set = seed_opt->count() > 0;

  config::Config cfg;
  try {
    cfg = resolve_config(opts);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (cmd_minute->parsed()) {
      auto transcript = core::parse_transcript(
          core::read_file(transcript_path), fs::path(transcript_path).stem().string());
      auto result = pipeline::generate_minute(transcript, cfg);
      write_output(opts.out_path, result.text);
      return kOk;
    }

    if (cmd_segment->parsed()) {
      auto transcript = core::parse_transcript(core::read_file(transcript_path));
      write_output(opts.out_path, pipeline::segmentation_report(transcript, cfg) + "\n");
      return kOk;
    }

    if (cmd_summarize->parsed()) {
      auto transcript = core::parse_transcript(core::read_file(transcript_path));
      write_output(opts.out_path, pipeline::summaries_report(transcript, cfg) + "\n");
      return kOk;
    }

    if (cmd_parse->parsed()) {
      auto lines = minuteparse::read_lines(core::read_file(minute_path));
      std::vector<minuteparse::Action> actions;
      auto tree = minuteparse::parse(lines, minuteparse::default_predictor, &actions);
      nlohmann::json out;
      out["labeled_fields"] = nlohmann::json::array();
      for (const auto& f : tree.labeled_fields)
        out["labeled_fields"].push_back(
            {{"label", minuteparse::to_string(f.label)}, {"text", f.text}});
      out["tree"] = tree_to_json(tree, 0)["children"];
      if (trace) {
        out["actions"] = nlohmann::json::array();
        for (const auto& a : actions) out["actions"].push_back(minuteparse::to_string(a));
      }
      write_output(opts.out_path, out.dump(2) + "\n");
      return kOk;
    }

    if (cmd_features->parsed()) {
      core::DocKind kind1 = task_str == "C" ? core::DocKind::minute
                                            : core::DocKind::transcript;
      auto d1 = pipeline::load_document(doc1_path, kind1);
      auto d2 = pipeline::load_document(doc2_path, core::DocKind::minute);
      // Debug command: idf fitted on the pair itself.
      auto idf = features::fit_idf({d1, d2});
      features::TrigramHashEmbedder embedder;
      features::FeatureConfig fcfg{cfg.features.n_chunks, cfg.features.entity_tags};
      auto fv = features::build_feature_vector(d1, d2, idf, embedder, fcfg);
      nlohmann::json out;
      out["feature_version"] = features::kFeatureVersion;
      out["vector"] = fv;
      out["names"] = {"tfidf_cos", "jaccard",  "ne_overlap", "date_year",
                      "date_month", "date_day", "date_hour",  "semsim"};
      write_output(opts.out_path, out.dump(2) + "\n");
      return kOk;
    }

    if (cmd_train->parsed()) {
      auto manifest = pipeline::load_manifest(manifest_path);
      auto task = task_str == "C" ? pipeline::PairTask::C : pipeline::PairTask::B;
      pipeline::TrainReport report;
      try {
        report = pipeline::train_pair_model(manifest, task, cfg);
      } catch (const std::exception& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kDataError;
      }
      write_output(model_path, pipeline::model_to_json(report.model) + "\n");
      const auto& m = report.mean_validation;
      std::cout << "cv accuracy: " << m.accuracy
                << "  precision: " << (m.precision ? std::to_string(*m.precision) : "n/a")
                << "  recall: " << (m.recall ? std::to_string(*m.recall) : "n/a")
                << "  f1: " << m.f1 << "\n";
      return kOk;
    }

    if (cmd_classify->parsed()) {
      pipeline::PairModel model;
      try {
        model = pipeline::model_from_json(core::read_file(model_path));
      } catch (const pipeline::ModelError& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return kModelError;
      }
      std::vector<pipeline::ManifestRow> manifest;
      try {
        manifest = pipeline::load_manifest(manifest_path);
      } catch (const std::exception& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kDataError;
      }
      std::string out;
      for (const auto& p : pipeline::classify_pairs(model, manifest)) {
        nlohmann::json score = p.score;  // shortest round-trip formatting
        out += p.pair_id + "\t" + score.dump() + "\t" + (p.label ? "TRUE" : "FALSE") + "\n";
      }
      write_output(opts.out_path, out);
      return kOk;
    }

    if (cmd_eval->parsed()) {
      eval::RefAggregation mode = mode_str == "max" ? eval::RefAggregation::max
                                                    : eval::RefAggregation::average;
      nlohmann::json report;
      report["mode"] = mode_str;
      report["candidates"] = nlohmann::json::array();
      double sum1 = 0.0, sum2 = 0.0, suml = 0.0;
      std::size_t count = 0;
      std::vector<fs::path> cand_files;
      for (const auto& entry : fs::directory_iterator(candidates_dir))
        if (entry.is_regular_file()) cand_files.push_back(entry.path());
      std::sort(cand_files.begin(), cand_files.end());
      for (const auto& cand_path : cand_files) {
        std::string stem = cand_path.stem().string();
        std::string cand = core::read_file(cand_path.string());
        std::vector<eval::RougeScore> r1, r2, rl;
        std::vector<fs::path> ref_files;
        for (const auto& entry : fs::directory_iterator(refs_dir)) {
          if (!entry.is_regular_file()) continue;
          if (entry.path().stem().string().rfind(stem, 0) == 0)
            ref_files.push_back(entry.path());
        }
        std::sort(ref_files.begin(), ref_files.end());
        for (const auto& ref_path : ref_files) {
          std::string ref = core::read_file(ref_path.string());
          r1.push_back(eval::rouge_n(cand, ref, 1));
          r2.push_back(eval::rouge_n(cand, ref, 2));
          rl.push_back(eval::rouge_l(cand, ref));
        }
        if (r1.empty()) continue;
        auto a1 = eval::aggregate_over_refs(r1, mode);
        auto a2 = eval::aggregate_over_refs(r2, mode);
        auto al = eval::aggregate_over_refs(rl, mode);
        report["candidates"].push_back(
            {{"id", stem},
             {"references", ref_files.size()},
             {"rouge1", {{"p", a1.precision}, {"r", a1.recall}, {"f1", a1.f1}}},
             {"rouge2", {{"p", a2.precision}, {"r", a2.recall}, {"f1", a2.f1}}},
             {"rougeL", {{"p", al.precision}, {"r", al.recall}, {"f1", al.f1}}}});
        sum1 += a1.f1;
        sum2 += a2.f1;
        suml += al.f1;
        ++count;
      }
      if (count) {
        report["corpus_mean"] = {{"rouge1_f1", sum1 / count},
                                 {"rouge2_f1", sum2 / count},
                                 {"rougeL_f1", suml / count}};
      }
      write_output(opts.out_path, report.dump(2) + "\n");
      return kOk;
    }
  } catch (const config::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const pipeline::ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kModelError;
  } catch (const pipeline::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
