#include "minutekit/config.hpp"

#include <set>

#include "json.hpp"
#include "minutekit/core.hpp"

namespace minutekit::config {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key))
      throw ConfigError("unknown config key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

Config parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");
  reject_unknown(root, {"version", "segmenter", "summarizer", "argmine",
                        "features", "learn", "paths"},
                 "root");

  Config cfg;
  read(root, "version", cfg.version);
  if (cfg.version != 1) throw ConfigError("unsupported config version");

  if (root.contains("segmenter")) {
    const auto& s = root.at("segmenter");
    reject_unknown(s, {"backend", "max_tokens", "stride", "window", "k"}, "segmenter");
    read(s, "backend", cfg.segmenter.backend);
    read(s, "max_tokens", cfg.segmenter.max_tokens);
    read(s, "stride", cfg.segmenter.stride);
    read(s, "window", cfg.segmenter.window);
    read(s, "k", cfg.segmenter.k);
    if (cfg.segmenter.stride >= cfg.segmenter.max_tokens || cfg.segmenter.stride == 0)
      throw ConfigError("segmenter.stride must be in (0, max_tokens)");
    if (cfg.segmenter.window == 0) throw ConfigError("segmenter.window must be >= 1");
  }
  if (root.contains("summarizer")) {
    const auto& s = root.at("summarizer");
    reject_unknown(s, {"backend", "ratio", "max_tokens"}, "summarizer");
    read(s, "backend", cfg.summarizer.backend);
    read(s, "ratio", cfg.summarizer.ratio);
    read(s, "max_tokens", cfg.summarizer.max_tokens);
    if (cfg.summarizer.ratio <= 0.0 || cfg.summarizer.ratio > 1.0)
      throw ConfigError("summarizer.ratio must be in (0, 1]");
    if (cfg.summarizer.max_tokens == 0)
      throw ConfigError("summarizer.max_tokens must be >= 1");
  }
  if (root.contains("argmine")) {
    const auto& s = root.at("argmine");
    reject_unknown(s, {"backend"}, "argmine");
    read(s, "backend", cfg.argmine.backend);
  }
  if (root.contains("features")) {
    const auto& s = root.at("features");
    reject_unknown(s, {"N", "entity_tags"}, "features");
    read(s, "N", cfg.features.n_chunks);
    read(s, "entity_tags", cfg.features.entity_tags);
    if (cfg.features.n_chunks < 1) throw ConfigError("features.N must be >= 1");
  }
  if (root.contains("learn")) {
    const auto& s = root.at("learn");
    reject_unknown(s, {"k", "budget", "seed", "loss_kind"}, "learn");
    read(s, "k", cfg.learn.k);
    read(s, "budget", cfg.learn.budget);
    read(s, "seed", cfg.learn.seed);
    if (s.contains("loss_kind")) {
      auto loss = learn::loss_from_string(s.at("loss_kind").get<std::string>());
      if (!loss) throw ConfigError("learn.loss_kind must be 'logistic' or 'hinge'");
      cfg.learn.loss = *loss;
    }
    if (cfg.learn.k < 2) throw ConfigError("learn.k must be >= 2");
    if (cfg.learn.budget < 1) throw ConfigError("learn.budget must be >= 1");
  }
  if (root.contains("paths")) {
    const auto& s = root.at("paths");
    reject_unknown(s, {"data_dir"}, "paths");
    read(s, "data_dir", cfg.paths.data_dir);
  }

  for (const std::string& backend :
       {cfg.segmenter.backend, cfg.summarizer.backend, cfg.argmine.backend}) {
    if (backend != "default")
      throw ConfigError("unknown backend '" + backend + "'");
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::string text;
  try {
    text = core::read_file(path);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text);
}

}  // namespace minutekit::config
