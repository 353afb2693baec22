#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "minutekit/features.hpp"
#include "minutekit/learn.hpp"

namespace minutekit::config {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct Config {
  int version = 1;

  struct {
    std::string backend = "default";
    std::size_t max_tokens = 4096;
    std::size_t stride = 1024;
    std::size_t window = 4;
    double k = 0.5;
  } segmenter;

  struct {
    std::string backend = "default";
    double ratio = 0.25;
    std::size_t max_tokens = 1024;
  } summarizer;

  struct {
    std::string backend = "default";
  } argmine;

  struct {
    int n_chunks = 4;
    std::vector<std::string> entity_tags = features::kDefaultEntityTags;
  } features;

  struct {
    std::size_t k = 10;
    std::size_t budget = 20;
    std::uint64_t seed = 42;
    learn::LossKind loss = learn::LossKind::logistic;
  } learn;

  struct {
    std::string data_dir;  // empty = compiled-in default
  } paths;
};

// Strict load: unknown keys and invalid values raise ConfigError.
Config load_config(const std::string& path);
Config parse_config(const std::string& json_text);

}  // namespace minutekit::config
