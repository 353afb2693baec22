#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "minutekit/core.hpp"

namespace minutekit::features {

struct EmptyCorpus : std::runtime_error {
  EmptyCorpus() : std::runtime_error("idf corpus is empty") {}
};
struct InvalidN : std::runtime_error {
  InvalidN() : std::runtime_error("chunk count must be >= 1") {}
};

struct IdfTable {
  std::map<std::string, double> weights;
  std::size_t doc_count = 0;
  double default_weight = 1.0;  // unseen terms

  double idf(const std::string& term) const {
    auto it = weights.find(term);
    return it == weights.end() ? default_weight : it->second;
  }
};

using NamedEntitySet = std::set<std::string>;

struct DateStamp {
  std::optional<int> year, month, day, hour;
};

// Fixed dimension order: tfidf_cos, jaccard, ne_overlap, date year/month/
// day/hour consistency, chunked semantic similarity.
using FeatureVector = std::array<double, 8>;
inline constexpr const char* kFeatureVersion = "fv8-v1";

struct TokenEmbedder {
  virtual ~TokenEmbedder() = default;
  virtual std::vector<double> embed(const std::string& token) const = 0;
};

// Deterministic default: L2-normalized hashed character-trigram counts.
struct TrigramHashEmbedder : TokenEmbedder {
  explicit TrigramHashEmbedder(std::uint64_t seed = 0x6d6b2d656d6264ULL,
                               std::size_t dim = 1024)
      : seed_(seed), dim_(dim) {}
  std::vector<double> embed(const std::string& token) const override;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::size_t dim_;
};

// idf(t) = ln((1 + |corpus|) / (1 + df(t))) + 1.
IdfTable fit_idf(const std::vector<core::Document>& corpus,
                 const core::TermSet& stopwords = core::default_stopwords());

double tfidf_cosine(const core::Document& d1, const core::Document& d2,
                    const IdfTable& idf,
                    const core::TermSet& stopwords = core::default_stopwords());

double jaccard(const core::Document& d1, const core::Document& d2,
               const core::TermSet& stopwords = core::default_stopwords());

inline const std::vector<std::string> kDefaultEntityTags = {
    "PERSON", "PROJECT", "ORGANIZATION"};

// "[PERSON 3]" / "[PERSON3]" style anonymized tokens, normalized to one form.
NamedEntitySet extract_entities(const std::string& text,
                                const std::vector<std::string>& tags = kDefaultEntityTags);

double ne_overlap(const NamedEntitySet& e1, const NamedEntitySet& e2);

std::optional<DateStamp> parse_datestamp(const std::string& text);

// Minutes: the parsed date line. Transcripts: scan the first 50 utterances.
std::optional<DateStamp> extract_date(const core::Document& doc);

std::array<double, 4> date_consistency(const std::optional<DateStamp>& d1,
                                       const std::optional<DateStamp>& d2);

// Documents split into N near-equal token chunks; per aligned pair, greedy
// max-cosine matching F1; scores averaged.
double chunked_semantic_similarity(const core::Document& d1,
                                   const core::Document& d2, int n_chunks,
                                   const TokenEmbedder& embedder);

struct FeatureConfig {
  int n_chunks = 4;
  std::vector<std::string> entity_tags = kDefaultEntityTags;
};

FeatureVector build_feature_vector(const core::Document& d1,
                                   const core::Document& d2, const IdfTable& idf,
                                   const TokenEmbedder& embedder,
                                   const FeatureConfig& cfg = {});

}  // namespace minutekit::features
