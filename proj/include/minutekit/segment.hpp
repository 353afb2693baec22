#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "minutekit/core.hpp"

namespace minutekit::segment {

struct InvalidBudget : std::runtime_error {
  InvalidBudget() : std::runtime_error("stride must be smaller than max_tokens") {}
};
struct CoverageGap : std::runtime_error {
  explicit CoverageGap(std::size_t sent)
      : std::runtime_error("sentence " + std::to_string(sent) + " covered by no chunk") {}
};
struct EmptyPartition : std::runtime_error {
  EmptyPartition() : std::runtime_error("agreement_rate requires non-empty partitions") {}
};

enum class BioLabel { B, I, O };

// Half-open sentence range [begin, end) plus its whitespace-token total.
struct Chunk {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t token_count = 0;
};

struct SentenceLabeling {
  std::vector<BioLabel> labels;
};

// Contiguous topic block over global sentence indices, [begin, end).
struct Block {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

struct BlockPartition {
  std::vector<Block> blocks;
};

struct AgreementReport {
  double a12 = 0.0;
  double a21 = 0.0;
  double average = 0.0;
};

struct SegmenterConfig {
  std::size_t window = 4;  // sliding-window width in sentences
  double k = 0.5;          // depth-score cutoff factor
};

struct BlocksResult {
  BlockPartition partition;
  std::size_t repairs = 0;  // orphan I labels promoted to B
};

// Sliding chunks over sentence boundaries: each chunk holds as many whole
// sentences as fit in max_tokens; the next chunk starts at the first sentence
// boundary at least `stride` tokens past the previous start.
std::vector<Chunk> chunk_sentences(const std::vector<core::Sentence>& sentences,
                                   std::size_t max_tokens = 4096,
                                   std::size_t stride = 1024,
                                   std::vector<std::string>* warnings = nullptr);

// Per-sentence labels merged across overlapping chunks; the earliest chunk
// containing a sentence wins.
SentenceLabeling merge_chunk_labels(
    const std::vector<std::pair<Chunk, std::vector<BioLabel>>>& chunk_predictions,
    std::size_t sentence_count);

BlocksResult labels_to_blocks(const SentenceLabeling& labeling);

// Lexical-cohesion labeler: cosine similarity of adjacent term windows,
// boundaries at depth-score peaks above mean - k * stddev.
SentenceLabeling default_segmenter(const std::vector<core::Sentence>& sentences,
                                   const SegmenterConfig& cfg = {},
                                   const core::TermSet& stopwords = core::default_stopwords(),
                                   std::vector<double>* depth_scores = nullptr);

// a12 = mean over B1 blocks of the best fractional overlap with any B2 block.
AgreementReport agreement_rate(const BlockPartition& b1, const BlockPartition& b2);

}  // namespace minutekit::segment
