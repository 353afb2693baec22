#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "minutekit/core.hpp"
#include "minutekit/segment.hpp"

namespace minutekit::summarize {

struct EmptyBlock : std::runtime_error {
  EmptyBlock() : std::runtime_error("block contains no utterances") {}
};

// Block rendered as "SPEAKER: text" lines ready for a summarizer.
struct BlockText {
  std::vector<std::string> lines;
  std::size_t token_count = 0;
};

struct Summary {
  std::string text;
  std::size_t block_index = 0;
};

struct PostRule {
  std::string pattern;      // std::regex (ECMAScript)
  std::string replacement;  // supports $0..$9 and \u$N (uppercase group)
};

struct SummarizerConfig {
  double ratio = 0.25;  // selected sentences per block line, ceil'd, min 1
};

// One "SPEAKER: text" line per utterance intersecting the block.
BlockText format_block(const segment::Block& block,
                       const core::Transcript& transcript,
                       const std::vector<core::Sentence>& sentences);

// Drop whole trailing lines until the budget holds; a single oversized first
// line is cut at the token level instead.
BlockText truncate_block(const BlockText& bt, std::size_t max_tokens = 1024,
                         bool* truncated_midline = nullptr);

// Extractive default: pick the sentences closest to the block term centroid
// and re-emit them in order as "SPEAKER said: ...".
Summary summarize_block(const BlockText& bt, const SummarizerConfig& cfg = {},
                        const core::TermSet& stopwords = core::default_stopwords());

std::string postprocess(const std::string& text, const std::vector<PostRule>& rules);

// Ordered pattern<TAB>replacement lines; '#' comments skipped.
std::vector<PostRule> load_post_rules(const std::string& path);
const std::vector<PostRule>& default_post_rules();

}  // namespace minutekit::summarize
