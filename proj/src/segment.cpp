#include "minutekit/segment.hpp"

#include <algorithm>
#include <cmath>

namespace minutekit::segment {

std::vector<Chunk> chunk_sentences(const std::vector<core::Sentence>& sentences,
                                   std::size_t max_tokens, std::size_t stride,
                                   std::vector<std::string>* warnings) {
  if (stride >= max_tokens || stride == 0) throw InvalidBudget();
  const std::size_t n = sentences.size();
  std::vector<Chunk> chunks;
  if (n == 0) return chunks;

  // Token counts clamped to the budget so every sentence fits somewhere.
  std::vector<std::size_t> tokens(n);
  for (std::size_t i = 0; i < n; ++i) {
    tokens[i] = sentences[i].token_count;
    if (tokens[i] > max_tokens) {
      if (warnings)
        warnings->push_back("sentence " + std::to_string(i) +
                            " exceeds max_tokens; hard-truncated");
      tokens[i] = max_tokens;
    }
  }
  // offset[i] = tokens before sentence i.
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offset[i + 1] = offset[i] + tokens[i];

  std::size_t start = 0;
  while (true) {
    Chunk c;
    c.begin = start;
    c.end = start + 1;
    c.token_count = tokens[start];
    while (c.end < n && c.token_count + tokens[c.end] <= max_tokens) {
      c.token_count += tokens[c.end];
      ++c.end;
    }
    chunks.push_back(c);
    if (c.end == n) break;
    // Next start: first sentence boundary >= stride tokens past this start,
    // clamped so consecutive chunks never leave a gap.
    std::size_t next = start + 1;
    while (next < n && offset[next] - offset[start] < stride) ++next;
    next = std::min(next, c.end);
    start = std::max(next, start + 1);
  }
  return chunks;
}

SentenceLabeling merge_chunk_labels(
    const std::vector<std::pair<Chunk, std::vector<BioLabel>>>& chunk_predictions,
    std::size_t sentence_count) {
  SentenceLabeling out;
  out.labels.assign(sentence_count, BioLabel::O);
  std::vector<bool> assigned(sentence_count, false);
  for (const auto& [chunk, labels] : chunk_predictions) {
    if (labels.size() != chunk.end - chunk.begin)
      throw std::invalid_argument("label list length does not match chunk size");
    for (std::size_t s = chunk.begin; s < chunk.end && s < sentence_count; ++s) {
      if (assigned[s]) continue;  // prior chunk wins
      out.labels[s] = labels[s - chunk.begin];
      assigned[s] = true;
    }
  }
  for (std::size_t s = 0; s < sentence_count; ++s)
    if (!assigned[s]) throw CoverageGap(s);
  return out;
}

BlocksResult labels_to_blocks(const SentenceLabeling& labeling) {
  BlocksResult res;
  bool open = false;
  Block cur;
  for (std::size_t i = 0; i < labeling.labels.size(); ++i) {
    BioLabel l = labeling.labels[i];
    if (l == BioLabel::O) {
      if (open) res.partition.blocks.push_back(cur);
      open = false;
      continue;
    }
    if (l == BioLabel::I && !open) {
      ++res.repairs;  // orphan I starts a block as if it were B
      l = BioLabel::B;
    }
    if (l == BioLabel::B) {
      if (open) res.partition.blocks.push_back(cur);
      cur = Block{i, i + 1};
      open = true;
    } else {
      cur.end = i + 1;
    }
  }
  if (open) res.partition.blocks.push_back(cur);
  return res;
}

namespace {

double cosine(const core::TermVector& a, const core::TermVector& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [t, w] : a) {
    na += w * w;
    auto it = b.find(t);
    if (it != b.end()) dot += w * it->second;
  }
  for (const auto& [t, w] : b) nb += w * w;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

core::TermVector window_vector(const std::vector<core::TermVector>& sents,
                               std::size_t begin, std::size_t end) {
  core::TermVector v;
  for (std::size_t i = begin; i < end; ++i)
    for (const auto& [t, w] : sents[i]) v[t] += w;
  return v;
}

}  // namespace

SentenceLabeling default_segmenter(const std::vector<core::Sentence>& sentences,
                                   const SegmenterConfig& cfg,
                                   const core::TermSet& stopwords,
                                   std::vector<double>* depth_scores) {
  const std::size_t n = sentences.size();
  SentenceLabeling out;
  if (n == 0) return out;
  out.labels.assign(n, BioLabel::I);

  std::vector<core::TermVector> terms(n);
  std::vector<bool> near_empty(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    auto stats = core::normalize_terms(sentences[i].text, stopwords);
    near_empty[i] = stats.terms.empty() && sentences[i].token_count < 3;
    terms[i] = std::move(stats.counts);
  }

  std::vector<bool> boundary(n, false);  // boundary[g]: new segment starts at g
  const std::size_t w = std::max<std::size_t>(1, cfg.window);
  if (n >= 2 * w && n >= 2) {
    // Gap g sits between sentences g-1 and g.
    std::vector<double> sim(n, 0.0);
    for (std::size_t g = 1; g < n; ++g) {
      std::size_t lb = g >= w ? g - w : 0;
      std::size_t re = std::min(n, g + w);
      sim[g] = cosine(window_vector(terms, lb, g), window_vector(terms, g, re));
    }
    // TextTiling depth: climb to the nearest peak on each side.
    std::vector<double> depth(n, 0.0);
    for (std::size_t g = 1; g < n; ++g) {
      double left = sim[g];
      for (std::size_t i = g; i >= 1 && sim[i] >= left; --i) left = sim[i];
      double right = sim[g];
      for (std::size_t i = g; i + 1 < n && sim[i + 1] >= right; ++i) right = sim[i + 1];
      depth[g] = (left - sim[g]) + (right - sim[g]);
    }
    double mean = 0.0;
    for (std::size_t g = 1; g < n; ++g) mean += depth[g];
    mean /= static_cast<double>(n - 1);
    double var = 0.0;
    for (std::size_t g = 1; g < n; ++g) var += (depth[g] - mean) * (depth[g] - mean);
    var /= static_cast<double>(n - 1);
    const double cutoff = mean - cfg.k * std::sqrt(var);
    for (std::size_t g = 1; g < n; ++g) {
      if (depth[g] <= 0.0 || depth[g] <= cutoff) continue;
      // Keep only local maxima so one lexical shift yields one boundary.
      double prev = g > 1 ? depth[g - 1] : -1.0;
      double next = g + 1 < n ? depth[g + 1] : -1.0;
      if (depth[g] < prev || depth[g] < next) continue;
      if (depth[g] == prev) continue;  // plateau: keep the first gap only
      boundary[g] = true;
    }
    if (depth_scores) depth_scores->assign(depth.begin() + 1, depth.end());
  } else if (depth_scores) {
    depth_scores->clear();
  }

  bool segment_start = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && boundary[i]) segment_start = true;
    if (near_empty[i] && n > 1) {
      out.labels[i] = BioLabel::O;
      continue;
    }
    out.labels[i] = segment_start ? BioLabel::B : BioLabel::I;
    segment_start = false;
  }
  if (n == 1) out.labels[0] = BioLabel::B;
  return out;
}

namespace {

std::size_t overlap(const Block& a, const Block& b) {
  std::size_t lo = std::max(a.begin, b.begin);
  std::size_t hi = std::min(a.end, b.end);
  return hi > lo ? hi - lo : 0;
}

double one_sided(const BlockPartition& b1, const BlockPartition& b2) {
  double sum = 0.0;
  for (const auto& blk1 : b1.blocks) {
    std::size_t best = 0;
    for (const auto& blk2 : b2.blocks) best = std::max(best, overlap(blk1, blk2));
    if (blk1.size() > 0)
      sum += static_cast<double>(best) / static_cast<double>(blk1.size());
  }
  return sum / static_cast<double>(b1.blocks.size());
}

}  // namespace

AgreementReport agreement_rate(const BlockPartition& b1, const BlockPartition& b2) {
  if (b1.blocks.empty() || b2.blocks.empty()) throw EmptyPartition();
  AgreementReport r;
  r.a12 = one_sided(b1, b2);
  r.a21 = one_sided(b2, b1);
  r.average = (r.a12 + r.a21) / 2.0;
  return r;
}

}  // namespace minutekit::segment
