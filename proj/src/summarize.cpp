#include "minutekit/summarize.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>

namespace minutekit::summarize {

BlockText format_block(const segment::Block& block,
                       const core::Transcript& transcript,
                       const std::vector<core::Sentence>& sentences) {
  std::set<std::size_t> utt_indices;
  for (std::size_t s = block.begin; s < block.end && s < sentences.size(); ++s)
    utt_indices.insert(sentences[s].utterance_index);
  BlockText bt;
  for (std::size_t ui : utt_indices) {
    const auto& u = transcript.utterances.at(ui);
    std::string line = u.speaker + ": " + u.text;
    bt.token_count += core::count_tokens(line);
    bt.lines.push_back(std::move(line));
  }
  if (bt.lines.empty()) throw EmptyBlock();
  return bt;
}

BlockText truncate_block(const BlockText& bt, std::size_t max_tokens,
                         bool* truncated_midline) {
  if (truncated_midline) *truncated_midline = false;
  BlockText out;
  for (const auto& line : bt.lines) {
    std::size_t tokens = core::count_tokens(line);
    if (out.lines.empty() && tokens > max_tokens) {
      // A lone oversized line: keep its first max_tokens tokens.
      auto toks = core::whitespace_tokens(line);
      toks.resize(max_tokens);
      std::string cut;
      for (const auto& t : toks) {
        if (!cut.empty()) cut += ' ';
        cut += t;
      }
      out.lines.push_back(std::move(cut));
      out.token_count = max_tokens;
      if (truncated_midline) *truncated_midline = true;
      break;
    }
    if (out.token_count + tokens > max_tokens) break;
    out.lines.push_back(line);
    out.token_count += tokens;
  }
  return out;
}

namespace {

struct Candidate {
  std::string speaker;
  std::string sentence;
  core::TermVector counts;
  double score = 0.0;
  std::size_t position = 0;
};

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

}  // namespace

Summary summarize_block(const BlockText& bt, const SummarizerConfig& cfg,
                        const core::TermSet& stopwords) {
  if (bt.lines.empty()) throw EmptyBlock();

  std::vector<Candidate> cands;
  core::TermVector centroid;
  for (const auto& line : bt.lines) {
    std::string speaker = "UNKNOWN";
    std::string body = line;
    if (auto colon = line.find(": "); colon != std::string::npos) {
      speaker = line.substr(0, colon);
      body = line.substr(colon + 2);
    }
    for (auto& sent : core::split_sentences(body)) {
      Candidate c;
      c.speaker = speaker;
      c.counts = core::normalize_terms(sent, stopwords).counts;
      for (const auto& [t, w] : c.counts) centroid[t] += w;
      c.sentence = std::move(sent);
      c.position = cands.size();
      cands.push_back(std::move(c));
    }
  }
  if (cands.empty()) throw EmptyBlock();

  for (auto& c : cands) c.score = cosine(c.counts, centroid);

  std::size_t m = static_cast<std::size_t>(
      std::ceil(cfg.ratio * static_cast<double>(bt.lines.size())));
  m = std::clamp<std::size_t>(m, 1, cands.size());

  std::vector<std::size_t> order(cands.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cands[a].score > cands[b].score;  // stable: ties keep earlier first
  });
  order.resize(m);
  std::sort(order.begin(), order.end());  // re-emit in original order

  std::string text;
  for (std::size_t i : order) {
    const auto& c = cands[i];
    if (!text.empty()) text += ' ';
    text += c.speaker + " said: " + c.sentence;
    char last = text.back();
    if (last != '.' && last != '!' && last != '?') text += '.';
  }
  return Summary{text, 0};
}

namespace {

// Regex replacement with $N group refs plus \u$N to uppercase the group.
std::string apply_rule(const std::string& text, const PostRule& rule) {
  std::regex re(rule.pattern);
  std::string out;
  auto begin = std::sregex_iterator(text.begin(), text.end(), re);
  auto end = std::sregex_iterator();
  std::size_t last = 0;
  for (auto it = begin; it != end; ++it) {
    const std::smatch& m = *it;
    out.append(text, last, static_cast<std::size_t>(m.position(0)) - last);
    const std::string& rep = rule.replacement;
    for (std::size_t i = 0; i < rep.size(); ++i) {
      bool upper = false;
      std::size_t j = i;
      if (rep[j] == '\\' && j + 1 < rep.size() && rep[j + 1] == 'u') {
        upper = true;
        j += 2;
      }
      if (j < rep.size() && rep[j] == '$' && j + 1 < rep.size() &&
          std::isdigit(static_cast<unsigned char>(rep[j + 1]))) {
        std::size_t g = static_cast<std::size_t>(rep[j + 1] - '0');
        std::string sub = g < m.size() ? m.str(g) : "";
        if (upper && !sub.empty())
          sub[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(sub[0])));
        out += sub;
        i = j + 1;
      } else {
        out += rep[i];
      }
    }
    last = static_cast<std::size_t>(m.position(0)) + m.length(0);
    if (m.length(0) == 0) {  // avoid infinite loop on empty matches
      if (last < text.size()) out += text[last];
      ++last;
    }
  }
  out.append(text, last, std::string::npos);
  return out;
}

}  // namespace

std::string postprocess(const std::string& text, const std::vector<PostRule>& rules) {
  std::string out = text;
  for (const auto& rule : rules) out = apply_rule(out, rule);
  return out;
}

std::vector<PostRule> load_post_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open post-rule file: " + path);
  std::vector<PostRule> rules;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    rules.push_back(PostRule{line.substr(0, tab), line.substr(tab + 1)});
  }
  return rules;
}

const std::vector<PostRule>& default_post_rules() {
  static const std::vector<PostRule> rules =
      load_post_rules(core::data_dir() + "/postrules_en.tsv");
  return rules;
}

}  // namespace minutekit::summarize
