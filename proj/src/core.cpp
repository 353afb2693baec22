#include "minutekit/core.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace minutekit::core {

std::vector<std::string> whitespace_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::size_t count_tokens(const std::string& text) {
  std::size_t n = 0;
  bool in_tok = false;
  for (char c : text) {
    bool ws = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!ws && !in_tok) ++n;
    in_tok = !ws;
  }
  return n;
}

std::string to_lower(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string strip_punct(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (!std::ispunct(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

namespace {

// "(PERSON12) rest of line" -> speaker tag + text, or no match.
bool match_speaker_line(const std::string& line, std::string& speaker,
                        std::string& text) {
  if (line.empty() || line[0] != '(') return false;
  std::size_t i = 1;
  while (i < line.size() && std::isupper(static_cast<unsigned char>(line[i]))) ++i;
  if (i == 1) return false;  // no uppercase tag
  std::size_t tag_end = i;
  while (tag_end < line.size() && std::isdigit(static_cast<unsigned char>(line[tag_end]))) ++tag_end;
  if (tag_end >= line.size() || line[tag_end] != ')') return false;
  speaker = line.substr(1, tag_end - 1);
  text = trim(line.substr(tag_end + 1));
  return true;
}

}  // namespace

Transcript parse_transcript(const std::string& raw, const std::string& id) {
  Transcript t;
  t.id = id;
  std::istringstream in(raw);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    std::string speaker, text;
    if (match_speaker_line(trimmed, speaker, text)) {
      Utterance u;
      u.speaker = std::move(speaker);
      u.text = std::move(text);
      u.index = t.utterances.size();
      t.utterances.push_back(std::move(u));
    } else {
      if (t.utterances.empty())
        throw MalformedLine("continuation line with no prior utterance: " + trimmed);
      std::string& prev = t.utterances.back().text;
      if (!prev.empty()) prev += ' ';
      prev += trimmed;
    }
  }
  // Drop utterances that never received text, keeping indices contiguous.
  std::vector<Utterance> kept;
  for (auto& u : t.utterances) {
    if (!trim(u.text).empty()) {
      u.index = kept.size();
      kept.push_back(std::move(u));
    }
  }
  t.utterances = std::move(kept);
  if (t.utterances.empty()) throw EmptyTranscript();
  return t;
}

namespace {

bool is_terminal(char c) { return c == '.' || c == '?' || c == '!'; }

// Token ending at position i (inclusive), lowercased.
std::string token_ending_at(const std::string& s, std::size_t i) {
  std::size_t b = i + 1;
  while (b > 0 && !std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return to_lower(s.substr(b, i + 1 - b));
}

}  // namespace

std::vector<std::string> split_sentences(const std::string& text,
                                         const TermSet& abbreviations) {
  std::vector<std::string> out;
  std::size_t start = 0;
  const std::size_t n = text.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_terminal(text[i])) continue;
    std::size_t j = i + 1;
    while (j < n && is_terminal(text[j])) ++j;  // "?!", "..."
    std::size_t ws = j;
    while (ws < n && std::isspace(static_cast<unsigned char>(text[ws]))) ++ws;
    if (ws == j || ws == n) continue;  // no whitespace gap, or end of text
    unsigned char next = static_cast<unsigned char>(text[ws]);
    if (!std::isupper(next) && !std::isdigit(next)) continue;
    if (text[i] == '.' && abbreviations.count(token_ending_at(text, i))) continue;
    std::string sent = trim(text.substr(start, j - start));
    if (!sent.empty()) out.push_back(std::move(sent));
    start = ws;
    i = j - 1;
  }
  std::string tail = trim(text.substr(start));
  if (!tail.empty()) out.push_back(std::move(tail));
  if (out.empty() && !trim(text).empty()) out.push_back(trim(text));
  return out;
}

std::vector<std::string> split_sentences(const std::string& text) {
  return split_sentences(text, default_abbreviations());
}

std::vector<Sentence> transcript_sentences(const Transcript& transcript,
                                           const TermSet& abbreviations) {
  std::vector<Sentence> out;
  for (const auto& u : transcript.utterances) {
    for (auto& text : split_sentences(u.text, abbreviations)) {
      Sentence s;
      s.token_count = count_tokens(text);
      s.text = std::move(text);
      s.utterance_index = u.index;
      s.sent_index = out.size();
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<Sentence> transcript_sentences(const Transcript& transcript) {
  return transcript_sentences(transcript, default_abbreviations());
}

TermStats normalize_terms(const std::string& text, const TermSet& stopwords) {
  TermStats stats;
  for (const auto& tok : whitespace_tokens(text)) {
    std::string term = strip_punct(to_lower(tok));
    if (term.size() < 3 || term.size() > 14) continue;
    if (stopwords.count(term)) continue;
    stats.terms.insert(term);
    stats.counts[term] += 1.0;
  }
  return stats;
}

TermSet load_term_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open term file: " + path);
  TermSet set;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    set.insert(to_lower(t));
  }
  return set;
}

std::string data_dir() {
  if (const char* env = std::getenv("MINUTEKIT_DATA")) return env;
#ifdef MINUTEKIT_DATA_DIR
  return MINUTEKIT_DATA_DIR;
#else
  return "data";
#endif
}

const TermSet& default_stopwords() {
  // Stopword matching happens after punctuation stripping, so store the
  // entries stripped as well ("don't" -> "dont").
  static const TermSet set = [] {
    TermSet s;
    for (const auto& w : load_term_file(data_dir() + "/stopwords_en.txt")) {
      s.insert(strip_punct(w));
    }
    return s;
  }();
  return set;
}

const TermSet& default_abbreviations() {
  static const TermSet set = load_term_file(data_dir() + "/abbreviations_en.txt");
  return set;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace minutekit::core
