#include "minutekit/features.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

#include "minutekit/minuteparse.hpp"

namespace minutekit::features {

std::vector<double> TrigramHashEmbedder::embed(const std::string& token) const {
  std::vector<double> v(dim_, 0.0);
  std::string padded = "^" + core::to_lower(token) + "$";
  // FNV-1a over each trigram, mixed with the fixed seed.
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
    std::uint64_t h = 14695981039346656037ULL ^ seed_;
    for (std::size_t j = i; j < i + 3; ++j) {
      h ^= static_cast<unsigned char>(padded[j]);
      h *= 1099511628211ULL;
    }
    v[h % dim_] += 1.0;
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }
  return v;
}

IdfTable fit_idf(const std::vector<core::Document>& corpus,
                 const core::TermSet& stopwords) {
  if (corpus.empty()) throw EmptyCorpus();
  std::map<std::string, std::size_t> df;
  for (const auto& doc : corpus)
    for (const auto& term : core::normalize_terms(doc.raw, stopwords).terms)
      df[term] += 1;
  IdfTable table;
  table.doc_count = corpus.size();
  const double n = static_cast<double>(corpus.size());
  for (const auto& [term, count] : df)
    table.weights[term] = std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0;
  table.default_weight = std::log(1.0 + n) + 1.0;
  return table;
}

double tfidf_cosine(const core::Document& d1, const core::Document& d2,
                    const IdfTable& idf, const core::TermSet& stopwords) {
  auto v1 = core::normalize_terms(d1.raw, stopwords).counts;
  auto v2 = core::normalize_terms(d2.raw, stopwords).counts;
  for (auto& [t, w] : v1) w *= idf.idf(t);
  for (auto& [t, w] : v2) w *= idf.idf(t);
  double dot = 0.0, n1 = 0.0, n2 = 0.0;
  for (const auto& [t, w] : v1) {
    n1 += w * w;
    auto it = v2.find(t);
    if (it != v2.end()) dot += w * it->second;
  }
  for (const auto& [t, w] : v2) n2 += w * w;
  if (n1 == 0.0 || n2 == 0.0) return 0.0;
  return dot / (std::sqrt(n1) * std::sqrt(n2));
}

double jaccard(const core::Document& d1, const core::Document& d2,
               const core::TermSet& stopwords) {
  auto s1 = core::normalize_terms(d1.raw, stopwords).terms;
  auto s2 = core::normalize_terms(d2.raw, stopwords).terms;
  std::size_t inter = 0;
  for (const auto& t : s1) inter += s2.count(t);
  std::size_t uni = s1.size() + s2.size() - inter;
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

NamedEntitySet extract_entities(const std::string& text,
                                const std::vector<std::string>& tags) {
  std::string tag_alt;
  for (const auto& t : tags) {
    if (!tag_alt.empty()) tag_alt += '|';
    tag_alt += t;
  }
  std::regex re(R"(\[()" + tag_alt + R"() ?([A-Za-z0-9]*)\])", std::regex::icase);
  NamedEntitySet out;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), re);
       it != std::sregex_iterator(); ++it) {
    std::string norm = it->str(1) + it->str(2);
    for (char& c : norm) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    out.insert(std::move(norm));
  }
  return out;
}

double ne_overlap(const NamedEntitySet& e1, const NamedEntitySet& e2) {
  if (e1.empty() || e2.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& e : e1) inter += e2.count(e);
  std::size_t uni = e1.size() + e2.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

const char* kMonths[] = {"january", "february", "march",     "april",
                         "may",     "june",     "july",      "august",
                         "september", "october", "november", "december"};

std::optional<int> month_number(std::string name) {
  name = core::to_lower(name);
  for (int m = 0; m < 12; ++m) {
    std::string full = kMonths[m];
    if (name == full || (name.size() >= 3 && name == full.substr(0, 3)))
      return m + 1;
  }
  return std::nullopt;
}

bool valid_date(int y, int m, int d) {
  return y >= 1000 && y <= 9999 && m >= 1 && m <= 12 && d >= 1 && d <= 31;
}

}  // namespace

std::optional<DateStamp> parse_datestamp(const std::string& text) {
  static const std::regex kIso(R"((\d{4})[-/](\d{1,2})[-/](\d{1,2}))");
  static const std::regex kDotted(R"((\d{1,2})\.(\d{1,2})\.(\d{4}))");
  static const std::regex kMonthFirst(R"(([A-Za-z]{3,9})\s+(\d{1,2}),?\s+(\d{4}))");
  static const std::regex kDayFirst(R"((\d{1,2})\s+([A-Za-z]{3,9})\s+(\d{4}))");
  static const std::regex kTime(R"(\b(\d{1,2}):(\d{2})\b)");

  std::optional<DateStamp> stamp;
  std::smatch m;
  if (std::regex_search(text, m, kIso)) {
    int y = std::stoi(m[1]), mo = std::stoi(m[2]), d = std::stoi(m[3]);
    if (valid_date(y, mo, d)) stamp = DateStamp{y, mo, d, std::nullopt};
  }
  if (!stamp && std::regex_search(text, m, kDotted)) {
    int d = std::stoi(m[1]), mo = std::stoi(m[2]), y = std::stoi(m[3]);
    if (valid_date(y, mo, d)) stamp = DateStamp{y, mo, d, std::nullopt};
  }
  if (!stamp && std::regex_search(text, m, kMonthFirst)) {
    if (auto mo = month_number(m[1])) {
      int d = std::stoi(m[2]), y = std::stoi(m[3]);
      if (valid_date(y, *mo, d)) stamp = DateStamp{y, *mo, d, std::nullopt};
    }
  }
  if (!stamp && std::regex_search(text, m, kDayFirst)) {
    if (auto mo = month_number(m[2])) {
      int d = std::stoi(m[1]), y = std::stoi(m[3]);
      if (valid_date(y, *mo, d)) stamp = DateStamp{y, *mo, d, std::nullopt};
    }
  }
  if (!stamp) return std::nullopt;
  if (std::regex_search(text, m, kTime)) {
    int h = std::stoi(m[1]), minute = std::stoi(m[2]);
    if (h >= 0 && h <= 23 && minute >= 0 && minute <= 59) stamp->hour = h;
  }
  return stamp;
}

std::optional<DateStamp> extract_date(const core::Document& doc) {
  if (doc.kind == core::DocKind::minute) {
    auto lines = minuteparse::read_lines(doc.raw);
    auto tree = minuteparse::parse(lines, minuteparse::default_predictor);
    if (auto date_line = tree.field(minuteparse::LineLabel::date))
      return parse_datestamp(*date_line);
    return std::nullopt;
  }
  // Transcripts carry no date line; scan the opening utterances instead.
  try {
    auto transcript = core::parse_transcript(doc.raw, doc.id);
    std::size_t limit = std::min<std::size_t>(50, transcript.utterances.size());
    for (std::size_t i = 0; i < limit; ++i)
      if (auto stamp = parse_datestamp(transcript.utterances[i].text)) return stamp;
  } catch (const std::exception&) {
    // Fall through to a raw-text scan for non-conforming inputs.
    if (auto stamp = parse_datestamp(doc.raw.substr(0, 4000))) return stamp;
  }
  return std::nullopt;
}

std::array<double, 4> date_consistency(const std::optional<DateStamp>& d1,
                                       const std::optional<DateStamp>& d2) {
  std::array<double, 4> dims{0.0, 0.0, 0.0, 0.0};
  if (!d1 || !d2) return dims;
  auto match = [](const std::optional<int>& a, const std::optional<int>& b) {
    return a && b && *a == *b ? 1.0 : 0.0;
  };
  dims[0] = match(d1->year, d2->year);
  dims[1] = match(d1->month, d2->month);
  dims[2] = match(d1->day, d2->day);
  dims[3] = match(d1->hour, d2->hour);
  return dims;
}

namespace {

std::vector<std::string> doc_tokens(const core::Document& d) {
  std::vector<std::string> toks;
  for (auto& t : core::whitespace_tokens(d.raw)) toks.push_back(core::to_lower(t));
  return toks;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) dot += a[i] * b[i];
  for (double x : a) na += x * x;
  for (double x : b) nb += x * x;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

// Greedy matching over one chunk pair: recall from c1 against c2, precision
// symmetric, harmonic mean.
double chunk_score(const std::vector<std::vector<double>>& c1,
                   const std::vector<std::vector<double>>& c2) {
  if (c1.empty() || c2.empty()) return 0.0;
  auto directional = [](const auto& from, const auto& to) {
    double sum = 0.0;
    for (const auto& f : from) {
      double best = 0.0;
      for (const auto& t : to) best = std::max(best, cosine(f, t));
      sum += best;
    }
    return sum / static_cast<double>(from.size());
  };
  double recall = directional(c1, c2);
  double precision = directional(c2, c1);
  if (recall + precision == 0.0) return 0.0;
  return 2.0 * recall * precision / (recall + precision);
}

}  // namespace

double chunked_semantic_similarity(const core::Document& d1,
                                   const core::Document& d2, int n_chunks,
                                   const TokenEmbedder& embedder) {
  if (n_chunks < 1) throw InvalidN();
  auto t1 = doc_tokens(d1);
  auto t2 = doc_tokens(d2);

  std::map<std::string, std::vector<double>> cache;
  auto embed = [&](const std::string& tok) -> const std::vector<double>& {
    auto it = cache.find(tok);
    if (it == cache.end()) it = cache.emplace(tok, embedder.embed(tok)).first;
    return it->second;
  };

  // Near-equal contiguous chunks, remainder going to the earlier ones.
  auto chunk_of = [n_chunks](const std::vector<std::string>& toks, int i) {
    std::size_t n = toks.size();
    std::size_t base = n / static_cast<std::size_t>(n_chunks);
    std::size_t rem = n % static_cast<std::size_t>(n_chunks);
    std::size_t ui = static_cast<std::size_t>(i);
    std::size_t begin = ui * base + std::min(ui, rem);
    std::size_t len = base + (ui < rem ? 1 : 0);
    return std::pair<std::size_t, std::size_t>(begin, begin + len);
  };

  double total = 0.0;
  for (int i = 0; i < n_chunks; ++i) {
    auto [b1, e1] = chunk_of(t1, i);
    auto [b2, e2] = chunk_of(t2, i);
    std::vector<std::vector<double>> c1, c2;
    for (std::size_t j = b1; j < e1; ++j) c1.push_back(embed(t1[j]));
    for (std::size_t j = b2; j < e2; ++j) c2.push_back(embed(t2[j]));
    total += chunk_score(c1, c2);
  }
  return total / static_cast<double>(n_chunks);
}

FeatureVector build_feature_vector(const core::Document& d1,
                                   const core::Document& d2, const IdfTable& idf,
                                   const TokenEmbedder& embedder,
                                   const FeatureConfig& cfg) {
  FeatureVector fv{};
  fv[0] = tfidf_cosine(d1, d2, idf);
  fv[1] = jaccard(d1, d2);
  fv[2] = ne_overlap(extract_entities(d1.raw, cfg.entity_tags),
                     extract_entities(d2.raw, cfg.entity_tags));
  auto dates = date_consistency(extract_date(d1), extract_date(d2));
  fv[3] = dates[0];
  fv[4] = dates[1];
  fv[5] = dates[2];
  fv[6] = dates[3];
  fv[7] = chunked_semantic_similarity(d1, d2, cfg.n_chunks, embedder);
  return fv;
}

}  // namespace minutekit::features
