#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace minutekit::core {

struct EmptyTranscript : std::runtime_error {
  EmptyTranscript() : std::runtime_error("no utterance parsed from transcript") {}
};

struct MalformedLine : std::runtime_error {
  explicit MalformedLine(const std::string& what) : std::runtime_error(what) {}
};

// Anonymized speaker turn, e.g. "(PERSON3) we agreed on the date."
struct Utterance {
  std::string speaker;
  std::string text;
  std::size_t index = 0;
};

struct Transcript {
  std::string id;
  std::vector<Utterance> utterances;
  std::string language = "en";
};

struct Sentence {
  std::string text;
  std::size_t utterance_index = 0;
  std::size_t sent_index = 0;  // global position across the transcript
  std::size_t token_count = 0;
};

enum class DocKind { transcript, minute };

struct Document {
  std::string id;
  DocKind kind = DocKind::transcript;
  std::string raw;
};

using TermSet = std::set<std::string>;
using TermVector = std::map<std::string, double>;

struct TermStats {
  TermSet terms;
  TermVector counts;
};

// Whitespace tokens of the raw text; the token-budget proxy used everywhere.
std::vector<std::string> whitespace_tokens(const std::string& text);
std::size_t count_tokens(const std::string& text);

std::string to_lower(const std::string& s);
std::string trim(const std::string& s);
std::string strip_punct(const std::string& s);

// One utterance per "(SPEAKER) text" line; non-matching lines merge into the
// previous utterance.
Transcript parse_transcript(const std::string& raw, const std::string& id = "");

// Rule-based splitter: break after ./?/! + whitespace + uppercase or digit,
// unless the preceding token is a known abbreviation.
std::vector<std::string> split_sentences(const std::string& text,
                                         const TermSet& abbreviations);
std::vector<std::string> split_sentences(const std::string& text);

std::vector<Sentence> transcript_sentences(const Transcript& transcript,
                                           const TermSet& abbreviations);
std::vector<Sentence> transcript_sentences(const Transcript& transcript);

// Lowercased, punctuation-stripped terms with stopwords and terms outside
// [3, 14] characters removed.
TermStats normalize_terms(const std::string& text, const TermSet& stopwords);

// One entry per line; '#' lines and blanks skipped.
TermSet load_term_file(const std::string& path);

const TermSet& default_stopwords();
const TermSet& default_abbreviations();

// Resolved data directory (compiled-in default, overridable via
// MINUTEKIT_DATA env var).
std::string data_dir();

std::string read_file(const std::string& path);

}  // namespace minutekit::core
