#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "minutekit/core.hpp"

using namespace minutekit;

TEST_CASE("parse_transcript: single well-formed line") {
  auto t = core::parse_transcript("(PERSON1) Hello all.");
  REQUIRE(t.utterances.size() == 1);
  CHECK(t.utterances[0].speaker == "PERSON1");
  CHECK(t.utterances[0].text == "Hello all.");
  CHECK(t.utterances[0].index == 0);
}

TEST_CASE("parse_transcript: continuation line merges upward") {
  auto t = core::parse_transcript("(PERSON1) Hi.\nand welcome.");
  REQUIRE(t.utterances.size() == 1);
  CHECK(t.utterances[0].text == "Hi. and welcome.");
}

TEST_CASE("parse_transcript: empty input is an error") {
  CHECK_THROWS_AS(core::parse_transcript(""), core::EmptyTranscript);
  CHECK_THROWS_AS(core::parse_transcript("\n\n \n"), core::EmptyTranscript);
}

TEST_CASE("parse_transcript: leading continuation line is an error") {
  CHECK_THROWS_AS(core::parse_transcript("dangling text\n(PERSON1) Hi."),
                  core::MalformedLine);
}

TEST_CASE("parse_transcript: indices contiguous and ascending") {
  auto t = core::parse_transcript(
      "(PERSON1) One.\n(PERSON2) Two.\ncontinued\n(PERSON3) Three.");
  REQUIRE(t.utterances.size() == 3);
  for (std::size_t i = 0; i < t.utterances.size(); ++i)
    CHECK(t.utterances[i].index == i);
  CHECK(t.utterances[1].text == "Two. continued");
}

TEST_CASE("split_sentences: two terminal periods") {
  auto s = core::split_sentences("We met. We agreed.");
  REQUIRE(s.size() == 2);
  CHECK(s[0] == "We met.");
  CHECK(s[1] == "We agreed.");
}

TEST_CASE("split_sentences: abbreviation suppresses split") {
  auto s = core::split_sentences("Dr. Smith arrived.");
  REQUIRE(s.size() == 1);
  CHECK(s[0] == "Dr. Smith arrived.");
}

TEST_CASE("split_sentences: no terminal punctuation falls back to one sentence") {
  auto s = core::split_sentences("no terminal punctuation");
  REQUIRE(s.size() == 1);
  CHECK(s[0] == "no terminal punctuation");
}

TEST_CASE("split_sentences: question marks and digit starts") {
  auto s = core::split_sentences("Ready? 3 items remain! Done.");
  REQUIRE(s.size() == 3);
  CHECK(s[1] == "3 items remain!");
}

TEST_CASE("split_sentences preserves non-whitespace characters") {
  std::mt19937 rng(7);
  const std::string words[] = {"Alpha", "beta.", "Dr.", "Gamma?", "x",
                               "e.g.", "Count", "42.", "end!"};
  for (int trial = 0; trial < 50; ++trial) {
    std::string text;
    int n = 3 + static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) {
      if (!text.empty()) text += ' ';
      text += words[rng() % std::size(words)];
    }
    auto parts = core::split_sentences(text);
    auto strip_ws = [](const std::string& s) {
      std::map<char, int> counts;
      for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) counts[c]++;
      return counts;
    };
    std::string joined;
    for (const auto& p : parts) joined += p + " ";
    CHECK(strip_ws(joined) == strip_ws(text));
  }
}

TEST_CASE("normalize_terms: stopword and length filtering") {
  auto stats = core::normalize_terms("We should finalize the schedule",
                                     core::default_stopwords());
  CHECK(stats.terms == core::TermSet{"finalize", "schedule"});
}

TEST_CASE("normalize_terms: everything filtered") {
  auto stats = core::normalize_terms("a an to of", core::default_stopwords());
  CHECK(stats.terms.empty());
}

TEST_CASE("normalize_terms: over-long term filtered") {
  auto stats =
      core::normalize_terms("internationalization", core::default_stopwords());
  CHECK(stats.terms.empty());
}

TEST_CASE("normalize_terms: invariant under case and whitespace changes") {
  auto a = core::normalize_terms("Finalize  the   SCHEDULE", core::default_stopwords());
  auto b = core::normalize_terms("finalize the schedule", core::default_stopwords());
  CHECK(a.terms == b.terms);
  CHECK(a.counts == b.counts);
}

TEST_CASE("normalize_terms: counts accumulate") {
  auto stats = core::normalize_terms("alpha beta alpha", core::default_stopwords());
  CHECK(stats.counts.at("alpha") == doctest::Approx(2.0));
  CHECK(stats.counts.at("beta") == doctest::Approx(1.0));
}

TEST_CASE("default stopword file carries the pinned 179 entries") {
  auto raw = core::load_term_file(core::data_dir() + "/stopwords_en.txt");
  CHECK(raw.size() == 179);
}

TEST_CASE("transcript_sentences: global indices and token counts") {
  auto t = core::parse_transcript("(PERSON1) We met. We agreed.\n(PERSON2) Good.");
  auto sents = core::transcript_sentences(t);
  REQUIRE(sents.size() == 3);
  CHECK(sents[0].sent_index == 0);
  CHECK(sents[2].sent_index == 2);
  CHECK(sents[2].utterance_index == 1);
  CHECK(sents[0].token_count == 2);
}
