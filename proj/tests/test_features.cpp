#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "minutekit/features.hpp"

using namespace minutekit;

namespace {

core::Document doc(std::string raw, core::DocKind kind = core::DocKind::transcript,
                   std::string id = "d") {
  return core::Document{std::move(id), kind, std::move(raw)};
}

}  // namespace

TEST_CASE("fit_idf: hand-checked weights") {
  std::vector<core::Document> corpus = {
      doc("alpha beta"), doc("alpha gamma"), doc("delta epsilon")};
  auto idf = features::fit_idf(corpus);
  CHECK(idf.doc_count == 3);
  // df(alpha)=2 over 3 docs: ln(4/3)+1.
  CHECK(idf.idf("alpha") == doctest::Approx(std::log(4.0 / 3.0) + 1.0));
  CHECK(idf.idf("beta") == doctest::Approx(std::log(2.0) + 1.0));
  // Unseen terms get ln(1+N)+1.
  CHECK(idf.idf("zeta") == doctest::Approx(std::log(4.0) + 1.0));
  CHECK_THROWS_AS(features::fit_idf({}), features::EmptyCorpus);
}

TEST_CASE("tfidf_cosine: identity, disjointness, bounds") {
  std::vector<core::Document> corpus = {doc("alpha beta gamma"),
                                        doc("delta epsilon zeta")};
  auto idf = features::fit_idf(corpus);
  CHECK(features::tfidf_cosine(corpus[0], corpus[0], idf) == doctest::Approx(1.0));
  CHECK(features::tfidf_cosine(corpus[0], corpus[1], idf) == doctest::Approx(0.0));
  auto mixed = doc("alpha beta zeta");
  double s = features::tfidf_cosine(corpus[0], mixed, idf);
  CHECK(s > 0.0);
  CHECK(s < 1.0);
}

TEST_CASE("tfidf_cosine: all-stopword document scores zero") {
  std::vector<core::Document> corpus = {doc("alpha beta")};
  auto idf = features::fit_idf(corpus);
  CHECK(features::tfidf_cosine(doc("the and of"), corpus[0], idf) == 0.0);
}

TEST_CASE("jaccard: hand example 2/4") {
  CHECK(features::jaccard(doc("alpha beta gamma"), doc("beta gamma delta")) ==
        doctest::Approx(0.5));
  CHECK(features::jaccard(doc("alpha"), doc("alpha")) == doctest::Approx(1.0));
  CHECK(features::jaccard(doc("alpha"), doc("beta")) == doctest::Approx(0.0));
  CHECK(features::jaccard(doc("the of"), doc("the of")) == 0.0);  // empty sets
}

TEST_CASE("extract_entities: spacing and case normalize to one form") {
  auto e = features::extract_entities(
      "[PERSON 3] met [person3] and [PROJECT 1]; also [ORGANIZATION2].");
  CHECK(e == features::NamedEntitySet{"PERSON3", "PROJECT1", "ORGANIZATION2"});
}

TEST_CASE("extract_entities: unknown tags ignored") {
  auto e = features::extract_entities("[LOCATION 1] and [PERSON 1]");
  CHECK(e == features::NamedEntitySet{"PERSON1"});
  auto only_loc =
      features::extract_entities("[LOCATION 1] here", {"LOCATION"});
  CHECK(only_loc == features::NamedEntitySet{"LOCATION1"});
}

TEST_CASE("ne_overlap: jaccard over entity sets, empty sides zero") {
  features::NamedEntitySet a{"PERSON1", "PERSON2", "PROJECT1"};
  features::NamedEntitySet b{"PERSON2", "PROJECT1", "PROJECT2"};
  CHECK(features::ne_overlap(a, b) == doctest::Approx(0.5));
  CHECK(features::ne_overlap({}, b) == 0.0);
  CHECK(features::ne_overlap(a, {}) == 0.0);
  CHECK(features::ne_overlap(a, a) == doctest::Approx(1.0));
}

TEST_CASE("parse_datestamp: accepted formats agree") {
  auto iso = features::parse_datestamp("meeting on 2024-03-14 at 10:30");
  REQUIRE(iso);
  CHECK(iso->year == 2024);
  CHECK(iso->month == 3);
  CHECK(iso->day == 14);
  CHECK(iso->hour == 10);

  auto dotted = features::parse_datestamp("14.03.2024");
  REQUIRE(dotted);
  CHECK(dotted->day == 14);
  CHECK(dotted->month == 3);
  CHECK(!dotted->hour.has_value());

  auto month_first = features::parse_datestamp("March 14, 2024");
  REQUIRE(month_first);
  CHECK(month_first->month == 3);
  CHECK(month_first->day == 14);

  auto day_first = features::parse_datestamp("14 March 2024");
  REQUIRE(day_first);
  CHECK(day_first->month == 3);

  CHECK(!features::parse_datestamp("no dates here").has_value());
  CHECK(!features::parse_datestamp("2024-13-40").has_value());
}

TEST_CASE("extract_date: minute date line vs transcript scan") {
  auto minute = doc("Weekly Sync\n2024-03-14\n* topic\n", core::DocKind::minute);
  auto md = features::extract_date(minute);
  REQUIRE(md);
  CHECK(md->day == 14);

  auto transcript = doc(
      "(PERSON1) Welcome to the sync on 2024-03-14.\n(PERSON2) Thanks.",
      core::DocKind::transcript);
  auto td = features::extract_date(transcript);
  REQUIRE(td);
  CHECK(td->year == 2024);

  CHECK(!features::extract_date(doc("(PERSON1) No date anywhere.")).has_value());
}

TEST_CASE("date_consistency: per-component binary dims") {
  features::DateStamp a{2024, 3, 14, 10};
  features::DateStamp b{2024, 3, 15, std::nullopt};
  auto dims = features::date_consistency(a, b);
  CHECK(dims == std::array<double, 4>{1.0, 1.0, 0.0, 0.0});
  CHECK(features::date_consistency(a, a) ==
        std::array<double, 4>{1.0, 1.0, 1.0, 1.0});
  CHECK(features::date_consistency(std::nullopt, a) ==
        std::array<double, 4>{0.0, 0.0, 0.0, 0.0});
}

TEST_CASE("TrigramHashEmbedder: deterministic unit vectors") {
  features::TrigramHashEmbedder emb;
  auto v1 = emb.embed("Migration");
  auto v2 = emb.embed("migration");  // case-folded before hashing
  CHECK(v1 == v2);
  double norm = 0.0;
  for (double x : v1) norm += x * x;
  CHECK(norm == doctest::Approx(1.0));
  CHECK(v1.size() == 1024);
  // Empty token has no trigram and embeds to zero.
  auto z = emb.embed("");
  CHECK(std::all_of(z.begin(), z.end(), [](double x) { return x == 0.0; }));
}

TEST_CASE("TrigramHashEmbedder: different seeds give different maps") {
  features::TrigramHashEmbedder a(1), b(2);
  CHECK(a.embed("database") != b.embed("database"));
}

namespace {

double cosine_ref(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

// Independent reference: split into n near-equal chunks (longer chunks
// first), score aligned pairs by greedy-match F1, average over chunks.
double chunked_sim_ref(const std::string& raw1, const std::string& raw2,
                       int n, const features::TokenEmbedder& emb) {
  auto embed_all = [&](const std::string& raw) {
    std::vector<std::vector<double>> out;
    for (const auto& t : core::whitespace_tokens(raw))
      out.push_back(emb.embed(core::to_lower(t)));
    return out;
  };
  auto all1 = embed_all(raw1);
  auto all2 = embed_all(raw2);
  auto slice = [n](const std::vector<std::vector<double>>& v, int i) {
    std::vector<std::vector<double>> out;
    std::size_t start = 0;
    for (int k = 0; k <= i; ++k) {
      std::size_t len = v.size() / n + (static_cast<std::size_t>(k) < v.size() % n);
      if (k == i) {
        for (std::size_t j = start; j < start + len; ++j) out.push_back(v[j]);
        break;
      }
      start += len;
    }
    return out;
  };
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    auto c1 = slice(all1, i);
    auto c2 = slice(all2, i);
    if (c1.empty() || c2.empty()) continue;
    auto dir = [](const auto& from, const auto& to) {
      double s = 0.0;
      for (const auto& f : from) {
        double best = 0.0;
        for (const auto& t : to) best = std::max(best, cosine_ref(f, t));
        s += best;
      }
      return s / from.size();
    };
    double r = dir(c1, c2), p = dir(c2, c1);
    if (r + p > 0.0) total += 2.0 * r * p / (r + p);
  }
  return total / n;
}

}  // namespace

TEST_CASE("chunked_semantic_similarity: identical docs score 1") {
  features::TrigramHashEmbedder emb;
  auto d = doc("database schema migration rollout plan review cycle window");
  CHECK(features::chunked_semantic_similarity(d, d, 4, emb) ==
        doctest::Approx(1.0));
}

TEST_CASE("chunked_semantic_similarity: empty trailing chunks count as zero") {
  features::TrigramHashEmbedder emb;
  auto d = doc("alpha beta");  // only 2 of 4 chunks populated
  CHECK(features::chunked_semantic_similarity(d, d, 4, emb) ==
        doctest::Approx(0.5));
}

TEST_CASE("chunked_semantic_similarity: rejects n < 1") {
  features::TrigramHashEmbedder emb;
  CHECK_THROWS_AS(
      features::chunked_semantic_similarity(doc("a"), doc("b"), 0, emb),
      features::InvalidN);
}

TEST_CASE("property: chunked similarity matches the reference computation") {
  features::TrigramHashEmbedder emb;
  std::mt19937_64 rng(7);
  const char* vocab[] = {"database", "schema",  "banner", "rollout",
                         "campaign", "slogan",  "review", "window",
                         "metrics",  "summary", "agenda", "retro"};
  for (int trial = 0; trial < 25; ++trial) {
    auto make_doc = [&] {
      std::size_t len = 1 + rng() % 30;
      std::string raw;
      for (std::size_t i = 0; i < len; ++i) {
        if (!raw.empty()) raw += ' ';
        raw += vocab[rng() % 12];
      }
      return doc(raw);
    };
    auto d1 = make_doc();
    auto d2 = make_doc();
    int n = 1 + static_cast<int>(rng() % 6);
    double got = features::chunked_semantic_similarity(d1, d2, n, emb);
    double want = chunked_sim_ref(d1.raw, d2.raw, n, emb);
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
    CHECK(got >= 0.0);
    CHECK(got <= 1.0 + 1e-12);
  }
}

TEST_CASE("build_feature_vector: dimensions wired in order") {
  std::string t1 =
      "(PERSON1) Kickoff on 2024-03-14 for [PROJECT 1].\n"
      "(PERSON2) The database schema migration starts today.";
  std::string t2 =
      "(PERSON1) Reminder: 2024-03-14 review of [PROJECT 1].\n"
      "(PERSON3) Database schema migration kickoff notes.";
  auto d1 = doc(t1, core::DocKind::transcript, "a");
  auto d2 = doc(t2, core::DocKind::transcript, "b");
  auto idf = features::fit_idf({d1, d2});
  features::TrigramHashEmbedder emb;
  auto fv = features::build_feature_vector(d1, d2, idf, emb);
  CHECK(fv[0] > 0.0);                       // shared vocabulary
  CHECK(fv[1] > 0.0);
  CHECK(fv[2] == doctest::Approx(1.0));     // only [PROJECT 1] on both sides
  CHECK(fv[3] == 1.0);                      // same year
  CHECK(fv[4] == 1.0);
  CHECK(fv[5] == 1.0);
  CHECK(fv[6] == 0.0);                      // no times given
  CHECK(fv[7] > 0.0);
  for (double x : fv) {
    CHECK(x >= 0.0);
    CHECK(x <= 1.0 + 1e-9);
  }
  CHECK(std::string(features::kFeatureVersion) == "fv8-v1");
}