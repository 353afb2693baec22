#include "minutekit/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "minutekit/core.hpp"

namespace minutekit::eval {

std::vector<std::string> rouge_tokens(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& tok : core::whitespace_tokens(text)) {
    std::string t = core::strip_punct(core::to_lower(tok));
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

namespace {

RougeScore from_counts(double matches, double cand_total, double ref_total) {
  RougeScore s;
  if (cand_total > 0.0) s.precision = matches / cand_total;
  if (ref_total > 0.0) s.recall = matches / ref_total;
  if (s.precision + s.recall > 0.0)
    s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

std::map<std::vector<std::string>, std::size_t> ngram_counts(
    const std::vector<std::string>& toks, int n) {
  std::map<std::vector<std::string>, std::size_t> counts;
  if (static_cast<int>(toks.size()) < n) return counts;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= toks.size(); ++i)
    counts[{toks.begin() + i, toks.begin() + i + n}] += 1;
  return counts;
}

}  // namespace

RougeScore rouge_n(const std::string& candidate, const std::string& reference, int n) {
  if (n < 1) throw std::invalid_argument("n-gram order must be >= 1");
  auto cand = ngram_counts(rouge_tokens(candidate), n);
  auto ref = ngram_counts(rouge_tokens(reference), n);
  double cand_total = 0.0, ref_total = 0.0, matches = 0.0;
  for (const auto& [g, c] : cand) cand_total += static_cast<double>(c);
  for (const auto& [g, c] : ref) ref_total += static_cast<double>(c);
  for (const auto& [g, c] : cand) {
    auto it = ref.find(g);
    if (it != ref.end()) matches += static_cast<double>(std::min(c, it->second));
  }
  return from_counts(matches, cand_total, ref_total);
}

RougeScore rouge_l(const std::string& candidate, const std::string& reference) {
  auto cand = rouge_tokens(candidate);
  auto ref = rouge_tokens(reference);
  const std::size_t n = cand.size(), m = ref.size();
  if (n == 0 || m == 0) return {};
  std::vector<std::size_t> prev(m + 1, 0), cur(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      cur[j] = cand[i - 1] == ref[j - 1] ? prev[j - 1] + 1
                                         : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  double lcs = static_cast<double>(prev[m]);
  return from_counts(lcs, static_cast<double>(n), static_cast<double>(m));
}

RougeScore aggregate_over_refs(const std::vector<RougeScore>& per_ref,
                               RefAggregation mode) {
  if (per_ref.empty()) throw NoReferences();
  if (mode == RefAggregation::max) {
    const RougeScore* best = &per_ref.front();
    for (const auto& s : per_ref)
      if (s.f1 > best->f1) best = &s;
    return *best;
  }
  RougeScore mean;
  for (const auto& s : per_ref) {
    mean.precision += s.precision;
    mean.recall += s.recall;
    mean.f1 += s.f1;
  }
  double k = static_cast<double>(per_ref.size());
  mean.precision /= k;
  mean.recall /= k;
  mean.f1 /= k;
  return mean;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw DegenerateInput("pearson requires two equal-length series");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double cov = 0.0, vx = 0.0, vy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    cov += (xs[i] - mx) * (ys[i] - my);
    vx += (xs[i] - mx) * (xs[i] - mx);
    vy += (ys[i] - my) * (ys[i] - my);
  }
  if (vx == 0.0 || vy == 0.0) throw DegenerateInput("zero variance input");
  return cov / std::sqrt(vx * vy);
}

}  // namespace minutekit::eval
