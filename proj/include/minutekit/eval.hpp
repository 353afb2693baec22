#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace minutekit::eval {

struct NoReferences : std::runtime_error {
  NoReferences() : std::runtime_error("no reference texts given") {}
};
struct DegenerateInput : std::runtime_error {
  explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

enum class RefAggregation { average, max };

// Lowercased, punctuation-stripped whitespace tokens; no stemming.
std::vector<std::string> rouge_tokens(const std::string& text);

RougeScore rouge_n(const std::string& candidate, const std::string& reference, int n);
RougeScore rouge_l(const std::string& candidate, const std::string& reference);

// Componentwise mean, or the full triple of the best-f1 reference.
RougeScore aggregate_over_refs(const std::vector<RougeScore>& per_ref,
                               RefAggregation mode);

double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace minutekit::eval
