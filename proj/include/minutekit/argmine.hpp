#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace minutekit::argmine {

struct Proposition {
  std::string text;
  std::size_t index = 0;
};

enum class PropLabel { Task, Fact, Disc };

enum class RelKind { Reason, Evidence };

struct ArgRelation {
  std::size_t src = 0;
  std::size_t dst = 0;
  RelKind kind = RelKind::Reason;
};

struct ArgumentGraph {
  std::vector<Proposition> propositions;
  std::vector<PropLabel> labels;
  std::vector<ArgRelation> relations;
};

struct MinuteItem {
  std::size_t depth = 0;
  std::optional<PropLabel> label;  // roots carry none
  std::string text;
  std::vector<MinuteItem> children;
};

struct StructuredMinute {
  std::vector<MinuteItem> roots;
};

std::string to_string(PropLabel l);

// Rule-based default labeler: policy modals -> Task, opinion markers -> Disc,
// otherwise Fact.
std::vector<PropLabel> label_propositions(const std::vector<Proposition>& props);

// Default relation extractor: a proposition opening with a causal connective
// supports the immediately preceding proposition.
std::vector<ArgRelation> extract_relations(const std::vector<Proposition>& props,
                                           const std::vector<PropLabel>& labels);

// Itemization: first proposition and Task propositions are roots; supported
// propositions nest under their target; everything else under the latest root.
StructuredMinute build_structure(const ArgumentGraph& graph);

// "* root" / "- Label: child" / "- - Label: grandchild" lines, pre-order.
std::string render(const StructuredMinute& sm);

}  // namespace minutekit::argmine
