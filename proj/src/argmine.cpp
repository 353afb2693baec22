#include "minutekit/argmine.hpp"

#include <cctype>
#include <regex>

namespace minutekit::argmine {

std::string to_string(PropLabel l) {
  switch (l) {
    case PropLabel::Task: return "Task";
    case PropLabel::Fact: return "Fact";
    case PropLabel::Disc: return "Disc";
  }
  return "?";
}

namespace {

const std::regex kPolicyRe(
    R"(\b(should|must|need to|needs to|going to|will\s+[a-z]+)\b)",
    std::regex::icase);

const std::regex kOpinionRe(
    R"(\b(think|thinks|believe|believes|feel|feels|agree|agrees|disagree|disagrees|like the idea|good|great|bad|nice|excellent|terrible|awful|important|interesting|useful|useless|better|worse|best|worst|wrong|helpful|confusing)\b)",
    std::regex::icase);

// Optional "PERSON1 said: " attribution prefix added by the summarizer.
const std::regex kSaidPrefixRe(R"(^\s*\S+ said:\s*)", std::regex::icase);

const std::regex kConnectiveRe(
    R"(^(because|since|as|so|therefore|that is why)\b)", std::regex::icase);

}  // namespace

std::vector<PropLabel> label_propositions(const std::vector<Proposition>& props) {
  if (props.empty()) throw std::invalid_argument("no propositions to label");
  std::vector<PropLabel> labels;
  labels.reserve(props.size());
  for (const auto& p : props) {
    if (std::regex_search(p.text, kPolicyRe))
      labels.push_back(PropLabel::Task);
    else if (std::regex_search(p.text, kOpinionRe))
      labels.push_back(PropLabel::Disc);
    else
      labels.push_back(PropLabel::Fact);
  }
  return labels;
}

std::vector<ArgRelation> extract_relations(const std::vector<Proposition>& props,
                                           const std::vector<PropLabel>& labels) {
  if (labels.size() != props.size())
    throw std::invalid_argument("labels not aligned with propositions");
  std::vector<ArgRelation> rels;
  for (std::size_t i = 1; i < props.size(); ++i) {
    std::string body = std::regex_replace(props[i].text, kSaidPrefixRe, "");
    if (std::regex_search(body, kConnectiveRe))
      rels.push_back(ArgRelation{i, i - 1, RelKind::Reason});
  }
  return rels;
}

StructuredMinute build_structure(const ArgumentGraph& graph) {
  const auto& props = graph.propositions;
  StructuredMinute sm;
  if (props.empty()) return sm;

  // Flat arena; children materialized at the end.
  struct Node {
    std::optional<std::size_t> parent;
    std::optional<PropLabel> label;
    std::string text;
    std::vector<std::size_t> children;
  };
  std::vector<Node> nodes(props.size());

  // First backward support edge per proposition.
  std::vector<std::optional<std::size_t>> support(props.size());
  for (const auto& r : graph.relations) {
    if (r.src >= props.size() || r.dst >= props.size()) continue;
    if (r.dst >= r.src) continue;  // only edges to a preceding sentence act
    if (!support[r.src]) support[r.src] = r.dst;
  }

  std::vector<std::size_t> rightmost;  // path from the latest root downward
  std::optional<std::size_t> last_root;
  for (std::size_t i = 0; i < props.size(); ++i) {
    nodes[i].text = props[i].text;
    bool is_root = i == 0 || graph.labels[i] == PropLabel::Task;
    if (!is_root) nodes[i].label = graph.labels[i];

    if (is_root) {
      rightmost.assign(1, i);
      last_root = i;
      continue;
    }
    std::optional<std::size_t> parent;
    if (support[i]) {
      // Attachable only when the target still sits on the rightmost path;
      // anything else would reorder the minute text.
      for (std::size_t k = rightmost.size(); k-- > 0;) {
        if (rightmost[k] == *support[i]) {
          parent = *support[i];
          rightmost.resize(k + 1);
          break;
        }
      }
    }
    if (!parent) {
      // Rule 2 fallback: hang off the latest root, which also makes the
      // root-to-i chain the new rightmost path.
      parent = last_root;
      rightmost.resize(1);
    }
    nodes[i].parent = parent;
    nodes[*parent].children.push_back(i);
    rightmost.push_back(i);
  }

  // Materialize the MinuteItem tree in index order.
  struct Builder {
    const std::vector<Node>& nodes;
    MinuteItem build(std::size_t i, std::size_t depth) const {
      MinuteItem item;
      item.depth = depth;
      item.label = nodes[i].label;
      item.text = nodes[i].text;
      for (std::size_t c : nodes[i].children)
        item.children.push_back(build(c, depth + 1));
      return item;
    }
  } builder{nodes};
  for (std::size_t i = 0; i < props.size(); ++i)
    if (!nodes[i].parent) sm.roots.push_back(builder.build(i, 0));
  return sm;
}

namespace {

void render_item(const MinuteItem& item, std::string& out) {
  if (item.depth == 0) {
    out += "* " + item.text + "\n";
  } else {
    for (std::size_t d = 0; d < item.depth; ++d) out += "- ";
    out += (item.label ? to_string(*item.label) : std::string("Item")) + ": " +
           item.text + "\n";
  }
  for (const auto& c : item.children) render_item(c, out);
}

}  // namespace

std::string render(const StructuredMinute& sm) {
  std::string out;
  for (const auto& root : sm.roots) render_item(root, out);
  if (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

}  // namespace minutekit::argmine
