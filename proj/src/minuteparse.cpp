#include "minutekit/minuteparse.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "minutekit/core.hpp"

namespace minutekit::minuteparse {

std::string to_string(LineLabel l) {
  switch (l) {
    case LineLabel::title: return "title";
    case LineLabel::date: return "date";
    case LineLabel::attendees: return "attendees";
    case LineLabel::topic: return "topic";
    case LineLabel::subtopic: return "subtopic";
    case LineLabel::item: return "item";
    case LineLabel::other: return "other";
  }
  return "?";
}

std::optional<LineLabel> line_label_from_string(const std::string& s) {
  for (LineLabel l : {LineLabel::title, LineLabel::date, LineLabel::attendees,
                      LineLabel::topic, LineLabel::subtopic, LineLabel::item,
                      LineLabel::other})
    if (to_string(l) == s) return l;
  return std::nullopt;
}

std::string to_string(const Action& a) {
  switch (a.kind) {
    case ActionKind::LABEL:
      return "LABEL(" + (a.label ? to_string(*a.label) : std::string("?")) + ")";
    case ActionKind::ADD: return "ADD";
    case ActionKind::REPLACE: return "REPLACE";
    case ActionKind::ARC: return "ARC";
  }
  return "?";
}

std::size_t MinuteTree::add_node(std::size_t parent, std::string text,
                                 std::size_t position) {
  Node n;
  n.text = std::move(text);
  n.position = position;
  n.parent = parent;
  std::size_t id = nodes.size();
  nodes.push_back(std::move(n));
  nodes[parent].children.push_back(id);
  return id;
}

std::optional<std::string> MinuteTree::field(LineLabel l) const {
  for (const auto& f : labeled_fields)
    if (f.label == l) return f.text;
  return std::nullopt;
}

std::vector<MinuteLine> read_lines(const std::string& minute_text) {
  std::vector<MinuteLine> out;
  std::size_t pos = 0, start = 0;
  while (start <= minute_text.size()) {
    std::size_t nl = minute_text.find('\n', start);
    std::string raw = minute_text.substr(
        start, nl == std::string::npos ? std::string::npos : nl - start);
    start = nl == std::string::npos ? minute_text.size() + 1 : nl + 1;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();

    std::size_t i = 0;
    while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
    MinuteLine line;
    line.raw = raw;
    if (i < raw.size() && raw[i] == '*') {
      line.bullet = Bullet::star;
      ++i;
    } else {
      while (i < raw.size() && raw[i] == '-') {
        line.bullet = Bullet::dash;
        ++line.indent;
        ++i;
        while (i < raw.size() && raw[i] == ' ') ++i;
      }
    }
    line.text = core::trim(raw.substr(i));
    if (line.text.empty()) continue;
    line.position = pos++;
    out.push_back(std::move(line));
  }
  return out;
}

void step(ParserState& state, const Action& action) {
  if (state.buffer_empty()) throw EmptyBuffer();
  const MinuteLine& b0 = state.b0();
  switch (action.kind) {
    case ActionKind::LABEL: {
      if (!action.label) throw std::invalid_argument("LABEL without a label");
      state.tree.labeled_fields.push_back(
          LabeledField{*action.label, b0.text, b0.position});
      break;
    }
    case ActionKind::ADD: {
      std::size_t id = state.tree.add_node(state.stack.back(), b0.text, b0.position);
      state.stack.push_back(id);
      break;
    }
    case ActionKind::ARC: {
      state.tree.add_node(state.stack.back(), b0.text, b0.position);
      break;
    }
    case ActionKind::REPLACE: {
      if (state.stack.size() < 2) throw StackUnderflow();
      state.stack.pop_back();
      // Multi-level dedents fold into one REPLACE: keep popping until the
      // top is an ancestor shallower than b_0.
      while (state.stack.size() >= 2 && state.top_depth() >= b0.indent)
        state.stack.pop_back();
      std::size_t id = state.tree.add_node(state.stack.back(), b0.text, b0.position);
      state.stack.push_back(id);
      break;
    }
  }
  ++state.buffer_pos;
}

MinuteTree parse(const std::vector<MinuteLine>& lines, const Predictor& predictor,
                 std::vector<Action>* trace) {
  ParserState state;
  state.lines = &lines;
  while (!state.buffer_empty()) {
    Action action;
    try {
      action = predictor(state);
    } catch (const std::exception& e) {
      throw PredictorFailure(e.what());
    }
    if (trace) trace->push_back(action);
    step(state, action);
  }
  return std::move(state.tree);
}

std::vector<Action> oracle_actions(const MinuteTree& tree,
                                   const std::vector<MinuteLine>& lines) {
  std::vector<std::optional<LineLabel>> field_at(lines.size());
  for (const auto& f : tree.labeled_fields) {
    if (f.position >= lines.size())
      throw InconsistentTree("labeled field position out of range");
    field_at[f.position] = f.label;
  }
  std::vector<std::optional<std::size_t>> node_at(lines.size());
  for (std::size_t id = 1; id < tree.nodes.size(); ++id) {
    if (tree.nodes[id].position >= lines.size())
      throw InconsistentTree("node position out of range");
    node_at[tree.nodes[id].position] = id;
  }

  std::vector<Action> actions;
  std::vector<std::size_t> stack{0};
  for (const auto& line : lines) {
    std::size_t p = line.position;
    if (field_at[p]) {
      actions.push_back(Action{ActionKind::LABEL, *field_at[p]});
      continue;
    }
    if (!node_at[p]) throw InconsistentTree("line belongs to no node or field");
    const auto& node = tree.nodes[*node_at[p]];
    if (!node.parent) throw InconsistentTree("non-root node without parent");
    bool internal = !node.children.empty();
    if (*node.parent == stack.back()) {
      if (internal) {
        actions.push_back(Action{ActionKind::ADD, std::nullopt});
        stack.push_back(*node_at[p]);
      } else {
        actions.push_back(Action{ActionKind::ARC, std::nullopt});
      }
    } else {
      if (stack.size() < 2)
        throw InconsistentTree("parent not reachable from ROOT stack");
      stack.pop_back();
      while (stack.size() >= 2 &&
             static_cast<int>(stack.size()) - 2 >= line.indent)
        stack.pop_back();
      if (stack.back() != *node.parent)
        throw InconsistentTree("REPLACE cannot reach the node's parent");
      actions.push_back(Action{ActionKind::REPLACE, std::nullopt});
      stack.push_back(*node_at[p]);
    }
  }
  return actions;
}

bool looks_like_date_line(const std::string& text) {
  static const std::regex kDateRe(
      R"((\d{4}[-/]\d{1,2}[-/]\d{1,2})|(\d{1,2}\.\d{1,2}\.\d{4})|((January|February|March|April|May|June|July|August|September|October|November|December)\s+\d{1,2})|(\d{1,2}\s+(January|February|March|April|May|June|July|August|September|October|November|December)))",
      std::regex::icase);
  return std::regex_search(text, kDateRe);
}

namespace {

bool starts_with_icase(const std::string& s, const std::string& prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(s[i])) !=
        std::tolower(static_cast<unsigned char>(prefix[i])))
      return false;
  return true;
}

}  // namespace

Action default_predictor(const ParserState& state) {
  const MinuteLine& b0 = state.b0();
  if (b0.bullet == Bullet::none) {
    bool is_date = looks_like_date_line(b0.text);
    bool is_attendees = starts_with_icase(b0.text, "attendees") ||
                        starts_with_icase(b0.text, "present");
    if (is_date && !state.tree.field(LineLabel::date))
      return Action{ActionKind::LABEL, LineLabel::date};
    if (is_attendees && !state.tree.field(LineLabel::attendees))
      return Action{ActionKind::LABEL, LineLabel::attendees};
    if (!is_date && !is_attendees && !state.tree.field(LineLabel::title))
      return Action{ActionKind::LABEL, LineLabel::title};
  }
  if (b0.indent > state.top_depth()) {
    // Push only lines that will actually receive children.
    bool has_children = state.buffer_pos + 1 < state.lines->size() &&
                        (*state.lines)[state.buffer_pos + 1].indent > b0.indent;
    return Action{has_children ? ActionKind::ADD : ActionKind::ARC, std::nullopt};
  }
  return Action{ActionKind::REPLACE, std::nullopt};
}

std::vector<double> line_features(const MinuteLine& line, const ParserState& state) {
  double total = state.lines ? static_cast<double>(state.lines->size()) : 1.0;
  std::string lower = core::to_lower(line.text);
  return {
      static_cast<double>(line.indent),
      line.bullet == Bullet::star ? 1.0 : 0.0,
      line.bullet == Bullet::dash ? 1.0 : 0.0,
      line.bullet == Bullet::none ? 1.0 : 0.0,
      total > 1.0 ? static_cast<double>(line.position) / (total - 1.0) : 0.0,
      static_cast<double>(line.text.size()),
      looks_like_date_line(line.text) ? 1.0 : 0.0,
      line.position == 0 && line.bullet == Bullet::none ? 1.0 : 0.0,
      starts_with_icase(line.text, "attendees") ||
              starts_with_icase(line.text, "present")
          ? 1.0
          : 0.0,
      lower.find("topic") != std::string::npos ? 1.0 : 0.0,
      static_cast<double>(state.stack.size() - 1),
      static_cast<double>(line.indent - state.top_depth()),
  };
}

namespace {

void render_node(const MinuteTree& tree, std::size_t id, int depth,
                 std::vector<std::pair<std::size_t, std::string>>& out) {
  const auto& node = tree.nodes[id];
  std::string line;
  if (depth == 0) {
    line = "* " + node.text;
  } else {
    for (int d = 0; d < depth; ++d) line += "- ";
    line += node.text;
  }
  out.emplace_back(node.position, std::move(line));
  for (std::size_t c : node.children) render_node(tree, c, depth + 1, out);
}

}  // namespace

std::string render_tree(const MinuteTree& tree) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  for (const auto& f : tree.labeled_fields) lines.emplace_back(f.position, f.text);
  for (std::size_t c : tree.nodes[0].children) render_node(tree, c, 0, lines);
  std::stable_sort(lines.begin(), lines.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out;
  for (const auto& [pos, text] : lines) {
    out += text;
    out += '\n';
  }
  return out;
}

namespace {

bool nodes_equal(const MinuteTree& a, std::size_t ia, const MinuteTree& b,
                 std::size_t ib) {
  const auto& na = a.nodes[ia];
  const auto& nb = b.nodes[ib];
  if (na.text != nb.text || na.children.size() != nb.children.size()) return false;
  for (std::size_t i = 0; i < na.children.size(); ++i)
    if (!nodes_equal(a, na.children[i], b, nb.children[i])) return false;
  return true;
}

}  // namespace

bool trees_equal(const MinuteTree& a, const MinuteTree& b) {
  if (a.labeled_fields.size() != b.labeled_fields.size()) return false;
  for (std::size_t i = 0; i < a.labeled_fields.size(); ++i) {
    if (a.labeled_fields[i].label != b.labeled_fields[i].label ||
        a.labeled_fields[i].text != b.labeled_fields[i].text)
      return false;
  }
  return nodes_equal(a, 0, b, 0);
}

}  // namespace minutekit::minuteparse
