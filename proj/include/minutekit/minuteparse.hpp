#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace minutekit::minuteparse {

struct EmptyBuffer : std::runtime_error {
  EmptyBuffer() : std::runtime_error("action applied with an empty buffer") {}
};
struct StackUnderflow : std::runtime_error {
  StackUnderflow() : std::runtime_error("REPLACE with only ROOT on the stack") {}
};
struct InconsistentTree : std::runtime_error {
  explicit InconsistentTree(const std::string& what) : std::runtime_error(what) {}
};
struct PredictorFailure : std::runtime_error {
  explicit PredictorFailure(const std::string& what) : std::runtime_error(what) {}
};

enum class Bullet { star, dash, none };

struct MinuteLine {
  std::string raw;
  int indent = 0;     // depth implied by leading markers
  Bullet bullet = Bullet::none;
  std::string text;   // marker-stripped content
  std::size_t position = 0;
};

enum class LineLabel { title, date, attendees, topic, subtopic, item, other };

std::string to_string(LineLabel l);
std::optional<LineLabel> line_label_from_string(const std::string& s);

enum class ActionKind { LABEL, ADD, REPLACE, ARC };

struct Action {
  ActionKind kind = ActionKind::ARC;
  std::optional<LineLabel> label;  // present iff kind == LABEL
};

std::string to_string(const Action& a);

struct LabeledField {
  LineLabel label;
  std::string text;
  std::size_t position = 0;
};

// Arena tree; node 0 is the virtual ROOT.
struct MinuteTree {
  struct Node {
    std::string text;
    std::size_t position = 0;               // source line; unused for ROOT
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;
  };
  std::vector<Node> nodes{Node{}};          // starts with ROOT
  std::vector<LabeledField> labeled_fields; // lines detached by LABEL

  std::size_t add_node(std::size_t parent, std::string text, std::size_t position);
  std::optional<std::string> field(LineLabel l) const;  // first value, if any
};

struct ParserState {
  const std::vector<MinuteLine>* lines = nullptr;
  std::size_t buffer_pos = 0;          // front = b_0
  std::vector<std::size_t> stack{0};   // node ids; bottom = ROOT, back = s_0
  MinuteTree tree;

  bool buffer_empty() const { return !lines || buffer_pos >= lines->size(); }
  const MinuteLine& b0() const { return (*lines)[buffer_pos]; }
  // Tree depth of the stack top (ROOT = -1).
  int top_depth() const { return static_cast<int>(stack.size()) - 2; }
};

using Predictor = std::function<Action(const ParserState&)>;

// Blank lines dropped; '*' is a depth-0 star bullet; each leading "-" group
// adds one indent level.
std::vector<MinuteLine> read_lines(const std::string& minute_text);

// One transition. LABEL detaches b_0 into labeled_fields; ADD attaches b_0
// under s_0 and pushes it; ARC attaches without pushing; REPLACE pops to the
// ancestor matching b_0's indent, attaches, and pushes.
void step(ParserState& state, const Action& action);

MinuteTree parse(const std::vector<MinuteLine>& lines, const Predictor& predictor,
                 std::vector<Action>* trace = nullptr);

// The canonical action sequence reproducing `tree` from `lines`:
// LABEL for detached lines, ARC for leaves under the stack top, ADD/REPLACE
// for everything else.
std::vector<Action> oracle_actions(const MinuteTree& tree,
                                   const std::vector<MinuteLine>& lines);

// Rule-based action predictor (title / date / attendees heuristics plus
// indent-delta rules with one-line lookahead).
Action default_predictor(const ParserState& state);

// Numeric features for a learned action predictor.
std::vector<double> line_features(const MinuteLine& line, const ParserState& state);

// Inverse of read_lines for trees: labeled fields first (by position), then
// nodes as "* text" at depth 0 and "- "-prefixed lines below.
std::string render_tree(const MinuteTree& tree);

bool trees_equal(const MinuteTree& a, const MinuteTree& b);

bool looks_like_date_line(const std::string& text);

}  // namespace minutekit::minuteparse
