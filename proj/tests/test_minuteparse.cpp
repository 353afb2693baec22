#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "minutekit/minuteparse.hpp"

using namespace minutekit;
namespace mp = minutekit::minuteparse;

namespace {

const std::string kFixture =
    "Weekly Sync\n"
    "2024-03-14\n"
    "Attendees: PERSON1, PERSON2\n"
    "* Database migration\n"
    "- Schema is frozen\n"
    "* Marketing banner\n";

std::vector<std::string> trace_strings(const std::vector<mp::Action>& trace) {
  std::vector<std::string> out;
  for (const auto& a : trace) out.push_back(mp::to_string(a));
  return out;
}

mp::MinuteTree replay(const std::vector<mp::MinuteLine>& lines,
                      const std::vector<mp::Action>& actions) {
  mp::ParserState state;
  state.lines = &lines;
  for (const auto& a : actions) mp::step(state, a);
  REQUIRE(state.buffer_empty());
  return state.tree;
}

}  // namespace

TEST_CASE("read_lines: markers, indents, blank lines") {
  auto lines = mp::read_lines("Title\n\n* topic line\n- child\n- - grandchild\n");
  REQUIRE(lines.size() == 4);
  CHECK(lines[0].bullet == mp::Bullet::none);
  CHECK(lines[0].indent == 0);
  CHECK(lines[0].text == "Title");
  CHECK(lines[1].bullet == mp::Bullet::star);
  CHECK(lines[1].indent == 0);
  CHECK(lines[1].text == "topic line");
  CHECK(lines[2].bullet == mp::Bullet::dash);
  CHECK(lines[2].indent == 1);
  CHECK(lines[3].indent == 2);
  CHECK(lines[3].text == "grandchild");
  for (std::size_t i = 0; i < lines.size(); ++i) CHECK(lines[i].position == i);
}

TEST_CASE("step: LABEL detaches the line into a field") {
  auto lines = mp::read_lines("2024-03-14\n");
  mp::ParserState state;
  state.lines = &lines;
  mp::step(state, {mp::ActionKind::LABEL, mp::LineLabel::date});
  CHECK(state.tree.nodes.size() == 1);
  REQUIRE(state.tree.labeled_fields.size() == 1);
  CHECK(state.tree.field(mp::LineLabel::date) == "2024-03-14");
  CHECK(state.stack.size() == 1);
}

TEST_CASE("step: ADD pushes, ARC does not") {
  auto lines = mp::read_lines("* a\n- b\n- c\n");
  mp::ParserState state;
  state.lines = &lines;
  mp::step(state, {mp::ActionKind::ADD, std::nullopt});
  CHECK(state.stack.size() == 2);
  mp::step(state, {mp::ActionKind::ARC, std::nullopt});
  CHECK(state.stack.size() == 2);
  mp::step(state, {mp::ActionKind::ARC, std::nullopt});
  REQUIRE(state.tree.nodes.size() == 4);
  CHECK(state.tree.nodes[1].children.size() == 2);
}

TEST_CASE("step: REPLACE folds multi-level dedents") {
  auto lines = mp::read_lines("* a\n- b\n- - c\n* d\n");
  mp::ParserState state;
  state.lines = &lines;
  mp::step(state, {mp::ActionKind::ADD, std::nullopt});
  mp::step(state, {mp::ActionKind::ADD, std::nullopt});
  mp::step(state, {mp::ActionKind::ARC, std::nullopt});
  // b_0 = "* d" at indent 0: the stack must unwind past both a and b.
  mp::step(state, {mp::ActionKind::REPLACE, std::nullopt});
  REQUIRE(state.tree.nodes.size() == 5);
  CHECK(state.tree.nodes[4].parent == 0);
  CHECK(state.stack.size() == 2);
  CHECK(state.stack.back() == 4);
}

TEST_CASE("step: REPLACE with only ROOT underflows") {
  auto lines = mp::read_lines("* a\n");
  mp::ParserState state;
  state.lines = &lines;
  CHECK_THROWS_AS(mp::step(state, {mp::ActionKind::REPLACE, std::nullopt}),
                  mp::StackUnderflow);
}

TEST_CASE("step: acting on an empty buffer is an error") {
  mp::ParserState state;
  CHECK_THROWS_AS(mp::step(state, {mp::ActionKind::ARC, std::nullopt}),
                  mp::EmptyBuffer);
}

TEST_CASE("default_predictor: fixture trace matches the expected sequence") {
  auto lines = mp::read_lines(kFixture);
  std::vector<mp::Action> trace;
  auto tree = mp::parse(lines, mp::default_predictor, &trace);
  CHECK(trace_strings(trace) ==
        std::vector<std::string>{"LABEL(title)", "LABEL(date)",
                                 "LABEL(attendees)", "ADD", "ARC", "REPLACE"});
  CHECK(tree.field(mp::LineLabel::title) == "Weekly Sync");
  CHECK(tree.field(mp::LineLabel::date) == "2024-03-14");
  CHECK(tree.field(mp::LineLabel::attendees) == "Attendees: PERSON1, PERSON2");
  REQUIRE(tree.nodes[0].children.size() == 2);
  std::size_t first = tree.nodes[0].children[0];
  CHECK(tree.nodes[first].text == "Database migration");
  REQUIRE(tree.nodes[first].children.size() == 1);
  CHECK(tree.nodes[tree.nodes[first].children[0]].text == "Schema is frozen");
}

TEST_CASE("default_predictor: missing header fields stay unset") {
  auto tree = mp::parse(mp::read_lines("* lone topic\n"), mp::default_predictor);
  CHECK(!tree.field(mp::LineLabel::title).has_value());
  CHECK(!tree.field(mp::LineLabel::date).has_value());
  CHECK(tree.nodes[0].children.size() == 1);
}

TEST_CASE("oracle_actions: reproduces the fixture tree and trace") {
  auto lines = mp::read_lines(kFixture);
  std::vector<mp::Action> trace;
  auto tree = mp::parse(lines, mp::default_predictor, &trace);
  auto oracle = mp::oracle_actions(tree, lines);
  CHECK(trace_strings(oracle) == trace_strings(trace));
  CHECK(mp::trees_equal(replay(lines, oracle), tree));
}

TEST_CASE("oracle_actions: rejects a tree missing a line") {
  auto lines = mp::read_lines(kFixture);
  auto tree = mp::parse(lines, mp::default_predictor);
  tree.labeled_fields.erase(tree.labeled_fields.begin());
  CHECK_THROWS_AS(mp::oracle_actions(tree, lines), mp::InconsistentTree);
}

TEST_CASE("parse: predictor exceptions surface as PredictorFailure") {
  auto lines = mp::read_lines("* a\n");
  CHECK_THROWS_AS(mp::parse(lines,
                            [](const mp::ParserState&) -> mp::Action {
                              throw std::runtime_error("boom");
                            }),
                  mp::PredictorFailure);
}

TEST_CASE("render_tree: canonical text round-trips through parse") {
  auto lines = mp::read_lines(kFixture);
  auto tree = mp::parse(lines, mp::default_predictor);
  auto rendered = mp::render_tree(tree);
  CHECK(rendered == kFixture);
  auto reparsed = mp::parse(mp::read_lines(rendered), mp::default_predictor);
  CHECK(mp::trees_equal(tree, reparsed));
}

TEST_CASE("looks_like_date_line: formats in and out") {
  CHECK(mp::looks_like_date_line("2024-03-14"));
  CHECK(mp::looks_like_date_line("14.03.2024"));
  CHECK(mp::looks_like_date_line("March 14, 2024"));
  CHECK(mp::looks_like_date_line("14 March 2024"));
  CHECK(!mp::looks_like_date_line("Budget review"));
  CHECK(!mp::looks_like_date_line("Ticket 12345"));
}

TEST_CASE("line_features: fixed width, indent delta present") {
  auto lines = mp::read_lines("* a\n- b\n");
  mp::ParserState state;
  state.lines = &lines;
  auto f = mp::line_features(lines[0], state);
  CHECK(f.size() == 12);
  CHECK(f[0] == 0.0);                // indent
  CHECK(f[1] == 1.0);                // star bullet
  CHECK(f.back() == doctest::Approx(1.0));  // indent - top_depth = 0 - (-1)
}

TEST_CASE("property: random well-formed minutes round-trip") {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 80; ++trial) {
    std::string text = "Planning notes run " + std::to_string(trial) + "\n";
    std::size_t n = 1 + rng() % 14;
    int prev_depth = -1;
    std::size_t counter = 0;
    for (std::size_t i = 0; i < n; ++i) {
      int depth = i == 0 ? 0 : static_cast<int>(rng() % (prev_depth + 2));
      std::string body = "node " + std::to_string(counter++) + " detail";
      if (depth == 0) {
        text += "* " + body + "\n";
      } else {
        for (int d = 0; d < depth; ++d) text += "- ";
        text += body + "\n";
      }
      prev_depth = depth;
    }

    auto lines = mp::read_lines(text);
    auto tree = mp::parse(lines, mp::default_predictor);

    // Rendering the tree must reproduce the canonical source exactly.
    CHECK(mp::render_tree(tree) == text);

    // The canonical action sequence must rebuild the identical tree.
    auto oracle = mp::oracle_actions(tree, lines);
    CHECK(mp::trees_equal(replay(lines, oracle), tree));

    // And re-parsing the rendering converges.
    auto reparsed = mp::parse(mp::read_lines(mp::render_tree(tree)),
                              mp::default_predictor);
    CHECK(mp::trees_equal(tree, reparsed));
  }
}
