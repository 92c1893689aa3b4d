#include <doctest.h>

#include "ricochet/io.hpp"
#include "ricochet/tilt.hpp"
#include "suites.hpp"

using namespace ricochet;

namespace {

Configuration fig3() { return io::load_problem(RICOCHET_DATA_DIR "/fig3.json").config; }

}  // namespace

TEST_CASE("make_board partitions the rectangle") {
  Board b = make_board(3, 3, {});
  CHECK(b.open_count() == 9);
  CHECK(b.blocked_count() == 0);
  Board c = make_board(2, 2, {{1, 1}});
  CHECK(c.open_count() == 3);
  CHECK(c.blocked_count() == 1);
  CHECK_THROWS_AS(make_board(3, 3, {{4, 1}}), ValidationError);
  CHECK(b.blocked({0, 1}));
  CHECK(b.blocked({4, 4}));
}

TEST_CASE("is_connected") {
  CHECK(is_connected(make_board(3, 3, {})));
  CHECK_FALSE(is_connected(make_board(3, 1, {{2, 1}})));
  CHECK(is_connected(fig3().board()));
  CHECK(is_connected(make_board(1, 1, {{1, 1}})));
}

TEST_CASE("configuration invariants") {
  Board b = make_board(3, 3, {{2, 2}});
  CHECK_THROWS_AS(Configuration(b, {{"a", {2, 2}}}), ValidationError);
  CHECK_THROWS_AS(Configuration(b, {{"a", {1, 1}}, {"a", {3, 3}}}), ValidationError);
  CHECK_THROWS_AS(Configuration(b, {{"a", {1, 1}}, {"b", {1, 1}}}), ValidationError);
  CHECK(Configuration(b, {{"b", {1, 1}}, {"a", {3, 3}}}) == Configuration(b, {{"a", {3, 3}}, {"b", {1, 1}}}));
}

TEST_CASE("is_step_terminal") {
  Board b = make_board(3, 3, {});
  Configuration c(b, {{"t", {1, 1}}});
  CHECK(is_step_terminal(c, "t", Direction::W));
  CHECK_FALSE(is_step_terminal(c, "t", Direction::E));
  Configuration two(b, {{"a", {1, 1}}, {"b", {2, 1}}});
  CHECK(is_step_terminal(two, "a", Direction::E));
  CHECK_THROWS_AS(is_step_terminal(c, "zz", Direction::N), UnknownLabelError);
}

TEST_CASE("particle_step") {
  Board b = make_board(3, 3, {});
  Configuration c(b, {{"t", {1, 1}}});
  CHECK(particle_step(c, "t", Direction::E).tile("t").position == Coord{2, 1});
  CHECK(particle_step(c, "t", Direction::S) == c);
  Configuration mid = particle_step(c, "t", Direction::E);
  CHECK(particle_step(mid, "t", Direction::W) == c);
  CHECK_THROWS_AS(particle_step(c, "zz", Direction::N), UnknownLabelError);
}

TEST_CASE("particle_tilt") {
  Board b = make_board(3, 3, {});
  Configuration c(b, {{"t", {1, 1}}});
  CHECK(particle_tilt(c, "t", Direction::E).tile("t").position == Coord{3, 1});
  CHECK(particle_tilt(c, "t", Direction::W) == c);
  Configuration two(b, {{"a", {1, 1}}, {"b", {3, 1}}});
  CHECK(particle_tilt(two, "a", Direction::E).tile("a").position == Coord{2, 1});
  CHECK_THROWS_AS(particle_tilt(c, "zz", Direction::N), UnknownLabelError);
}

TEST_CASE("apply_sequence") {
  Configuration c = fig3();
  CHECK(apply_sequence(c, {}) == c);
  for (const auto& t : c.tiles())
    for (Direction d : kDirections)
      CHECK(apply_sequence(c, {{d, t.label}, {d, t.label}}) == apply_sequence(c, {{d, t.label}}));
  try {
    apply_sequence(c, parse_sequence("E(r),S(q)"));
    FAIL("expected an error");
  } catch (const UnknownLabelError& e) {
    CHECK(e.label() == "q");
    REQUIRE(e.step().has_value());
    CHECK(*e.step() == 1);
  }
}

TEST_CASE("sample board replay puts g on the goal") {
  io::Problem p = io::load_problem(RICOCHET_DATA_DIR "/fig3.json");
  const TiltSequence seq = parse_sequence("E(r),S(r),S(p),E(g),S(g),W(g),N(g)");
  Configuration c = p.config;
  // every move changes the configuration
  for (const auto& m : seq) {
    Configuration n = particle_tilt(c, m.label, m.direction);
    CHECK(n != c);
    c = n;
  }
  CHECK(c.tile("g").position == Coord{4, 3});
  REQUIRE(p.goal.has_value());
  CHECK(satisfies(c, *p.goal));
}

TEST_CASE("render_ascii") {
  CHECK(render_ascii(Configuration(make_board(1, 1, {}), {})) == ".");
  CHECK(render_ascii(Configuration(make_board(1, 1, {{1, 1}}), {})) == "#");
  CHECK(render_ascii(Configuration(make_board(2, 1, {}), {{"g", {1, 1}}})) == "g.");
  CHECK(render_ascii(Configuration(make_board(2, 2, {}), {{"g", {1, 2}}}), Coord{2, 1}) == "g.\n.*");
}

TEST_CASE("sequence text") {
  const std::string text = "E(r),S(r),S(p),E(g),S(g),W(g),N(g)";
  CHECK(format_sequence(parse_sequence(text)) == text);
  CHECK(parse_sequence("").empty());
  CHECK_THROWS_AS(parse_sequence("X(r)"), ValidationError);
  CHECK_THROWS_AS(parse_sequence("E(r"), ValidationError);
}

TEST_CASE("tilt properties on random boards") {
  suites::Tally t = suites::tilt_properties(2000, 99);
  INFO(t.first_failure);
  CHECK(t.ok());
}
