#include <doctest.h>

#include <random>

#include "ricochet/io.hpp"
#include "suites.hpp"

using namespace ricochet;

namespace {

std::string where_of(const std::string& text) {
  try {
    io::parse_problem(text);
  } catch (const io::ParseError& e) {
    return e.where();
  }
  return "";
}

}  // namespace

TEST_CASE("configuration round trip") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 300; ++k) {
    Configuration c = suites::random_config(rng);
    io::Problem p = io::parse_problem(io::serialize(c));
    CHECK(p.config == c);
    CHECK_FALSE(p.goal);
  }
  io::Problem fig = io::load_problem(RICOCHET_DATA_DIR "/fig3.json");
  CHECK(io::parse_problem(io::serialize(fig.config, fig.goal)) == fig);
  Goal rc = ReconfigurationGoal{fig.config.tiles()};
  CHECK(io::parse_problem(io::serialize(fig.config, rc)).goal == rc);
}

TEST_CASE("malformed input names its location") {
  CHECK(where_of("{\"width\": 3,") .rfind("byte", 0) == 0);
  CHECK(where_of(R"({"height":3})") == "/width");
  CHECK(where_of(R"({"width":3,"height":"x"})") == "/height");
  CHECK(where_of(R"({"width":3,"height":3,"blocked":[[1,1,1]]})") == "/blocked/0");
  CHECK(where_of(R"({"width":3,"height":3,"blocked":[[4,1]]})") == "/blocked/0");
  CHECK(where_of(R"({"width":3,"height":3,"tiles":[{"label":"a","x":1}]})") == "/tiles/0/y");
  CHECK(where_of(R"({"width":3,"height":3,"goal":{"kind":"other"}})") == "/goal/kind");
}

TEST_CASE("invariant violations are rejected") {
  // tile on a wall
  CHECK_THROWS_AS(io::parse_problem(R"({"width":2,"height":1,"blocked":[[1,1]],"tiles":[{"label":"a","x":1,"y":1}]})"),
                  io::ParseError);
  // duplicate label
  CHECK_THROWS_AS(io::parse_problem(
                      R"({"width":2,"height":1,"tiles":[{"label":"a","x":1,"y":1},{"label":"a","x":2,"y":1}]})"),
                  io::ParseError);
  // goal for a missing tile
  CHECK_THROWS_AS(io::parse_problem(
                      R"({"width":2,"height":1,"tiles":[{"label":"a","x":1,"y":1}],"goal":{"kind":"relocation","label":"b","x":2,"y":1}})"),
                  io::ParseError);
}

TEST_CASE("ffg json") {
  ffg::FfgInstance inst = io::load_ffg(RICOCHET_DATA_DIR "/fig4.json");
  CHECK(inst.n == 3);
  CHECK(inst.generators.size() == 3);
  CHECK(inst.generators[0] == ffg::FunctionTable({1, 2, 0}));
  CHECK(io::parse_ffg(io::to_json(inst).dump()).generators == inst.generators);
  CHECK_THROWS_AS(io::parse_ffg(R"({"n":2,"generators":[[0,2]],"h":[0,0]})"), io::ParseError);
  CHECK_THROWS_AS(io::parse_ffg(R"({"n":2,"generators":[],"h":[0,0]})"), io::ParseError);
  CHECK_THROWS_AS(io::parse_ffg(R"({"n":2,"generators":[[0,1]],"h":[0,0,0]})"), io::ParseError);
}

TEST_CASE("svg render") {
  io::Problem fig = io::load_problem(RICOCHET_DATA_DIR "/fig3.json");
  const std::string svg = io::render_svg(fig.config, fig.goal);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
}
