#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ricochet/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = ricochet::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kFig3 = RICOCHET_DATA_DIR "/fig3.json";
const std::string kFig4 = RICOCHET_DATA_DIR "/fig4.json";

}  // namespace

TEST_CASE("solve fig3") {
  Run r = run({"solve", "--board", kFig3, "--goal", "g"});
  CHECK(r.code == 0);
  CHECK(r.out.find("length: 7") != std::string::npos);
  const auto lone = std::filesystem::temp_directory_path() / "ricochet_lone.json";
  std::ofstream(lone) << R"({"width":3,"height":3,"tiles":[{"label":"t","x":1,"y":1}]})";
  CHECK(run({"solve", "--board", lone.string(), "--goal", "t", "--at", "2,2"}).code == 1);
  CHECK(run({"solve", "--board", lone.string(), "--goal", "t", "--at", "3,3"}).code == 0);
  CHECK(run({"solve", "--board", kFig3, "--max-states", "5"}).code == 3);
}

TEST_CASE("simulate") {
  Run r = run({"simulate", "--board", kFig3, "--seq", "E(r),S(r),S(p),E(g),S(g),W(g),N(g)"});
  CHECK(r.code == 0);
  CHECK(r.out.find("goal: reached") != std::string::npos);
  CHECK(run({"simulate", "--board", kFig3, "--seq", "E(q)"}).code == 2);
}

TEST_CASE("ffg subcommands") {
  Run r = run({"ffg", "is-generated", "--instance", kFig4});
  CHECK(r.code == 0);
  CHECK(r.out.find("witness: 0,0") != std::string::npos);
  CHECK(run({"ffg", "closure", "--instance", kFig4}).code == 0);
}

TEST_CASE("compile, emit-witness, verify-gadget") {
  CHECK(run({"compile", "--instance", kFig4, "--mode", "reconfiguration"}).code == 0);
  Run e = run({"emit-witness", "--instance", kFig4});
  CHECK(e.code == 0);
  CHECK(e.out.find("replay: ok") != std::string::npos);
  CHECK(run({"emit-witness", "--instance", kFig4, "--witness", "1"}).code == 2);
  CHECK(run({"verify-gadget", "--gadget", "lock-selector", "--n", "4"}).code == 0);
  CHECK(run({"verify-gadget", "--gadget", "lock", "--n", "2", "--max-states", "5"}).code == 3);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"solve"}).code == 2);
  CHECK(run({"render", "--board", "/nonexistent.json"}).code == 2);
  CHECK(run({"render", "--board", kFig3, "--format", "png"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("same input, same bytes") {
  std::vector<std::vector<std::string>> cmds{
      {"solve", "--board", kFig3, "--goal", "g"},
      {"crosscheck", "--n", "2", "--max-f", "1", "--mode", "both"},
      {"crosscheck", "--n", "2", "--max-f", "3", "--random", "5", "--seed", "4"},
  };
  for (const auto& c : cmds) CHECK(run(c).out == run(c).out);
}
