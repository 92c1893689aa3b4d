#pragma once

// JSON in and out.  Boards/configurations, FFG instances, reports.
//
// Configuration schema:
//   {"width":m,"height":n,"blocked":[[x,y],...],
//    "tiles":[{"label":"g","x":1,"y":1},...],
//    "goal":{"kind":"relocation","label":"g","x":..,"y":..}
//         | {"kind":"reconfiguration","tiles":[...]}}      goal optional
// FFG schema: {"n":3,"generators":[[1,2,0],...],"h":[...]}, 0-based tables.

#include <optional>
#include <string>

#include <json.hpp>

#include "ricochet/ffg.hpp"
#include "ricochet/goal.hpp"
#include "ricochet/reduction.hpp"
#include "ricochet/solver.hpp"
#include "ricochet/tilt.hpp"
#include "ricochet/verifier.hpp"

namespace ricochet::io {

using nlohmann::json;

// Malformed input.  what() starts with the location: a byte offset for
// syntax errors, a JSON pointer ("/tiles/2/x") for schema errors.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& where, const std::string& what);
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

struct Problem {
  Configuration config;
  std::optional<Goal> goal;
  friend bool operator==(const Problem&, const Problem&) = default;
};

Problem parse_problem(const std::string& text);
Problem load_problem(const std::string& path);  // throws Error on I/O failure
std::string serialize(const Configuration& config, const std::optional<Goal>& goal = {});

json to_json(const Configuration& config, const std::optional<Goal>& goal = {});
json to_json(const Goal& goal);

ffg::FfgInstance parse_ffg(const std::string& text);
ffg::FfgInstance load_ffg(const std::string& path);
json to_json(const ffg::FfgInstance& instance);
json to_json(const ffg::FunctionTable& f);

json to_json(const TiltSequence& seq);  // array of "D(label)" tokens
json to_json(const SearchOutcome& out);
json to_json(const SearchStats& stats);
json to_json(const verify::GadgetReport& rep);
json to_json(const verify::CrosscheckReport& rep);
json port_map_json(const reduction::CompiledInstance& compiled);

std::string render_svg(const Configuration& config, const std::optional<Goal>& goal = {});

std::string read_file(const std::string& path);

}  // namespace ricochet::io
