#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ricochet/tilt.hpp"

namespace ricochet {

struct RelocationGoal {
  std::string label;
  Coord cell;
  friend bool operator==(const RelocationGoal&, const RelocationGoal&) = default;
};

// Target positions for every tile, keyed by label.
struct ReconfigurationGoal {
  std::vector<Tile> tiles;
  friend bool operator==(const ReconfigurationGoal&, const ReconfigurationGoal&) = default;
};

using Goal = std::variant<RelocationGoal, ReconfigurationGoal>;

bool satisfies(const Configuration& config, const Goal& goal);

}  // namespace ricochet
