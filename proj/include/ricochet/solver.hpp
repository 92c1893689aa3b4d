#pragma once

// Breadth-first search over the one-move relation of a configuration.
//
// States are tile positions in label order; the board is fixed for a whole
// search.  Successors are generated by label (lexicographic) then direction
// N, E, S, W, so a single-threaded run always returns the same shortest
// sequence.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ricochet/goal.hpp"
#include "ricochet/tilt.hpp"

namespace ricochet {

// Cell indices (Board::index) of the tiles, in label order.
struct CanonicalKey {
  std::vector<std::uint32_t> cells;
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const noexcept;
};

CanonicalKey canonical_key(const Configuration& config);

struct SearchLimits {
  std::size_t max_states = 10'000'000;
  std::optional<std::size_t> max_depth;
  std::optional<double> time_budget_seconds;
  unsigned threads = 1;
};

struct SearchStats {
  std::size_t states_discovered = 0;
  std::size_t states_expanded = 0;
  std::size_t frontier_peak = 0;
  std::size_t depth_reached = 0;
};

enum class Verdict { Solvable, Unsolvable, Exhausted };

const char* to_string(Verdict v);

struct SearchOutcome {
  Verdict verdict = Verdict::Unsolvable;
  TiltSequence sequence;  // meaningful only when Solvable
  SearchStats stats;
};

SearchOutcome solve_relocation(const Configuration& config, const std::string& label, Coord goal,
                               const SearchLimits& limits = {});

// Throws ValidationError when boards or label sets differ.
SearchOutcome solve_reconfiguration(const Configuration& config, const Configuration& target,
                                    const SearchLimits& limits = {});

SearchOutcome solve(const Configuration& config, const Goal& goal, const SearchLimits& limits = {});

struct ReachableSet {
  std::vector<CanonicalKey> keys;  // sorted; includes the start
  bool exhausted = false;
  SearchStats stats;
};

ReachableSet reachable_configs(const Configuration& config, const SearchLimits& limits = {});

// Rebuild a configuration from a key produced on the same board/labels.
Configuration from_key(const Configuration& like, const CanonicalKey& key);

}  // namespace ricochet
