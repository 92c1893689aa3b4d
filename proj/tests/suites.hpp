#pragma once

// Bulk checks shared by the unit tests and the acceptance binary.  Each
// returns counts plus the first failure, so callers can print or assert.

#include <algorithm>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "ricochet/ffg.hpp"
#include "ricochet/solver.hpp"
#include "ricochet/tilt.hpp"

namespace suites {

using namespace ricochet;

struct Tally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void fail(const std::string& what) {
    if (!failures++) first_failure = what;
  }
  bool ok() const { return failures == 0 && cases > 0; }
};

inline std::string describe(const Configuration& c) {
  std::ostringstream o;
  o << c.board().width() << "x" << c.board().height() << " walls";
  for (Coord w : c.board().blocked_cells()) o << " (" << w.x << "," << w.y << ")";
  o << " tiles";
  for (const auto& t : c.tiles()) o << " " << t.label << "(" << t.position.x << "," << t.position.y << ")";
  return o.str();
}

// Random configuration: up to 12x12, up to 6 tiles, wall density 0..40%.
inline Configuration random_config(std::mt19937_64& rng, int max_side = 12, std::size_t max_tiles = 6) {
  std::uniform_int_distribution<int> side(1, max_side);
  const int w = side(rng), h = side(rng);
  std::uniform_real_distribution<double> unit(0, 1);
  const double density = unit(rng) * 0.4;
  std::vector<Coord> walls, open;
  for (int y = 1; y <= h; ++y)
    for (int x = 1; x <= w; ++x) (unit(rng) < density ? walls : open).push_back({x, y});
  std::shuffle(open.begin(), open.end(), rng);
  const std::size_t k = std::min(open.size(), std::uniform_int_distribution<std::size_t>(0, max_tiles)(rng));
  std::vector<Tile> tiles;
  for (std::size_t i = 0; i < k; ++i) tiles.push_back({std::string(1, static_cast<char>('a' + i)), open[i]});
  return Configuration(make_board(w, h, walls), tiles);
}

// Idempotence, conservation, locality, terminality, no-overlap, and
// agreement with both the step fixed point and the oracle slide.
inline Tally tilt_properties(std::size_t cases, std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  while (t.cases < cases) {
    Configuration c = random_config(rng);
    if (c.tiles().empty()) continue;
    const auto& tiles = c.tiles();
    const Tile& pick = tiles[std::uniform_int_distribution<std::size_t>(0, tiles.size() - 1)(rng)];
    const Direction d = kDirections[std::uniform_int_distribution<int>(0, 3)(rng)];
    ++t.cases;
    const std::string where = describe(c) + " move " + format_sequence({{d, pick.label}});

    Configuration once = particle_tilt(c, pick.label, d);
    if (particle_tilt(once, pick.label, d) != once) t.fail("idempotence: " + where);

    Configuration fix = c;
    for (;;) {
      Configuration n = particle_step(fix, pick.label, d);
      if (n == fix) break;
      fix = n;
    }
    if (fix != once) t.fail("step fixed point: " + where);
    if (!is_step_terminal(once, pick.label, d)) t.fail("terminality: " + where);

    if (once.tiles().size() != tiles.size()) t.fail("conservation: " + where);
    std::size_t moved = 0;
    for (std::size_t i = 0; i < tiles.size(); ++i) {
      const Tile& a = tiles[i];
      const Tile& b = once.tiles()[i];
      if (a.label != b.label) t.fail("conservation: " + where);
      if (a.position == b.position) continue;
      ++moved;
      const Coord o = offset(d);
      const bool along = o.x == 0 ? a.position.x == b.position.x : a.position.y == b.position.y;
      if (a.label != pick.label || !along) t.fail("locality: " + where);
    }
    if (moved > 1) t.fail("locality: " + where);

    std::set<Coord> cells;
    for (const auto& tile : once.tiles()) {
      if (once.board().blocked(tile.position)) t.fail("no-overlap (wall): " + where);
      if (!cells.insert(tile.position).second) t.fail("no-overlap: " + where);
    }

    oracle::State ref = oracle::tilt(c.board(), oracle::to_state(c), pick.label, d);
    if (ref != oracle::to_state(once)) t.fail("oracle slide: " + where);
  }
  return t;
}

// Fixed board generator for the solver oracle: every size up to 4x4;
// all wall masks when the area is at most `full_area`, otherwise
// `samples` masks from a fixed seed.
template <class F>
void for_each_small_board(int max_side, int full_area, std::size_t samples, F&& f) {
  std::mt19937_64 rng(20240607);
  for (int h = 1; h <= max_side; ++h)
    for (int w = 1; w <= max_side; ++w) {
      const int area = w * h;
      auto emit = [&](std::uint32_t mask) {
        std::vector<Coord> walls;
        for (int i = 0; i < area; ++i)
          if (mask >> i & 1u) walls.push_back({i % w + 1, i / w + 1});
        f(make_board(w, h, walls));
      };
      if (area <= full_area) {
        for (std::uint32_t m = 0; m < (1u << area); ++m) emit(m);
      } else {
        std::uniform_int_distribution<std::uint32_t> mask(0, (1u << area) - 1);
        emit(0);
        for (std::size_t k = 0; k < samples; ++k) emit(mask(rng));
      }
    }
}

struct SolverOracleOptions {
  int max_side = 4;
  int full_area = 9;
  std::size_t samples = 48;
};

// Solver vs. the oracle's BFS distances, for one and two tiles.
inline Tally solver_oracle(const SolverOracleOptions& opt = {}) {
  Tally t;
  auto check_start = [&](const Board& b, const std::vector<Tile>& start) {
    Configuration c(b, start);
    const auto dist = oracle::distances(b, oracle::to_state(c));
    const std::string where = describe(c);

    // closure
    ReachableSet rs = reachable_configs(c);
    ++t.cases;
    if (rs.exhausted || rs.keys.size() != dist.size()) t.fail("closure size: " + where);
    for (const auto& key : rs.keys)
      if (!dist.contains(oracle::to_state(from_key(c, key)))) {
        t.fail("closure member: " + where);
        break;
      }

    // relocation of every tile to every open cell
    for (const auto& tile : start)
      for (Coord g : b.open_cells()) {
        std::optional<std::size_t> best;
        for (const auto& [s, d] : dist)
          if (s.at(tile.label) == g && (!best || d < *best)) best = d;
        SearchOutcome r = solve_relocation(c, tile.label, g);
        ++t.cases;
        const std::string q = where + " relocate " + tile.label + " to (" + std::to_string(g.x) + "," +
                              std::to_string(g.y) + ")";
        if (best) {
          if (r.verdict != Verdict::Solvable || r.sequence.size() != *best)
            t.fail(q + ": want length " + std::to_string(*best));
          else if (apply_sequence(c, r.sequence).tile(tile.label).position != g)
            t.fail(q + ": replay misses");
        } else if (r.verdict != Verdict::Unsolvable) {
          t.fail(q + ": want unsolvable");
        }
      }

    // reconfiguration to every placement of the same labels
    if (start.size() == 1) return;
    const auto open = b.open_cells();
    for (Coord p : open)
      for (Coord q : open) {
        if (p == q) continue;
        Configuration target(b, {{start[0].label, p}, {start[1].label, q}});
        auto it = dist.find(oracle::to_state(target));
        SearchOutcome r = solve_reconfiguration(c, target);
        ++t.cases;
        if (it != dist.end()) {
          if (r.verdict != Verdict::Solvable || r.sequence.size() != it->second ||
              apply_sequence(c, r.sequence) != target)
            t.fail(where + " reconfigure: want length " + std::to_string(it->second));
        } else if (r.verdict != Verdict::Unsolvable) {
          t.fail(where + " reconfigure: want unsolvable");
        }
      }
  };

  for_each_small_board(opt.max_side, opt.full_area, opt.samples, [&](const Board& b) {
    const auto open = b.open_cells();
    for (Coord p : open) {
      check_start(b, {{"a", p}});
      for (Coord q : open)
        if (q != p) check_start(b, {{"a", p}, {"b", q}});
    }
  });
  return t;
}

// is_generated vs. literal word enumeration (N=2) or layered word sets
// (larger N), plus the N^N closure bound.
inline void ffg_check(const ffg::FfgInstance& inst, Tally& t) {
  ++t.cases;
  std::ostringstream d;
  d << "n=" << inst.n << " F=";
  for (const auto& g : inst.generators) {
    d << "[";
    for (auto x : g.table()) d << x;
    d << "]";
  }
  d << " h=";
  for (auto x : inst.target.table()) d << x;
  const std::size_t bound = oracle::power(inst.n, inst.n);

  std::set<std::vector<ffg::Element>> all;
  const std::size_t layered = oracle::layered_words(inst, bound, &all);
  const std::size_t want = inst.n <= 2 ? oracle::naive_words(inst, bound) : layered;
  if (inst.n <= 2 && want != layered) t.fail("oracles disagree: " + d.str());

  auto w = ffg::is_generated(inst);
  if (bool(w) != (want > 0)) {
    t.fail("membership: " + d.str());
    return;
  }
  if (w) {
    if (w->indices.size() != want) t.fail("witness length: " + d.str());
    if (ffg::evaluate(inst, *w) != inst.target) t.fail("witness value: " + d.str());
  }
  ffg::Closure c = ffg::generated_closure(inst.generators);
  if (c.exhausted || c.elements.size() > bound) t.fail("closure bound: " + d.str());
  if (c.elements.size() != all.size()) t.fail("closure size: " + d.str());
}

inline Tally ffg_oracle(std::size_t random_n3, std::uint64_t seed) {
  Tally t;
  for (const auto& inst : ffg::enumerate_instances(2, 2)) ffg_check(inst, t);
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < random_n3; ++k) ffg_check(ffg::random_instance(3, 2, rng), t);
  return t;
}

}  // namespace suites
