#include "ricochet/solver.hpp"

#include <algorithm>
#include <limits>
#include <thread>

namespace ricochet {

bool satisfies(const Configuration& config, const Goal& goal) {
  if (const auto* r = std::get_if<RelocationGoal>(&goal)) {
    auto at = config.find(r->label);
    return at && config.tiles()[*at].position == r->cell;
  }
  const auto& g = std::get<ReconfigurationGoal>(goal);
  if (g.tiles.size() != config.tiles().size()) return false;
  for (const Tile& t : g.tiles) {
    auto at = config.find(t.label);
    if (!at || config.tiles()[*at].position != t.position) return false;
  }
  return true;
}

std::size_t CanonicalKeyHash::operator()(const CanonicalKey& k) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (auto c : k.cells) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

CanonicalKey canonical_key(const Configuration& config) {
  CanonicalKey key;
  key.cells.reserve(config.tiles().size());
  for (const Tile& t : config.tiles())
    key.cells.push_back(static_cast<std::uint32_t>(config.board().index(t.position)));
  return key;
}

Configuration from_key(const Configuration& like, const CanonicalKey& key) {
  std::vector<Tile> tiles = like.tiles();
  if (tiles.size() != key.cells.size()) throw ValidationError("key does not match configuration");
  for (std::size_t i = 0; i < tiles.size(); ++i)
    tiles[i].position = like.board().coord(key.cells[i]);
  return Configuration(like.board(), std::move(tiles));
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Solvable: return "solvable";
    case Verdict::Unsolvable: return "unsolvable";
    case Verdict::Exhausted: return "exhausted";
  }
  return "?";
}

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// Flat state store with an open-addressing index keyed on the positions.
class StateStore {
 public:
  explicit StateStore(std::size_t width) : k_(width) { slots_.assign(1024, kNone); }

  std::size_t size() const noexcept { return parent_.size(); }
  const std::uint32_t* state(std::uint32_t id) const noexcept { return &pool_[id * k_]; }
  std::uint32_t parent(std::uint32_t id) const noexcept { return parent_[id]; }
  std::uint8_t move(std::uint32_t id) const noexcept { return move_[id]; }

  // Returns the new id, or kNone when the state is already stored.
  std::uint32_t insert(const std::uint32_t* s, std::uint32_t parent, std::uint8_t move) {
    if ((size() + 1) * 2 > slots_.size()) grow();
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash(s) & mask;; i = (i + 1) & mask) {
      std::uint32_t id = slots_[i];
      if (id == kNone) {
        id = static_cast<std::uint32_t>(size());
        pool_.insert(pool_.end(), s, s + k_);
        parent_.push_back(parent);
        move_.push_back(move);
        slots_[i] = id;
        return id;
      }
      if (std::equal(s, s + k_, state(id))) return kNone;
    }
  }

  bool contains(const std::uint32_t* s) const {
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash(s) & mask;; i = (i + 1) & mask) {
      std::uint32_t id = slots_[i];
      if (id == kNone) return false;
      if (std::equal(s, s + k_, state(id))) return true;
    }
  }

 private:
  std::size_t hash(const std::uint32_t* s) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::size_t i = 0; i < k_; ++i) {
      h ^= s[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }

  void grow() {
    std::vector<std::uint32_t> old(slots_.size() * 2, kNone);
    old.swap(slots_);
    std::size_t mask = slots_.size() - 1;
    for (std::uint32_t id = 0; id < size(); ++id) {
      std::size_t i = hash(state(id)) & mask;
      while (slots_[i] != kNone) i = (i + 1) & mask;
      slots_[i] = id;
    }
  }

  std::size_t k_;
  std::vector<std::uint32_t> pool_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> move_;
  std::vector<std::uint32_t> slots_;
};

struct Candidate {
  std::uint32_t parent;
  std::uint8_t move;
};

class Search {
 public:
  using Goal = std::function<bool(const std::uint32_t*)>;

  Search(const Configuration& start, const SearchLimits& limits)
      : board_(start.board()), limits_(limits), k_(start.tiles().size()), store_(k_) {
    for (const Tile& t : start.tiles()) labels_.push_back(t.label);
    if (k_ * 4 > 256) throw ValidationError("solver supports at most 64 tiles");
  }

  // Runs BFS; `goal` may be empty for a full closure.
  SearchOutcome run(const CanonicalKey& start, const Goal& goal) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    auto out_of_time = [&] {
      return limits_.time_budget_seconds &&
             std::chrono::duration<double>(clock::now() - t0).count() > *limits_.time_budget_seconds;
    };

    SearchOutcome out;
    std::uint32_t root = store_.insert(start.cells.data(), kNone, 0);
    out.stats.states_discovered = 1;
    if (goal && goal(store_.state(root))) {
      out.verdict = Verdict::Solvable;
      return out;
    }

    std::vector<std::uint32_t> frontier{root};
    std::size_t depth = 0;
    const unsigned threads = std::max(1u, limits_.threads);

    while (!frontier.empty()) {
      out.stats.frontier_peak = std::max(out.stats.frontier_peak, frontier.size());
      out.stats.depth_reached = depth;
      const bool at_depth_limit = limits_.max_depth && depth >= *limits_.max_depth;

      // Successor generation, possibly split across threads; merged in
      // frontier order so the result matches the single-threaded run.
      const unsigned parts = frontier.size() < 256 ? 1u : threads;
      std::vector<std::vector<std::uint32_t>> chunk_states(parts);
      std::vector<std::vector<Candidate>> chunk_meta(parts);
      auto work = [&](unsigned t) {
        std::size_t lo = frontier.size() * t / parts;
        std::size_t hi = frontier.size() * (t + 1) / parts;
        std::vector<std::uint32_t> cur(k_);
        for (std::size_t f = lo; f < hi; ++f) {
          const std::uint32_t* s = store_.state(frontier[f]);
          for (std::size_t tile = 0; tile < k_; ++tile) {
            for (Direction d : kDirections) {
              std::uint32_t to = slide_index(s, tile, d);
              if (to == s[tile]) continue;
              std::copy(s, s + k_, cur.begin());
              cur[tile] = to;
              if (store_.contains(cur.data())) continue;
              chunk_states[t].insert(chunk_states[t].end(), cur.begin(), cur.end());
              chunk_meta[t].push_back(
                  {frontier[f], static_cast<std::uint8_t>(tile * 4 + static_cast<int>(d))});
            }
          }
        }
      };
      if (parts == 1) {
        work(0);
      } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < parts; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
      }
      out.stats.states_expanded += frontier.size();

      std::vector<std::uint32_t> next;
      for (std::size_t c = 0; c < chunk_meta.size(); ++c) {
        for (std::size_t i = 0; i < chunk_meta[c].size(); ++i) {
          const std::uint32_t* s = &chunk_states[c][i * k_];
          if (at_depth_limit) {
            if (!store_.contains(s)) {
              out.verdict = Verdict::Exhausted;
              return out;
            }
            continue;
          }
          std::uint32_t id = store_.insert(s, chunk_meta[c][i].parent, chunk_meta[c][i].move);
          if (id == kNone) continue;
          ++out.stats.states_discovered;
          if (goal && goal(store_.state(id))) {
            out.verdict = Verdict::Solvable;
            out.stats.depth_reached = depth + 1;
            out.sequence = path_to(id);
            return out;
          }
          if (store_.size() > limits_.max_states) {
            out.verdict = Verdict::Exhausted;
            return out;
          }
          next.push_back(id);
        }
      }
      if (out_of_time()) {
        out.verdict = Verdict::Exhausted;
        return out;
      }
      if (at_depth_limit) break;
      frontier.swap(next);
      ++depth;
    }
    out.verdict = Verdict::Unsolvable;
    return out;
  }

  std::vector<CanonicalKey> keys() const {
    std::vector<CanonicalKey> out;
    out.reserve(store_.size());
    for (std::uint32_t id = 0; id < store_.size(); ++id) {
      const std::uint32_t* s = store_.state(id);
      out.push_back({std::vector<std::uint32_t>(s, s + k_)});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::uint32_t slide_index(const std::uint32_t* s, std::size_t tile, Direction d) const {
    Coord c = board_.coord(s[tile]);
    for (;;) {
      Coord n = c + d;
      if (board_.blocked(n)) break;
      auto ni = static_cast<std::uint32_t>(board_.index(n));
      bool hit = false;
      for (std::size_t j = 0; j < k_; ++j)
        if (j != tile && s[j] == ni) hit = true;
      if (hit) break;
      c = n;
    }
    return static_cast<std::uint32_t>(board_.index(c));
  }

  TiltSequence path_to(std::uint32_t id) const {
    TiltSequence seq;
    while (store_.parent(id) != kNone) {
      std::uint8_t m = store_.move(id);
      seq.push_back({static_cast<Direction>(m % 4), labels_[m / 4]});
      id = store_.parent(id);
    }
    std::reverse(seq.begin(), seq.end());
    return seq;
  }

  const Board& board_;
  SearchLimits limits_;
  std::size_t k_;
  std::vector<std::string> labels_;
  StateStore store_;
};

}  // namespace

SearchOutcome solve_relocation(const Configuration& config, const std::string& label, Coord goal,
                               const SearchLimits& limits) {
  auto at = config.find(label);
  if (!at) throw UnknownLabelError(label);
  if (config.board().blocked(goal)) throw ValidationError("relocation goal is not an open cell");
  const auto target = static_cast<std::uint32_t>(config.board().index(goal));
  const std::size_t tile = *at;
  Search search(config, limits);
  return search.run(canonical_key(config),
                    [=](const std::uint32_t* s) { return s[tile] == target; });
}

SearchOutcome solve_reconfiguration(const Configuration& config, const Configuration& target,
                                    const SearchLimits& limits) {
  if (!(config.board() == target.board()))
    throw ValidationError("reconfiguration target is on a different board");
  if (config.tiles().size() != target.tiles().size())
    throw ValidationError("reconfiguration target has a different tile set");
  for (std::size_t i = 0; i < config.tiles().size(); ++i)
    if (config.tiles()[i].label != target.tiles()[i].label)
      throw ValidationError("reconfiguration target has a different tile set");
  const CanonicalKey want = canonical_key(target);
  Search search(config, limits);
  return search.run(canonical_key(config), [&want](const std::uint32_t* s) {
    return std::equal(want.cells.begin(), want.cells.end(), s);
  });
}

SearchOutcome solve(const Configuration& config, const Goal& goal, const SearchLimits& limits) {
  if (const auto* r = std::get_if<RelocationGoal>(&goal))
    return solve_relocation(config, r->label, r->cell, limits);
  const auto& g = std::get<ReconfigurationGoal>(goal);
  return solve_reconfiguration(config, Configuration(config.board(), g.tiles), limits);
}

ReachableSet reachable_configs(const Configuration& config, const SearchLimits& limits) {
  Search search(config, limits);
  SearchOutcome o = search.run(canonical_key(config), {});
  ReachableSet out;
  out.exhausted = o.verdict == Verdict::Exhausted;
  out.stats = o.stats;
  out.keys = search.keys();
  return out;
}

}  // namespace ricochet
