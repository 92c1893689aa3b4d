#pragma once

// Independent reference implementations.  Deliberately naive and written
// without touching the library's slide/solver/closure code, so agreement
// means something.

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ricochet/ffg.hpp"
#include "ricochet/tilt.hpp"

namespace oracle {

using ricochet::Board;
using ricochet::Coord;
using ricochet::Direction;

// label -> cell, in label order
using State = std::map<std::string, Coord>;

inline Coord step_of(Direction d) {
  switch (d) {
    case Direction::N: return {0, 1};
    case Direction::E: return {1, 0};
    case Direction::S: return {0, -1};
    default: return {-1, 0};
  }
}

inline bool free_cell(const Board& b, const State& s, Coord c) {
  if (c.x < 1 || c.y < 1 || c.x > b.width() || c.y > b.height()) return false;
  if (b.blocked(c)) return false;
  for (const auto& [l, p] : s)
    if (p == c) return false;
  return true;
}

inline State tilt(const Board& b, State s, const std::string& label, Direction d) {
  const Coord o = step_of(d);
  Coord c = s.at(label);
  for (;;) {
    Coord n{c.x + o.x, c.y + o.y};
    if (!free_cell(b, s, n)) break;
    s[label] = n;
    c = n;
  }
  return s;
}

// Every configuration reachable from `start`, with its BFS distance.
inline std::map<State, std::size_t> distances(const Board& b, const State& start) {
  std::map<State, std::size_t> dist{{start, 0}};
  std::vector<State> layer{start};
  for (std::size_t d = 1; !layer.empty(); ++d) {
    std::vector<State> next;
    for (const auto& s : layer)
      for (const auto& [label, pos] : s)
        for (Direction dir : {Direction::N, Direction::E, Direction::S, Direction::W}) {
          State t = tilt(b, s, label, dir);
          if (dist.emplace(t, d).second) next.push_back(t);
        }
    layer = std::move(next);
  }
  return dist;
}

inline State to_state(const ricochet::Configuration& c) {
  State s;
  for (const auto& t : c.tiles()) s[t.label] = t.position;
  return s;
}

// All words over the generators up to max_len, literally.  Returns the
// length of the shortest word evaluating to h (0 = none).
inline std::size_t naive_words(const ricochet::ffg::FfgInstance& inst, std::size_t max_len) {
  const std::size_t k = inst.generators.size();
  std::vector<std::size_t> word;
  auto eval = [&] {
    std::vector<ricochet::ffg::Element> v(inst.n);
    for (std::size_t x = 0; x < inst.n; ++x) {
      ricochet::ffg::Element y = static_cast<ricochet::ffg::Element>(x);
      for (std::size_t i : word) y = inst.generators[i].table()[y];
      v[x] = y;
    }
    return v;
  };
  for (std::size_t len = 1; len <= max_len; ++len) {
    word.assign(len, 0);
    for (;;) {
      if (eval() == inst.target.table()) return len;
      std::size_t p = len;
      while (p > 0 && ++word[p - 1] == k) word[--p] = 0;
      if (p == 0) break;
    }
  }
  return 0;
}

// Sets of values of words of each exact length, up to max_len.  Same
// answer as naive_words when the latter is feasible, in polynomial time.
inline std::size_t layered_words(const ricochet::ffg::FfgInstance& inst, std::size_t max_len,
                                 std::set<std::vector<ricochet::ffg::Element>>* all = nullptr) {
  using V = std::vector<ricochet::ffg::Element>;
  std::set<V> layer;
  std::size_t found = 0;
  for (const auto& g : inst.generators) layer.insert(g.table());
  for (std::size_t len = 1; len <= max_len; ++len) {
    if (all) all->insert(layer.begin(), layer.end());
    if (!found && layer.contains(inst.target.table())) found = len;
    std::set<V> next;
    for (const auto& v : layer)
      for (const auto& g : inst.generators) {
        V w(inst.n);
        for (std::size_t x = 0; x < inst.n; ++x) w[x] = g.table()[v[x]];
        next.insert(std::move(w));
      }
    if (next == layer) break;
    layer = std::move(next);
  }
  return found;
}

inline std::size_t power(std::size_t n, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= n;
  return r;
}

}  // namespace oracle
