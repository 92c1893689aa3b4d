#include "ricochet/verifier.hpp"

#include <algorithm>
#include <deque>

namespace ricochet::verify {

using gadgets::Gadget;
using gadgets::GadgetKind;
using gadgets::Port;
using gadgets::PortKind;

namespace {

// Small explicit state graph for probe boards.  Kept separate from the
// solver on purpose: the verifier should not trust the code it checks.
struct Explored {
  std::vector<std::vector<Coord>> states;
  std::vector<std::size_t> parent;
  std::vector<TiltMove> via;
  std::vector<std::vector<std::size_t>> succ;
  bool exhausted = false;
};

constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

Explored explore(const Board& board, const std::vector<Coord>& start, const std::vector<std::string>& labels,
                 std::size_t cap) {
  Explored ex;
  std::map<std::vector<Coord>, std::size_t> seen;
  ex.states.push_back(start);
  ex.parent.push_back(kNoParent);
  ex.via.push_back({});
  ex.succ.emplace_back();
  seen.emplace(start, 0);
  for (std::size_t cur = 0; cur < ex.states.size(); ++cur) {
    for (std::size_t t = 0; t < start.size(); ++t) {
      for (Direction d : kDirections) {
        const std::vector<Coord>& s = ex.states[cur];
        std::vector<Coord> others;
        for (std::size_t k = 0; k < s.size(); ++k)
          if (k != t) others.push_back(s[k]);
        Coord to = slide(board, s[t], d, others);
        if (to == s[t]) continue;
        std::vector<Coord> next = s;
        next[t] = to;
        auto [it, fresh] = seen.emplace(next, ex.states.size());
        if (fresh) {
          if (ex.states.size() >= cap) {
            ex.exhausted = true;
            return ex;
          }
          ex.states.push_back(std::move(next));
          ex.parent.push_back(cur);
          ex.via.push_back({d, labels[t]});
          ex.succ.emplace_back();
        }
        ex.succ[cur].push_back(it->second);
      }
    }
  }
  return ex;
}

TiltSequence path_to(const Explored& ex, std::size_t id) {
  TiltSequence seq;
  for (std::size_t cur = id; ex.parent[cur] != kNoParent; cur = ex.parent[cur]) seq.push_back(ex.via[cur]);
  std::reverse(seq.begin(), seq.end());
  return seq;
}

// Which states can reach a state satisfying `good`.
std::vector<bool> can_reach(const Explored& ex, const std::function<bool(const std::vector<Coord>&)>& good) {
  std::vector<std::vector<std::size_t>> pred(ex.states.size());
  for (std::size_t s = 0; s < ex.states.size(); ++s)
    for (std::size_t t : ex.succ[s]) pred[t].push_back(s);
  std::vector<bool> ok(ex.states.size(), false);
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < ex.states.size(); ++s)
    if (good(ex.states[s])) {
      ok[s] = true;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    for (std::size_t p : pred[s])
      if (!ok[p]) {
        ok[p] = true;
        queue.push_back(p);
      }
  }
  return ok;
}

const Port* port_at(const Gadget& g, Coord c) {
  for (const auto& p : g.ports)
    if (p.cell == c) return &p;
  return nullptr;
}

std::string vw(std::size_t a, std::size_t b) { return "[" + std::to_string(a) + "," + std::to_string(b) + "]"; }

}  // namespace

Relation expected_relation(const Gadget& g, const std::vector<ffg::FunctionTable>& gens) {
  Relation rel;
  switch (g.kind) {
    case GadgetKind::FunctionSelector:
      for (const auto& p : g.ports) {
        if (p.kind != PortKind::Input) continue;
        auto& outs = rel[p.name];
        for (std::size_t i = 0; i < gens.size(); ++i) outs.insert("out" + vw(i, gens[i][*p.value]));
      }
      break;
    case GadgetKind::FunctionEnforcer:
      for (const auto& p : g.ports) {
        if (p.kind != PortKind::Input) continue;
        rel[p.name].insert("out" + vw(*p.function, gens[*p.function][*p.value]));
      }
      break;
    case GadgetKind::LockSelector:
      for (const auto& p : g.ports)
        if (p.kind == PortKind::Output) rel["in"].insert(p.name);
      break;
    case GadgetKind::Lock:
    case GadgetKind::RelocationGoal:
    case GadgetKind::ReconfigurationGoal:
      for (const auto& p : g.ports)
        if (p.kind == PortKind::Input) rel[p.name];
      break;
  }
  return rel;
}

GadgetReport verify_gadget_io(const Gadget& g, const Relation& expected, std::size_t max_states) {
  GadgetReport rep;
  rep.kind = g.kind;
  for (const auto& entry : g.ports) {
    if (entry.kind != PortKind::Input) continue;
    ++rep.entries_tested;
    auto want_it = expected.find(entry.name);
    const std::set<std::string> want = want_it == expected.end() ? std::set<std::string>{} : want_it->second;

    Explored ex = explore(g.board, {entry.cell}, {"t"}, max_states);
    rep.states += ex.states.size();
    if (ex.exhausted) {
      rep.violations.push_back({entry.name, {}, "inconclusive"});
      continue;
    }
    std::set<std::string> reached;
    for (std::size_t s = 0; s < ex.states.size(); ++s) {
      const Coord c = ex.states[s][0];
      const Port* p = port_at(g, c);
      // climbing back out of the entry tunnel just undoes the entry
      if (!p || p == &entry) continue;
      if (!reached.insert(p->name).second) continue;
      if (want.contains(p->name))
        ++rep.legal_traversals;
      else
        rep.violations.push_back({entry.name, path_to(ex, s), p->name});
    }
    for (const auto& w : want)
      if (!reached.contains(w)) rep.violations.push_back({entry.name, {}, "missing " + w});

    auto ok = can_reach(ex, [&](const std::vector<Coord>& s) {
      const Port* p = port_at(g, s[0]);
      return p && p != &entry;
    });
    rep.stuck_states += static_cast<std::size_t>(std::count(ok.begin(), ok.end(), false));
  }
  return rep;
}

GadgetReport verify_lock_lemmas(const Gadget& lock, std::size_t max_states) {
  GadgetReport rep;
  rep.kind = lock.kind;
  if (lock.kind != GadgetKind::Lock || lock.resident_cells.empty())
    throw ValidationError("verify_lock_lemmas needs a lock gadget");
  const Coord home = lock.resident_cells.front();

  // locked tile alone
  {
    ++rep.entries_tested;
    Explored ex = explore(lock.board, {home}, {"L"}, max_states);
    rep.states += ex.states.size();
    if (ex.exhausted) rep.violations.push_back({"locked-alone", {}, "inconclusive"});
    for (std::size_t s = 0; s < ex.states.size(); ++s)
      if (const Port* p = port_at(lock, ex.states[s][0]))
        rep.violations.push_back({"locked-alone", path_to(ex, s), p->name});
  }

  for (const Port* spur : lock.ports_with_role("spur")) {
    ++rep.entries_tested;
    const Port& exit = lock.port("exit" + spur->name.substr(spur->name.find('[')));
    // index 0 = unlocking tile K, 1 = locked tile L
    Explored ex = explore(lock.board, {spur->cell, home}, {"K", "L"}, max_states);
    rep.states += ex.states.size();
    if (ex.exhausted) {
      rep.violations.push_back({spur->name, {}, "inconclusive"});
      continue;
    }
    bool freed = false;
    for (std::size_t s = 0; s < ex.states.size(); ++s) {
      const auto& st = ex.states[s];
      if (const Port* p = port_at(lock, st[0]); p && p != spur)
        rep.violations.push_back({spur->name, path_to(ex, s), "key-leak " + p->name});
      if (const Port* p = port_at(lock, st[1])) {
        if (p == &exit)
          freed = true;
        else
          rep.violations.push_back({spur->name, path_to(ex, s), "lock-leak " + p->name});
      }
    }
    if (freed)
      ++rep.legal_traversals;
    else
      rep.violations.push_back({spur->name, {}, "locked tile cannot leave through " + exit.name});
    auto ok = can_reach(ex, [&](const std::vector<Coord>& s) { return s[1] == exit.cell; });
    rep.stuck_states += static_cast<std::size_t>(std::count(ok.begin(), ok.end(), false));
  }
  return rep;
}

GadgetReport verify_goal(const Gadget& goal, std::size_t max_states) {
  GadgetReport rep = verify_gadget_io(goal, expected_relation(goal), max_states);
  const auto feeds = goal.ports_with_role("feed");
  const std::size_t n = feeds.size();
  const Coord home{goal.kind == GadgetKind::RelocationGoal ? goal.resident_cells.front().x - static_cast<int>(n - 1)
                                                           : goal.resident_cells.front().x,
                   goal.resident_cells.front().y};

  // parked tiles stay in the goal
  for (std::size_t j = 0; j < n; ++j) {
    ++rep.entries_tested;
    std::vector<Coord> start;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k <= j; ++k) {
      start.push_back({home.x + static_cast<int>(k), home.y});
      labels.push_back("p" + std::to_string(k));
    }
    Explored ex = explore(goal.board, start, labels, max_states);
    rep.states += ex.states.size();
    if (ex.exhausted) rep.violations.push_back({"pocket" + std::to_string(j), {}, "inconclusive"});
    // climbing a feed is a dead end; escaping means never getting back down
    auto back = can_reach(ex, [&](const std::vector<Coord>& s) {
      return std::all_of(s.begin(), s.end(), [&](Coord c) { return c.y == home.y; });
    });
    for (std::size_t s = 0; s < ex.states.size(); ++s)
      if (!back[s]) {
        rep.violations.push_back({"pocket" + std::to_string(j), path_to(ex, s), "escape"});
        break;
      }
  }

  // every feed loaded at once: pockets fill in order
  {
    ++rep.entries_tested;
    std::vector<Coord> start;
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < n; ++j) {
      start.push_back(feeds[j]->cell);
      labels.push_back("f" + std::to_string(j));
    }
    Explored ex = explore(goal.board, start, labels, max_states);
    rep.states += ex.states.size();
    if (ex.exhausted) rep.violations.push_back({"all-feeds", {}, "inconclusive"});
    for (std::size_t s = 0; s < ex.states.size(); ++s) {
      const auto& st = ex.states[s];
      auto occupied = [&](Coord c) { return std::find(st.begin(), st.end(), c) != st.end(); };
      for (std::size_t k = 1; k < n; ++k) {
        const Coord pk{home.x + static_cast<int>(k), home.y};
        const Coord before{home.x + static_cast<int>(k) - 1, home.y};
        if (occupied(pk) && !occupied(before)) {
          rep.violations.push_back({"all-feeds", path_to(ex, s), "pocket" + std::to_string(k) + " out of order"});
          break;
        }
      }
      bool full = true;
      for (std::size_t k = 0; k < n; ++k) full = full && occupied({home.x + static_cast<int>(k), home.y});
      if (full) ++rep.legal_traversals;
    }
  }
  return rep;
}

GadgetReport verify(const Gadget& g, const std::vector<ffg::FunctionTable>& gens, std::size_t max_states) {
  switch (g.kind) {
    case GadgetKind::Lock: return verify_lock_lemmas(g, max_states);
    case GadgetKind::RelocationGoal:
    case GadgetKind::ReconfigurationGoal: return verify_goal(g, max_states);
    default: return verify_gadget_io(g, expected_relation(g, gens), max_states);
  }
}

std::optional<Mutation> find_violating_mutation(const Gadget& g,
                                                const std::function<GadgetReport(const Gadget&)>& check) {
  const Board& b = g.board;
  for (int y = 2; y < b.height(); ++y) {
    for (int x = 2; x < b.width(); ++x) {
      const Coord c{x, y};
      if (!b.blocked(c)) continue;
      bool touches = false;
      for (Direction d : kDirections) touches = touches || b.open(c + d);
      if (!touches) continue;
      Gadget m = g;
      m.board = with_cell(b, c, false);
      GadgetReport rep = check(m);
      if (!rep.pass()) return Mutation{c, std::move(rep)};
    }
  }
  return std::nullopt;
}

const char* to_string(BoardVerdict v) {
  switch (v) {
    case BoardVerdict::Yes: return "yes";
    case BoardVerdict::No: return "no";
    case BoardVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

CrosscheckReport crosscheck(const ffg::FfgInstance& instance, reduction::Mode mode, const SearchLimits& limits) {
  CrosscheckReport rep;
  rep.instance = instance;
  rep.mode = mode;
  rep.witness = ffg::is_generated(instance);
  rep.oracle = rep.witness.has_value();
  const reduction::CompiledInstance c = reduction::compile(instance, mode);
  rep.width = c.board.width();
  rep.height = c.board.height();
  if (rep.witness) {
    TiltSequence seq = reduction::emit_witness(instance, *rep.witness, c);
    rep.sequence_length = seq.size();
    rep.board = satisfies(apply_sequence(c.initial, seq), c.goal) ? BoardVerdict::Yes : BoardVerdict::No;
  } else {
    SearchOutcome out = solve(c.initial, c.goal, limits);
    rep.stats = out.stats;
    rep.board = out.verdict == Verdict::Unsolvable ? BoardVerdict::No
                : out.verdict == Verdict::Solvable ? BoardVerdict::Yes
                                                   : BoardVerdict::Inconclusive;
    rep.sequence_length = out.sequence.size();
  }
  rep.agree = rep.board != BoardVerdict::Inconclusive && (rep.board == BoardVerdict::Yes) == rep.oracle;
  return rep;
}

}  // namespace ricochet::verify
