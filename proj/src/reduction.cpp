#include "ricochet/reduction.hpp"

#include <algorithm>
#include <sstream>

namespace ricochet::reduction {

using ffg::Element;
using gadgets::GadgetKind;
using track::ColRef;
using track::SegId;

struct Routing {
  track::Network net;
  std::unique_ptr<track::Layout> layout;
  std::size_t n = 0;
  std::size_t functions = 0;
  std::vector<std::vector<gadgets::LockParts>> locks;  // [j][v]
  gadgets::SelectorParts selector;
  std::vector<gadgets::EnforcerParts> enforcers;  // [j], slot 0 unused
  std::vector<std::map<std::pair<std::size_t, Element>, gadgets::LaneParts>> lanes;  // [j][(i, w)]
  std::vector<std::vector<SegId>> merges;  // [j][w]
  gadgets::GoalParts goal;

  const track::Network::Segment& seg(SegId s) const { return net.segments().at(static_cast<std::size_t>(s)); }
  Coord cell(SegId s, ColRef c) const { return layout->cell(s, c); }
  std::size_t slot(std::size_t i, Element w) const { return i * n + w; }
  Coord pocket(std::size_t j) const {
    Coord home = layout->west(goal.seg);
    return {home.x + static_cast<int>(j), home.y};
  }
  const gadgets::OutputLane& output(std::size_t j, std::size_t i, Element w) const {
    return j == 0 ? selector.outputs.at({i, w}) : enforcers[j].outputs.at({i, w});
  }
};

const char* to_string(Mode m) { return m == Mode::Relocation ? "relocation" : "reconfiguration"; }

Mode mode_from_string(const std::string& s) {
  if (s == "relocation") return Mode::Relocation;
  if (s == "reconfiguration") return Mode::Reconfiguration;
  throw ValidationError("unknown mode '" + s + "' (expected relocation or reconfiguration)");
}

std::string tile_label(std::size_t element) { return "e" + std::to_string(element + 1); }

namespace {

std::string idx(std::size_t a) { return "[" + std::to_string(a) + "]"; }
std::string idx(std::size_t a, std::size_t b) { return "[" + std::to_string(a) + "," + std::to_string(b) + "]"; }

PlacedGadget place(const Routing& r, std::string name, GadgetKind kind, const std::vector<SegId>& segs) {
  PlacedGadget g{std::move(name), kind, {0, 0}, {0, 0}, {}};
  bool first = true;
  for (SegId s : segs) {
    Coord w = r.layout->west(s), e = r.layout->east(s);
    if (first) {
      g.lo = w;
      g.hi = e;
      first = false;
    }
    g.lo = {std::min(g.lo.x, w.x), std::min(g.lo.y, w.y)};
    g.hi = {std::max(g.hi.x, e.x), std::max(g.hi.y, e.y)};
  }
  return g;
}

}  // namespace

CompiledInstance compile(const ffg::FfgInstance& instance, Mode mode) {
  instance.validate();
  auto r = std::make_shared<Routing>();
  track::Network& net = r->net;
  const std::size_t n = instance.n;
  const std::size_t F = instance.generators.size();
  r->n = n;
  r->functions = F;

  r->locks.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t v = 0; v < n; ++v) r->locks[j].push_back(gadgets::add_lock(net, n * F, "lock" + idx(j, v)));

  r->selector = gadgets::add_function_selector(net, instance.generators, "selector");
  r->enforcers.resize(n);
  for (std::size_t j = 1; j < n; ++j)
    r->enforcers[j] = gadgets::add_function_enforcer(net, instance.generators, "enforcer" + idx(j));

  // lock exits feed the element's selector or enforcer, keyed by the slot's function
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t v = 0; v < n; ++v) {
      const auto& P = r->locks[j][v];
      for (std::size_t q = 0; q < P.slots.size(); ++q) {
        const std::size_t i = q / n;
        SegId to = j == 0 ? r->selector.inputs[v] : r->enforcers[j].inputs.at({i, static_cast<Element>(v)});
        ColRef e{P.slots[q], 0};
        net.add_interior(to, e);
        net.add_chute(e, P.seg, to, false);
        net.require_above(P.seg, to);
      }
    }
  }

  // return funnels; only the one carrying h(j) reaches the goal row
  std::vector<ColRef> goal_cols;
  r->merges.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t w = 0; w < n; ++w) {
      const auto& P = r->locks[j][w];
      SegId m = net.segment("return" + idx(j, w));
      ColRef east{net.column(), 0};
      // the last element may never reach the goal after an unlock
      if (w == instance.target[j] && j + 1 < n) goal_cols.push_back(east);
      net.set_ends(m, {P.ret, 0}, east);
      net.add_chute({P.ret, 0}, m, P.seg);
      r->merges[j].push_back(m);
    }
  }

  r->lanes.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t next = (j + 1) % n;
    const auto& outputs = j == 0 ? r->selector.outputs : r->enforcers[j].outputs;
    for (const auto& [key, lane] : outputs) {
      const auto [i, w] = key;
      std::vector<ColRef> spurs, returns;
      for (std::size_t u = 0; u < n; ++u) {
        spurs.push_back({r->locks[next][u].slots[r->slot(i, w)], 1});
        returns.push_back({net.column(), 0});
      }
      auto parts = gadgets::add_lock_selector(net, n, lane.out, spurs, returns, "lane" + idx(j, i) + idx(w));
      net.add_chute(lane.out, lane.seg, parts.root);
      for (std::size_t u = 0; u < n; ++u) {
        const SegId leaf = parts.leaves[u];
        const SegId P = r->locks[next][u].seg;
        net.add_chute(spurs[u], leaf, P, false);
        net.require_above(leaf, P);
        net.add_interior(r->merges[j][w], returns[u]);
        net.add_chute(returns[u], leaf, r->merges[j][w]);
      }
      r->lanes[j].emplace(key, std::move(parts));
    }
  }

  // The last element enters the goal straight from its output lane, skipping
  // the lock selector: its final trip cannot release element 0 again.
  std::vector<std::pair<ColRef, SegId>> last_feeds;
  std::vector<std::size_t> last_fns;
  {
    const std::size_t j = n - 1;
    const auto& outputs = j == 0 ? r->selector.outputs : r->enforcers[j].outputs;
    for (const auto& [key, lane] : outputs)
      if (key.second == instance.target[j]) {
        last_feeds.emplace_back(r->seg(lane.seg).east, lane.seg);
        last_fns.push_back(key.first);
        goal_cols.push_back(r->seg(lane.seg).east);
      }
  }
  r->goal = gadgets::add_goal(net, n, goal_cols, "goal");
  for (std::size_t j = 0; j + 1 < n; ++j)
    net.add_chute(goal_cols[j], r->merges[j][instance.target[j]], r->goal.seg);
  for (auto [col, seg] : last_feeds) net.add_chute(col, seg, r->goal.seg);

  r->layout = std::make_unique<track::Layout>(net);

  CompiledInstance out;
  out.instance = instance;
  out.mode = mode;
  out.board = r->layout->board();

  std::vector<Tile> tiles;
  tiles.push_back({tile_label(0), r->cell(r->locks[0][0].seg, {r->locks[0][0].slots[0], 0})});
  for (std::size_t j = 1; j < n; ++j) tiles.push_back({tile_label(j), r->layout->west(r->locks[j][j].seg)});
  out.initial = Configuration(out.board, tiles);

  if (mode == Mode::Relocation) {
    out.goal = RelocationGoal{tile_label(n - 1), r->pocket(n - 1)};
  } else {
    ReconfigurationGoal g;
    for (std::size_t j = 0; j < n; ++j) g.tiles.push_back({tile_label(j), r->pocket(j)});
    out.goal = g;
  }

  out.counts = {1, n - 1, n * n, F * n, 1};

  // port map
  auto& pm = out.port_map;
  {
    std::vector<SegId> segs = r->selector.inputs;
    for (const auto& st : r->selector.stairs) segs.insert(segs.end(), st.begin(), st.end());
    for (const auto& [k, lane] : r->selector.outputs) segs.push_back(lane.seg);
    PlacedGadget g = place(*r, "selector", GadgetKind::FunctionSelector, segs);
    for (std::size_t v = 0; v < n; ++v) g.ports.push_back({"in" + idx(v), r->layout->east(r->selector.inputs[v])});
    for (const auto& [k, lane] : r->selector.outputs)
      g.ports.push_back({"out" + idx(k.first, k.second), r->layout->west(lane.seg)});
    pm.push_back(std::move(g));
  }
  for (std::size_t j = 1; j < n; ++j) {
    const auto& E = r->enforcers[j];
    std::vector<SegId> segs;
    for (const auto& [k, s] : E.inputs) segs.push_back(s);
    for (const auto& [k, lane] : E.outputs) segs.push_back(lane.seg);
    PlacedGadget g = place(*r, "enforcer" + idx(j), GadgetKind::FunctionEnforcer, segs);
    for (const auto& [k, s] : E.inputs) g.ports.push_back({"in" + idx(k.first, k.second), r->layout->east(s)});
    for (const auto& [k, lane] : E.outputs)
      g.ports.push_back({"out" + idx(k.first, k.second), r->layout->west(lane.seg)});
    pm.push_back(std::move(g));
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t v = 0; v < n; ++v) {
      const auto& P = r->locks[j][v];
      PlacedGadget g = place(*r, "lock" + idx(j, v), GadgetKind::Lock, {P.seg, r->merges[j][v]});
      g.ports.push_back({"home", r->layout->west(P.seg)});
      g.ports.push_back({"return", r->cell(P.seg, {P.ret, 0})});
      for (std::size_t q = 0; q < P.slots.size(); ++q) {
        const std::string s = idx(q / n, q % n);
        g.ports.push_back({"exit" + s, r->cell(P.seg, {P.slots[q], 0})});
        g.ports.push_back({"spur" + s, r->cell(P.seg, {P.slots[q], 1})});
      }
      pm.push_back(std::move(g));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < F; ++i) {
      std::vector<SegId> segs;
      std::vector<PlacedPort> ports;
      for (const auto& [k, lane] : r->lanes[j]) {
        if (k.first != i) continue;
        segs.insert(segs.end(), lane.nodes.begin(), lane.nodes.end());
        const std::size_t w = k.second;
        ports.push_back({"in" + idx(w), r->cell(lane.root, r->output(j, i, k.second).out)});
        for (std::size_t u = 0; u < n; ++u) {
          ports.push_back({"lock" + idx(w, u), r->layout->west(lane.leaves[u])});
          ports.push_back({"return" + idx(w, u), r->layout->east(lane.leaves[u])});
        }
      }
      PlacedGadget g = place(*r, "lock-selector" + idx(j, i), GadgetKind::LockSelector, segs);
      g.ports = std::move(ports);
      pm.push_back(std::move(g));
    }
  }
  {
    PlacedGadget g = place(*r, "goal",
                           mode == Mode::Relocation ? GadgetKind::RelocationGoal : GadgetKind::ReconfigurationGoal,
                           {r->goal.seg});
    for (std::size_t k = 0; k < goal_cols.size(); ++k) {
      const std::string name = k + 1 < n ? idx(k) : idx(n - 1, last_fns[k + 1 - n]);
      g.ports.push_back({"feed" + name, r->cell(r->goal.seg, goal_cols[k])});
    }
    for (std::size_t j = 0; j < n; ++j) g.ports.push_back({"pocket" + idx(j), r->pocket(j)});
    pm.push_back(std::move(g));
  }

  out.routing = r;
  return out;
}

RoundPlan plan_rounds(const ffg::FfgInstance& instance, const ffg::CompositionWitness& witness) {
  if (ffg::evaluate(instance, witness) != instance.target)
    throw ValidationError("witness does not evaluate to the target");
  RoundPlan plan;
  const std::size_t k = witness.indices.size();
  for (std::size_t r = 0; r < k; ++r) {
    std::vector<PlanStep> steps;
    const std::size_t i = witness.indices[r];
    for (std::size_t j = 0; j < instance.n; ++j) {
      steps.push_back({j, j == 0 ? 'S' : 'N', i});
      // the last element's final trip goes to the goal without unlocking
      if (!(r + 1 == k && j + 1 == instance.n)) steps.push_back({j, 'U', i});
      steps.push_back({j, r + 1 == k ? 'G' : 'R', i});
    }
    plan.rounds.push_back(std::move(steps));
  }
  return plan;
}

std::string to_string(const RoundPlan& plan) {
  std::ostringstream os;
  for (std::size_t r = 0; r < plan.rounds.size(); ++r) {
    os << "round " << r + 1 << ':';
    for (const auto& s : plan.rounds[r]) os << ' ' << s.step << '(' << tile_label(s.element) << ')';
    os << '\n';
  }
  return os.str();
}

namespace {

// Replays moves on the laid-out board as they are emitted, so every hop is
// checked against the geometry it was derived from.
class Walker {
 public:
  Walker(const CompiledInstance& c) : board_(c.board) {
    for (const auto& t : c.initial.tiles()) pos_.push_back(t.position);
  }

  void go(std::size_t j, Coord to) {
    const Coord from = pos_[j];
    if (from == to || (from.x != to.x && from.y != to.y))
      throw Error("emit: no straight hop for " + tile_label(j));
    Direction d = to.x > from.x ? Direction::E : to.x < from.x ? Direction::W : to.y > from.y ? Direction::N : Direction::S;
    std::vector<Coord> others;
    for (std::size_t k = 0; k < pos_.size(); ++k)
      if (k != j) others.push_back(pos_[k]);
    const Coord got = slide(board_, from, d, others);
    if (got != to)
      throw Error("emit: " + tile_label(j) + " " + to_char(d) + " from (" + std::to_string(from.x) + "," +
                  std::to_string(from.y) + ") stops at (" + std::to_string(got.x) + "," + std::to_string(got.y) +
                  "), expected (" + std::to_string(to.x) + "," + std::to_string(to.y) + ")");
    pos_[j] = to;
    seq_.push_back({d, tile_label(j)});
  }

  TiltSequence take() { return std::move(seq_); }

 private:
  const Board& board_;
  std::vector<Coord> pos_;
  TiltSequence seq_;
};

}  // namespace

TiltSequence emit_witness(const ffg::FfgInstance& instance, const ffg::CompositionWitness& witness,
                          const CompiledInstance& compiled) {
  if (ffg::evaluate(instance, witness) != instance.target)
    throw ValidationError("witness does not evaluate to the target");
  if (!(compiled.instance.n == instance.n && compiled.instance.generators == instance.generators &&
        compiled.instance.target == instance.target))
    throw ValidationError("compiled instance does not match the FFG instance");
  const std::size_t n = instance.n;
  if (n == 1 && witness.indices.size() > 1)
    throw ValidationError("a one-element domain cannot chain rounds; use a single-generator witness");

  const Routing& R = *compiled.routing;
  const auto& L = *R.layout;
  Walker walk(compiled);

  std::vector<Element> vals(n);
  for (std::size_t j = 0; j < n; ++j) vals[j] = static_cast<Element>(j);
  std::vector<std::size_t> slot(n, 0);

  const std::size_t k = witness.indices.size();
  for (std::size_t round = 0; round < k; ++round) {
    const std::size_t g = witness.indices[round];
    const bool final = round + 1 == k;
    for (std::size_t j = 0; j < n; ++j) {
      const Element v = vals[j];
      const Element w = instance.generators[g][v];
      const ColRef exit{R.locks[j][v].slots[slot[j]], 0};

      // S or N: through the selector / enforcer to output lane (g, w)
      const gadgets::OutputLane& out = R.output(j, g, w);
      if (j == 0) {
        const SegId in = R.selector.inputs[v];
        walk.go(j, R.cell(in, exit));
        walk.go(j, L.east(in));
        const auto& stairs = R.selector.stairs[v];
        walk.go(j, R.cell(stairs[0], R.seg(in).east));
        for (std::size_t s = 0; s < g; ++s) {
          walk.go(j, L.east(stairs[s]));
          walk.go(j, R.cell(stairs[s + 1], R.seg(stairs[s]).east));
        }
        const SegId st = stairs[g];
        walk.go(j, L.west(st));
        walk.go(j, R.cell(out.seg, R.seg(st).west));
      } else {
        const SegId in = R.enforcers[j].inputs.at({g, v});
        walk.go(j, R.cell(in, exit));
        walk.go(j, L.east(in));
        walk.go(j, R.cell(out.seg, R.seg(in).east));
      }
      if (final && j + 1 == n) {
        // G straight from the output lane
        walk.go(j, L.east(out.seg));
        walk.go(j, R.cell(R.goal.seg, R.seg(out.seg).east));
        walk.go(j, R.pocket(j));
        vals[j] = w;
        continue;
      }
      walk.go(j, L.west(out.seg));

      // U: down the lock-selector tree to the next element's current lock
      const gadgets::LaneParts& lane = R.lanes[j].at({g, w});
      walk.go(j, R.cell(lane.root, out.out));
      const std::size_t next = (j + 1) % n;
      const Element u = vals[next];
      SegId cur = lane.root;
      for (int bit : gadgets::lock_selector_bits(n, u)) {
        const ColRef fork = R.seg(cur).west;
        SegId child = -1;
        for (const auto& c : R.net.chutes()) {
          if (c.from != cur || !(c.col == fork)) continue;
          const bool up = L.row(c.to) > L.row(cur);
          if (up == (bit == 0)) child = c.to;
        }
        if (child < 0) throw Error("emit: lock selector branch missing");
        walk.go(j, L.west(cur));
        walk.go(j, R.cell(child, fork));
        cur = child;
      }
      const SegId leaf = lane.leaves[u];
      {
        const auto& P = R.locks[next][u];
        walk.go(j, L.west(leaf));
        walk.go(j, R.cell(P.seg, R.seg(leaf).west));
        slot[next] = R.slot(g, w);
        walk.go(next, R.cell(P.seg, {P.slots[slot[next]], 0}));
        walk.go(j, L.west(leaf));
      }
      walk.go(j, L.east(leaf));

      // R or G
      const SegId m = R.merges[j][w];
      walk.go(j, R.cell(m, R.seg(leaf).east));
      if (final) {
        walk.go(j, L.east(m));
        walk.go(j, R.cell(R.goal.seg, R.seg(m).east));
        walk.go(j, R.pocket(j));
      } else {
        const auto& P = R.locks[j][w];
        walk.go(j, L.west(m));
        walk.go(j, R.cell(P.seg, {P.ret, 0}));
        walk.go(j, L.west(P.seg));
      }
      vals[j] = w;
    }
  }
  return walk.take();
}

std::string layout_report(const CompiledInstance& c) {
  std::ostringstream os;
  os << "board " << c.board.width() << 'x' << c.board.height() << " area " << c.board.area() << " open "
     << c.board.open_count() << '\n';
  os << "mode " << to_string(c.mode) << " n " << c.instance.n << " functions " << c.instance.generators.size()
     << '\n';
  os << "gadgets: selector " << c.counts.selectors << ", enforcer " << c.counts.enforcers << ", lock "
     << c.counts.locks << ", lock-selector " << c.counts.lock_selectors << ", goal " << c.counts.goals << '\n';
  os << "tiles:";
  for (const auto& t : c.initial.tiles()) os << ' ' << t.label << '(' << t.position.x << ',' << t.position.y << ')';
  os << '\n';
  for (const auto& g : c.port_map) {
    os << g.name << ' ' << gadgets::to_string(g.kind) << " box (" << g.lo.x << ',' << g.lo.y << ")-(" << g.hi.x << ','
       << g.hi.y << ")\n";
    for (const auto& p : g.ports) os << "  " << p.name << " (" << p.cell.x << ',' << p.cell.y << ")\n";
  }
  return os.str();
}

}  // namespace ricochet::reduction
