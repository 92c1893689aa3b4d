#include "ricochet/gadgets.hpp"

#include <algorithm>
#include <sstream>

namespace ricochet::gadgets {

using track::ColId;
using track::ColRef;
using track::Layout;
using track::Network;
using track::SegId;

const char* to_string(GadgetKind k) {
  switch (k) {
    case GadgetKind::FunctionSelector: return "function-selector";
    case GadgetKind::FunctionEnforcer: return "function-enforcer";
    case GadgetKind::LockSelector: return "lock-selector";
    case GadgetKind::Lock: return "lock";
    case GadgetKind::RelocationGoal: return "relocation-goal";
    case GadgetKind::ReconfigurationGoal: return "reconfiguration-goal";
  }
  return "?";
}

const Port& Gadget::port(const std::string& name) const {
  for (const auto& p : ports)
    if (p.name == name) return p;
  throw Error("gadget " + std::string(to_string(kind)) + " has no port '" + name + "'");
}

std::vector<const Port*> Gadget::ports_with_role(const std::string& role) const {
  std::vector<const Port*> out;
  for (const auto& p : ports)
    if (p.role == role) out.push_back(&p);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Direction> canonical_directions(const std::string& name, std::optional<std::size_t> i) {
  using D = Direction;
  if (name == "SF") {
    if (!i) throw ValidationError("sequence SF needs an index");
    std::vector<D> out{D::S};
    for (std::size_t k = 0; k < *i; ++k) {
      out.push_back(D::E);
      out.push_back(D::S);
    }
    out.insert(out.end(), {D::W, D::S, D::W});
    return out;
  }
  if (i) throw ValidationError("sequence " + name + " takes no index");
  if (name == "EF") return {D::S, D::E};
  if (name == "T0") return {D::W, D::N};
  if (name == "T1") return {D::W, D::S};
  if (name == "RF") return {D::N, D::E};
  if (name == "G") return {D::S, D::E};
  if (name == "P") return {D::W, D::S};
  if (name == "U") return {D::W, D::N};
  if (name == "R") return {D::N, D::E};
  throw ValidationError("unknown sequence name '" + name + "'");
}

TiltSequence canonical_sequence(const std::string& name, std::optional<std::size_t> i,
                                const std::string& label) {
  TiltSequence seq;
  for (Direction d : canonical_directions(name, i)) seq.push_back({d, label});
  return seq;
}

// ---------------------------------------------------------------------------
// Fragments.

LockParts add_lock(Network& net, std::size_t slots, const std::string& name) {
  LockParts p;
  p.seg = net.segment(name);
  p.home = net.column();
  p.ret = net.column();
  net.add_interior(p.seg, {p.ret, 0});
  // Spacer columns keep every pair at least three cells from its
  // neighbours, so two tiles leaning on each other can never come to rest
  // on a chute column they did not arrive through.
  auto spacer = [&](ColId after) {
    ColId sp = net.column();
    net.require_left(after, sp);
    return sp;
  };
  ColId prev = spacer(p.ret);
  for (std::size_t q = 0; q < slots; ++q) {
    ColId c = net.column_pair();
    net.add_interior(p.seg, {c, 0});
    net.add_interior(p.seg, {c, 1});
    net.require_left(prev, c);
    prev = spacer(c);
    p.slots.push_back(c);
  }
  p.east = net.column();
  net.require_left(prev, p.east);
  net.set_ends(p.seg, {p.home, 0}, {p.east, 0});
  return p;
}

std::size_t lock_selector_depth(std::size_t n) {
  std::size_t d = 0;
  while ((std::size_t{1} << d) < n) ++d;
  return d;
}

std::vector<int> lock_selector_bits(std::size_t n, std::size_t leaf) {
  if (leaf >= n) throw ValidationError("lock selector leaf out of range");
  const std::size_t d = lock_selector_depth(n);
  std::vector<int> bits;
  for (std::size_t k = d; k > 0; --k) bits.push_back(static_cast<int>((leaf >> (k - 1)) & 1U));
  return bits;
}

LaneParts add_lock_selector(Network& net, std::size_t n, ColRef entry, const std::vector<ColRef>& spur_cols,
                            const std::vector<ColRef>& return_cols, const std::string& name) {
  if (n == 0) throw ValidationError("lock selector needs n >= 1");
  if (spur_cols.size() != n || return_cols.size() != n)
    throw ValidationError("lock selector: need one spur and one return column per leaf");
  LaneParts out;
  out.leaves.assign(n, -1);
  const std::size_t depth = lock_selector_depth(n);

  // prefix: bits consumed so far; left: levels still to go.
  auto build = [&](auto&& self, std::size_t prefix, std::size_t left, ColRef landing) -> SegId {
    if (left == 0) {
      SegId leaf = net.segment(name + ".leaf" + std::to_string(prefix));
      net.set_ends(leaf, spur_cols[prefix], return_cols[prefix]);
      net.add_interior(leaf, landing);
      out.leaves[prefix] = leaf;
      out.nodes.push_back(leaf);
      return leaf;
    }
    SegId node = net.segment(name + ".node" + std::to_string(depth - left) + "." + std::to_string(prefix));
    out.nodes.push_back(node);
    ColId fork = net.column();
    net.set_ends(node, {fork, 0}, {net.column(), 0});
    net.add_interior(node, landing);
    const std::size_t c0 = prefix * 2, c1 = prefix * 2 + 1;
    const bool has0 = (c0 << (left - 1)) < n;
    const bool has1 = (c1 << (left - 1)) < n;
    // a missing branch leaves a dead stub on its side
    if (has0) {
      SegId up = self(self, c0, left - 1, ColRef{fork, 0});
      net.require_above(up, node);
      net.add_chute({fork, 0}, node, up, !has1);
    }
    if (has1) {
      SegId down = self(self, c1, left - 1, ColRef{fork, 0});
      net.require_above(node, down);
      net.add_chute({fork, 0}, node, down, !has0);
    }
    return node;
  };
  out.root = build(build, 0, depth, entry);
  return out;
}

namespace {

OutputLane& output_lane(Network& net, std::map<std::pair<std::size_t, ffg::Element>, OutputLane>& lanes,
                        std::size_t i, ffg::Element w, const std::string& name) {
  auto it = lanes.find({i, w});
  if (it != lanes.end()) return it->second;
  OutputLane lane;
  lane.seg = net.segment(name + ".out" + std::to_string(i) + "." + std::to_string(w));
  lane.out = {net.column(), 0};
  net.set_ends(lane.seg, lane.out, {net.column(), 0});
  return lanes.emplace(std::make_pair(i, w), lane).first->second;
}

void check_gens(const std::vector<ffg::FunctionTable>& gens) {
  if (gens.empty()) throw ValidationError("gadget needs at least one generator");
  const std::size_t n = gens.front().size();
  if (n == 0) throw ValidationError("gadget needs a nonempty domain");
  for (const auto& g : gens)
    if (g.size() != n) throw ValidationError("generators disagree on domain size");
}

}  // namespace

SelectorParts add_function_selector(Network& net, const std::vector<ffg::FunctionTable>& gens,
                                    const std::string& name) {
  check_gens(gens);
  const std::size_t n = gens.front().size();
  const std::size_t F = gens.size();
  SelectorParts p;
  p.stairs.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    const std::string base = name + ".v" + std::to_string(v);
    SegId in = net.segment(base + ".in");
    ColRef landing{net.column(), 0};
    net.set_ends(in, {net.column(), 0}, landing);
    p.inputs.push_back(in);
    SegId prev = in;
    for (std::size_t k = 0; k < F; ++k) {
      SegId st = net.segment(base + ".stair" + std::to_string(k));
      net.add_interior(st, landing);
      net.add_chute(landing, prev, st);
      net.require_above(prev, st);
      ColRef west{net.column(), 0};
      ColRef east{net.column(), 0};
      net.set_ends(st, west, east);
      // west end of stair k hands over to function k
      OutputLane& lane = output_lane(net, p.outputs, k, gens[k][v], name);
      net.add_interior(lane.seg, west);
      net.add_chute(west, st, lane.seg);
      net.require_above(st, lane.seg);
      p.stairs[v].push_back(st);
      prev = st;
      landing = east;
    }
  }
  return p;
}

EnforcerParts add_function_enforcer(Network& net, const std::vector<ffg::FunctionTable>& gens,
                                    const std::string& name) {
  check_gens(gens);
  const std::size_t n = gens.front().size();
  EnforcerParts p;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t u = 0; u < n; ++u) {
      SegId in = net.segment(name + ".in" + std::to_string(i) + "." + std::to_string(u));
      ColRef east{net.column(), 0};
      net.set_ends(in, {net.column(), 0}, east);
      OutputLane& lane = output_lane(net, p.outputs, i, gens[i][u], name);
      net.add_interior(lane.seg, east);
      net.add_chute(east, in, lane.seg);
      net.require_above(in, lane.seg);
      p.inputs.emplace(std::make_pair(i, static_cast<ffg::Element>(u)), in);
    }
  }
  return p;
}

GoalParts add_goal(Network& net, std::size_t n, const std::vector<ColRef>& landing_cols, const std::string& name) {
  GoalParts g;
  g.seg = net.segment(name);
  g.home = net.column();
  ColId prev = g.home;
  for (std::size_t k = 0; k < n + 2; ++k) {
    ColId sp = net.column();
    net.require_left(prev, sp);
    prev = sp;
  }
  for (ColRef c : landing_cols) {
    net.add_interior(g.seg, c);
    net.require_left(prev, c.col);
  }
  ColId east = net.column();
  net.require_left(prev, east);
  net.set_ends(g.seg, {g.home, 0}, {east, 0});
  return g;
}

// ---------------------------------------------------------------------------
// Probe boards.

namespace {

struct PortSpec {
  std::string name;
  PortKind kind;
  std::string role;
  std::optional<ffg::Element> value;
  std::optional<std::size_t> function;
  SegId terminal;
  SegId inner;
  ColRef col;
};

class Probe {
 public:
  Network net;

  // Terminal above `inner`, dropping onto `col` inside it.
  void input(PortSpec spec, SegId inner, ColRef col) {
    spec.kind = PortKind::Input;
    spec.terminal = net.terminal(spec.name, col);
    spec.inner = inner;
    spec.col = col;
    net.add_chute(col, spec.terminal, inner, false);
    top_.push_back(spec.terminal);
    specs_.push_back(std::move(spec));
  }
  // Terminal below the end `col` of `inner`.
  void output(PortSpec spec, SegId inner, ColRef col, bool stub) {
    spec.kind = PortKind::Output;
    spec.terminal = net.terminal(spec.name, col);
    spec.inner = inner;
    spec.col = col;
    net.add_chute(col, inner, spec.terminal, stub);
    bottom_.push_back(spec.terminal);
    specs_.push_back(std::move(spec));
  }

  Gadget finish(GadgetKind kind, const std::vector<std::pair<SegId, ColRef>>& resident) {
    // ports sit on the outermost rows
    for (SegId s = 0; s < static_cast<SegId>(net.segment_count()); ++s) {
      if (net.segments()[static_cast<std::size_t>(s)].terminal) continue;
      for (SegId t : top_) net.require_above(t, s);
      for (SegId b : bottom_) net.require_above(s, b);
    }
    Layout layout(net);
    Gadget g;
    g.kind = kind;
    g.board = layout.board();
    for (const auto& s : specs_) {
      Port p;
      p.name = s.name;
      p.kind = s.kind;
      p.role = s.role;
      p.value = s.value;
      p.function = s.function;
      p.cell = layout.cell(s.terminal, s.col);
      p.entry = layout.cell(s.inner, s.col);
      const Coord from = s.kind == PortKind::Input ? p.cell : p.entry;
      const Coord to = s.kind == PortKind::Input ? p.entry : p.cell;
      p.heading = to.y < from.y ? Direction::S : Direction::N;
      g.ports.push_back(std::move(p));
    }
    for (auto [seg, col] : resident) g.resident_cells.push_back(layout.cell(seg, col));
    return g;
  }

  // Segment ends of every non-terminal segment, for routing gadgets.
  std::vector<std::pair<SegId, ColRef>> all_ends() const {
    std::vector<std::pair<SegId, ColRef>> out;
    const auto& segs = net.segments();
    for (std::size_t s = 0; s < segs.size(); ++s) {
      if (segs[s].terminal) continue;
      out.emplace_back(static_cast<SegId>(s), segs[s].west);
      out.emplace_back(static_cast<SegId>(s), segs[s].east);
    }
    return out;
  }

 private:
  std::vector<PortSpec> specs_;
  std::vector<SegId> top_, bottom_;
};

std::string vw(std::size_t i, std::size_t w) { return std::to_string(i) + "," + std::to_string(w); }

}  // namespace

Gadget build_function_selector(const std::vector<ffg::FunctionTable>& gens) {
  Probe pr;
  SelectorParts p = add_function_selector(pr.net, gens, "sel");
  for (std::size_t v = 0; v < p.inputs.size(); ++v) {
    ColRef landing{pr.net.column(), 0};
    pr.net.add_interior(p.inputs[v], landing);
    pr.input({"in[" + std::to_string(v) + "]", {}, "in", static_cast<ffg::Element>(v), {}, -1, -1, {}},
             p.inputs[v], landing);
  }
  for (auto& [key, lane] : p.outputs)
    pr.output({"out[" + vw(key.first, key.second) + "]", {}, "out", key.second, key.first, -1, -1, {}}, lane.seg,
              lane.out, true);
  return pr.finish(GadgetKind::FunctionSelector, pr.all_ends());
}

Gadget build_function_enforcer(const std::vector<ffg::FunctionTable>& gens) {
  Probe pr;
  EnforcerParts p = add_function_enforcer(pr.net, gens, "enf");
  for (auto& [key, seg] : p.inputs) {
    ColRef landing{pr.net.column(), 0};
    pr.net.add_interior(seg, landing);
    pr.input({"in[" + vw(key.first, key.second) + "]", {}, "in", key.second, key.first, -1, -1, {}}, seg, landing);
  }
  for (auto& [key, lane] : p.outputs)
    pr.output({"out[" + vw(key.first, key.second) + "]", {}, "out", key.second, key.first, -1, -1, {}}, lane.seg,
              lane.out, true);
  return pr.finish(GadgetKind::FunctionEnforcer, pr.all_ends());
}

Gadget build_lock_selector(std::size_t n) {
  if (n == 0) throw ValidationError("lock selector needs n >= 1");
  Probe pr;
  Network& net = pr.net;
  ColRef entry{net.column(), 0};
  std::vector<ColRef> spurs, returns;
  for (std::size_t u = 0; u < n; ++u) {
    spurs.push_back({net.column(), 0});
    returns.push_back({net.column(), 0});
  }
  LaneParts lane = add_lock_selector(net, n, entry, spurs, returns, "ls");
  // the return funnel every leaf drains into
  SegId merge = net.segment("ls.return");
  ColRef merge_out{net.column(), 0};
  net.set_ends(merge, merge_out, {net.column(), 0});
  for (std::size_t u = 0; u < n; ++u) {
    net.add_interior(merge, returns[u]);
    net.add_chute(returns[u], lane.leaves[u], merge);
    net.require_above(lane.leaves[u], merge);
  }
  pr.input({"in", {}, "in", {}, {}, -1, -1, {}}, lane.root, entry);
  for (std::size_t u = 0; u < n; ++u)
    pr.output({"lock[" + std::to_string(u) + "]", {}, "lock", static_cast<ffg::Element>(u), {}, -1, -1, {}},
              lane.leaves[u], spurs[u], false);
  pr.output({"return", {}, "return", {}, {}, -1, -1, {}}, merge, merge_out, true);
  return pr.finish(GadgetKind::LockSelector, pr.all_ends());
}

Gadget build_lock(std::size_t functions, std::size_t values) {
  if (functions == 0 || values == 0) throw ValidationError("lock needs at least one slot");
  Probe pr;
  LockParts p = add_lock(pr.net, functions * values, "lock");
  for (std::size_t q = 0; q < p.slots.size(); ++q) {
    const std::size_t i = q / values;
    const auto w = static_cast<ffg::Element>(q % values);
    pr.input({"spur[" + vw(i, w) + "]", {}, "spur", w, i, -1, -1, {}}, p.seg, {p.slots[q], 1});
  }
  pr.input({"return", {}, "return", {}, {}, -1, -1, {}}, p.seg, {p.ret, 0});
  for (std::size_t q = 0; q < p.slots.size(); ++q) {
    const std::size_t i = q / values;
    const auto w = static_cast<ffg::Element>(q % values);
    pr.output({"exit[" + vw(i, w) + "]", {}, "exit", w, i, -1, -1, {}}, p.seg, {p.slots[q], 0}, false);
  }
  return pr.finish(GadgetKind::Lock, {{p.seg, {p.home, 0}}});
}

namespace {

Gadget build_goal(std::size_t n, bool reconfiguration) {
  if (n == 0) throw ValidationError("goal needs n >= 1");
  Probe pr;
  std::vector<ColRef> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back({pr.net.column(), 0});
  GoalParts g = add_goal(pr.net, n, cols, "goal");
  for (std::size_t j = 0; j < n; ++j)
    pr.input({"feed[" + std::to_string(j) + "]", {}, "feed", static_cast<ffg::Element>(j), {}, -1, -1, {}}, g.seg,
             cols[j]);
  Gadget out = pr.finish(reconfiguration ? GadgetKind::ReconfigurationGoal : GadgetKind::RelocationGoal,
                         {{g.seg, {g.home, 0}}});
  // pockets fill eastward from the home cell
  const Coord home = out.resident_cells.front();
  out.resident_cells.clear();
  for (std::size_t j = reconfiguration ? 0 : n - 1; j < n; ++j)
    out.resident_cells.push_back({home.x + static_cast<int>(j), home.y});
  return out;
}

}  // namespace

Gadget build_relocation_goal(std::size_t n) { return build_goal(n, false); }
Gadget build_reconfiguration_goal(std::size_t n) { return build_goal(n, true); }

std::string debug_dump(const Gadget& g) {
  const Board& b = g.board;
  std::vector<std::string> rows(static_cast<std::size_t>(b.height()), std::string(static_cast<std::size_t>(b.width()), '#'));
  auto put = [&](Coord c, char ch) {
    rows[static_cast<std::size_t>(b.height() - c.y)][static_cast<std::size_t>(c.x - 1)] = ch;
  };
  for (Coord c : b.open_cells()) put(c, '.');
  for (Coord c : g.resident_cells) put(c, 'o');
  for (const auto& p : g.ports) put(p.cell, p.kind == PortKind::Input ? 'i' : 'x');
  std::ostringstream os;
  os << to_string(g.kind) << ' ' << b.width() << 'x' << b.height() << '\n';
  for (const auto& r : rows) os << r << '\n';
  for (const auto& p : g.ports) {
    os << (p.kind == PortKind::Input ? "  in  " : "  out ") << p.name << " (" << p.cell.x << ',' << p.cell.y
       << ") entry (" << p.entry.x << ',' << p.entry.y << ") heading " << to_char(p.heading) << '\n';
  }
  return os.str();
}

}  // namespace ricochet::gadgets
