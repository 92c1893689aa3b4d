#pragma once

// The six gadget families of the reduction, as track-network fragments.
//
// Each family has two faces:
//   * an `add_*` function that emits the fragment into a larger Network
//     (used by the reduction compiler), and
//   * a `build_*` function that embeds the fragment alone on a probe board
//     with every port ending in a one-cell terminal, for exhaustive checks.
//
// Lock gadget geometry (one segment, west to east):
//
//   home  ret   e0 b0   e1 b1  ...  east
//    #.....v.....^v......^v..........#
//
// The locked tile rests at `home`.  A chute from the return funnel lands at
// `ret`.  Slot q owns an adjacent column pair: `e_q` is an exit chute going
// down, `b_q` the spur an unlocking tile drops in through.  With the
// unlocking tile parked on b_q, the locked tile sliding east stops on e_q
// and can drop out; without it, it slides past every exit to `east`.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ricochet/ffg.hpp"
#include "ricochet/tilt.hpp"
#include "ricochet/track.hpp"

namespace ricochet::gadgets {

enum class GadgetKind {
  FunctionSelector,
  FunctionEnforcer,
  LockSelector,
  Lock,
  RelocationGoal,
  ReconfigurationGoal
};

const char* to_string(GadgetKind k);

enum class PortKind { Input, Output };

struct Port {
  std::string name;
  PortKind kind = PortKind::Input;
  std::string role;                       // e.g. "in", "out", "spur", "exit", "return"
  std::optional<ffg::Element> value;      // domain element carried through the port
  std::optional<std::size_t> function;    // generator index, 0-based
  Coord cell;                             // terminal cell on the probe board
  Coord entry;                            // first cell inside the gadget
  Direction heading = Direction::S;       // direction of legal traversal at `cell`
};

struct Gadget {
  GadgetKind kind = GadgetKind::Lock;
  Board board;  // probe board: the footprint plus port terminals
  std::vector<Port> ports;
  std::vector<Coord> resident_cells;  // cells where a tile may legally rest

  const Port& port(const std::string& name) const;  // throws Error
  std::vector<const Port*> ports_with_role(const std::string& role) const;
};

// ---------------------------------------------------------------------------
// Canonical traversal sequences.

// Names: SF (needs i), EF, T0, T1, RF, G, P, U, R.  Throws ValidationError
// on an unknown name or a missing/extra index.
std::vector<Direction> canonical_directions(const std::string& name, std::optional<std::size_t> i = {});
TiltSequence canonical_sequence(const std::string& name, std::optional<std::size_t> i,
                                const std::string& label);

// ---------------------------------------------------------------------------
// Network fragments.

struct LockParts {
  track::SegId seg = -1;
  track::ColId home = -1, ret = -1, east = -1;
  std::vector<track::ColId> slots;  // column pairs; sub 0 = exit, sub 1 = spur
};

LockParts add_lock(track::Network& net, std::size_t slots, const std::string& name);

struct LaneParts {
  track::SegId root = -1;
  std::vector<track::SegId> leaves;  // index = target lock value
  std::vector<track::SegId> nodes;   // every segment in the tree, root first
};

// Binary routing tree over n leaves, MSB-first; bit 0 climbs (N), bit 1
// drops (S).  Leaf u's west end is spur_cols[u], its east end
// return_cols[u].  `entry` is added to the root's interior.
LaneParts add_lock_selector(track::Network& net, std::size_t n, track::ColRef entry,
                            const std::vector<track::ColRef>& spur_cols,
                            const std::vector<track::ColRef>& return_cols, const std::string& name);

std::size_t lock_selector_depth(std::size_t n);

// Branch bits (MSB first, 0 = north) that descend to `leaf`.
std::vector<int> lock_selector_bits(std::size_t n, std::size_t leaf);

struct OutputLane {
  track::SegId seg = -1;
  track::ColRef out;  // west end; chute onward from here
};

struct SelectorParts {
  std::vector<track::SegId> inputs;               // [value]
  std::vector<std::vector<track::SegId>> stairs;  // [value][function]
  std::map<std::pair<std::size_t, ffg::Element>, OutputLane> outputs;  // (function, value)
};

SelectorParts add_function_selector(track::Network& net, const std::vector<ffg::FunctionTable>& gens,
                                    const std::string& name);

struct EnforcerParts {
  std::map<std::pair<std::size_t, ffg::Element>, track::SegId> inputs;  // (function, value)
  std::map<std::pair<std::size_t, ffg::Element>, OutputLane> outputs;
};

EnforcerParts add_function_enforcer(track::Network& net, const std::vector<ffg::FunctionTable>& gens,
                                    const std::string& name);

struct GoalParts {
  track::SegId seg = -1;
  track::ColId home = -1;
};

// Goal row: pockets fill westward from `home`; chutes land on
// `landing_cols`, kept at least n + 2 columns east of home.
GoalParts add_goal(track::Network& net, std::size_t n, const std::vector<track::ColRef>& landing_cols,
                   const std::string& name);

// ---------------------------------------------------------------------------
// Probe-board gadgets.

Gadget build_function_selector(const std::vector<ffg::FunctionTable>& gens);
Gadget build_function_enforcer(const std::vector<ffg::FunctionTable>& gens);
Gadget build_lock_selector(std::size_t n);
// Lock with `functions` x `values` unlock slots (slot q = i * values + w).
Gadget build_lock(std::size_t functions = 1, std::size_t values = 1);
Gadget build_relocation_goal(std::size_t n);
Gadget build_reconfiguration_goal(std::size_t n);

// ASCII footprint with port names listed underneath.
std::string debug_dump(const Gadget& g);

}  // namespace ricochet::gadgets
