#pragma once

// Exhaustive checks of gadget contracts and of the reduction end to end.
// Nothing here samples: every report comes from a closed reachable set, and
// a set that hits its cap is reported as a violation ("inconclusive"), so
// an unfinished check can never read as a pass.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ricochet/ffg.hpp"
#include "ricochet/gadgets.hpp"
#include "ricochet/reduction.hpp"
#include "ricochet/solver.hpp"

namespace ricochet::verify {

struct Violation {
  std::string entry;      // input port (or scenario) the search started from
  TiltSequence sequence;  // moves reaching the offending state
  std::string exit;       // offending port, or a short tag
};

struct GadgetReport {
  gadgets::GadgetKind kind = gadgets::GadgetKind::Lock;
  std::size_t entries_tested = 0;
  std::size_t legal_traversals = 0;
  std::size_t states = 0;
  std::size_t stuck_states = 0;
  std::vector<Violation> violations;

  bool pass() const noexcept { return violations.empty(); }
};

// input port name -> output port names it must reach (and nothing else)
using Relation = std::map<std::string, std::set<std::string>>;

// Expected relation for a probe gadget: selector in[a] -> out[i,f_i(a)] for
// all i; enforcer in[i,a] -> out[i,f_i(a)]; lock selector in -> every
// lock[u] and return; goals -> nothing.  Locks are checked by
// verify_lock_lemmas instead.
Relation expected_relation(const gadgets::Gadget& g, const std::vector<ffg::FunctionTable>& gens = {});

GadgetReport verify_gadget_io(const gadgets::Gadget& g, const Relation& expected,
                              std::size_t max_states = 1'000'000);

// Key rule: the unlocking tile leaves only through the spur it came in by.
// Lock rule: the locked tile leaves only through the exit paired with that
// spur, and never on its own.
GadgetReport verify_lock_lemmas(const gadgets::Gadget& lock, std::size_t max_states = 1'000'000);

// Goal pockets: parked tiles can always get back to the goal row, and with every feed loaded the
// pockets fill strictly from the home cell eastward.
GadgetReport verify_goal(const gadgets::Gadget& goal, std::size_t max_states = 1'000'000);

// Default check for a gadget kind (the three above).
GadgetReport verify(const gadgets::Gadget& g, const std::vector<ffg::FunctionTable>& gens = {},
                    std::size_t max_states = 1'000'000);

struct Mutation {
  Coord cell;  // wall cell opened
  GadgetReport report;
};

// Opens interior wall cells next to open cells one at a time, in row-major
// order, and returns the first mutation whose check reports a violation.
std::optional<Mutation> find_violating_mutation(const gadgets::Gadget& g,
                                                const std::function<GadgetReport(const gadgets::Gadget&)>& check);

enum class BoardVerdict { Yes, No, Inconclusive };
const char* to_string(BoardVerdict v);

struct CrosscheckReport {
  ffg::FfgInstance instance;
  reduction::Mode mode = reduction::Mode::Relocation;
  bool oracle = false;
  std::optional<ffg::CompositionWitness> witness;
  BoardVerdict board = BoardVerdict::Inconclusive;
  bool agree = false;
  SearchStats stats;
  std::size_t sequence_length = 0;
  int width = 0, height = 0;
};

CrosscheckReport crosscheck(const ffg::FfgInstance& instance, reduction::Mode mode, const SearchLimits& limits = {});

}  // namespace ricochet::verify
