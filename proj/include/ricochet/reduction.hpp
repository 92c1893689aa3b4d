#pragma once

// FFG -> tilt reduction.  Builds one track network holding every gadget
// instance, lays it out, and translates composition witnesses into tilt
// sequences by walking the laid-out network.
//
// Element j (0-based) is tile "e<j+1>".  Its value v is encoded by which of
// its N lock gadgets it sits in.  A round applies one generator i to every
// element in order: element 0 picks i in the selector, later elements are
// held to the same i by the lock slot they were released through.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ricochet/ffg.hpp"
#include "ricochet/gadgets.hpp"
#include "ricochet/goal.hpp"
#include "ricochet/tilt.hpp"
#include "ricochet/track.hpp"

namespace ricochet::reduction {

enum class Mode { Relocation, Reconfiguration };

const char* to_string(Mode m);
Mode mode_from_string(const std::string& s);  // throws ValidationError

struct GadgetCounts {
  std::size_t selectors = 0;
  std::size_t enforcers = 0;
  std::size_t locks = 0;
  std::size_t lock_selectors = 0;
  std::size_t goals = 0;
  friend bool operator==(const GadgetCounts&, const GadgetCounts&) = default;
};

struct PlacedPort {
  std::string name;
  Coord cell;
};

struct PlacedGadget {
  std::string name;
  gadgets::GadgetKind kind;
  Coord lo, hi;  // bounding box of its corridors
  std::vector<PlacedPort> ports;
};

// Network handles needed to route tiles; opaque to most callers.
struct Routing;

struct CompiledInstance {
  ffg::FfgInstance instance;
  Mode mode = Mode::Relocation;
  Board board;
  Configuration initial;
  Goal goal;
  std::vector<PlacedGadget> port_map;
  GadgetCounts counts;
  std::shared_ptr<const Routing> routing;
};

CompiledInstance compile(const ffg::FfgInstance& instance, Mode mode);

std::string tile_label(std::size_t element);  // 0 -> "e1"

struct PlanStep {
  std::size_t element = 0;
  char step = 'S';  // S select, N enforce, U unlock, R return, G goal
  std::size_t function = 0;
};

// Abstract per-round plan: rounds[r] lists the steps of round r.
struct RoundPlan {
  std::vector<std::vector<PlanStep>> rounds;
};

RoundPlan plan_rounds(const ffg::FfgInstance& instance, const ffg::CompositionWitness& witness);
std::string to_string(const RoundPlan& plan);

// Throws ValidationError if the witness does not evaluate to the target, or
// if a one-element domain is given a multi-round witness.
TiltSequence emit_witness(const ffg::FfgInstance& instance, const ffg::CompositionWitness& witness,
                          const CompiledInstance& compiled);

std::string layout_report(const CompiledInstance& compiled);

}  // namespace ricochet::reduction
