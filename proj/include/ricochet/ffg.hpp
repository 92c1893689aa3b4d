#pragma once

// Finite function generation: is a target map a composition of generators?
//
// Elements are 0-indexed.  Compositions are evaluated left to right: the
// first listed generator is applied first.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ricochet/tilt.hpp"

namespace ricochet::ffg {

using Element = std::uint32_t;

class FunctionTable {
 public:
  FunctionTable() = default;
  explicit FunctionTable(std::vector<Element> table);  // throws ValidationError if not total

  static FunctionTable identity(std::size_t n);
  static FunctionTable constant(std::size_t n, Element value);

  std::size_t size() const noexcept { return table_.size(); }
  Element operator[](std::size_t x) const noexcept { return table_[x]; }
  const std::vector<Element>& table() const noexcept { return table_; }

  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;
  friend auto operator<=>(const FunctionTable&, const FunctionTable&) = default;

 private:
  std::vector<Element> table_;
};

Element apply(const FunctionTable& f, Element x);  // throws ValidationError when x >= n

// result[x] = then[first[x]]
FunctionTable compose(const FunctionTable& first, const FunctionTable& then);

struct FfgInstance {
  std::size_t n = 0;
  std::vector<FunctionTable> generators;
  FunctionTable target;

  void validate() const;  // throws ValidationError
};

// Generator indices, 0-based, first applied first.  Nonempty.
struct CompositionWitness {
  std::vector<std::size_t> indices;
  friend bool operator==(const CompositionWitness&, const CompositionWitness&) = default;
};

FunctionTable evaluate(const FfgInstance& instance, const CompositionWitness& witness);

struct Closure {
  std::vector<FunctionTable> elements;  // sorted
  bool exhausted = false;

  bool contains(const FunctionTable& f) const;
};

// Least composition-closed set containing the generators.  Stops with
// `exhausted` set once more than `cap` elements are known.
Closure generated_closure(const std::vector<FunctionTable>& generators,
                          std::size_t cap = 1'000'000);

// Shortest witness, ties broken by generator index order.
std::optional<CompositionWitness> is_generated(const FfgInstance& instance);

// All n^n tables in lexicographic order.
std::vector<FunctionTable> all_tables(std::size_t n);

// Every generator set of size 1..max_generators (distinct tables, as sets)
// paired with every target, in a fixed order.
class InstanceStream {
 public:
  InstanceStream(std::size_t n, std::size_t max_generators);
  std::optional<FfgInstance> next();

 private:
  bool advance_combination();

  std::size_t n_;
  std::size_t max_generators_;
  std::vector<FunctionTable> tables_;
  std::vector<std::size_t> combo_;  // strictly increasing indices into tables_
  std::size_t target_ = 0;
  bool done_ = false;
};

std::vector<FfgInstance> enumerate_instances(std::size_t n, std::size_t max_generators);

// Uniform tables; 1..max_generators generators (repeats allowed), uniform h.
FfgInstance random_instance(std::size_t n, std::size_t max_generators, std::mt19937_64& rng);

}  // namespace ricochet::ffg
