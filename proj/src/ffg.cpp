#include "ricochet/ffg.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace ricochet::ffg {

FunctionTable::FunctionTable(std::vector<Element> table) : table_(std::move(table)) {
  for (std::size_t x = 0; x < table_.size(); ++x) {
    if (table_[x] >= table_.size())
      throw ValidationError("function table entry " + std::to_string(x) + " maps to " +
                            std::to_string(table_[x]) + ", outside 0.." +
                            std::to_string(table_.size() - 1));
  }
}

FunctionTable FunctionTable::identity(std::size_t n) {
  std::vector<Element> t(n);
  for (std::size_t x = 0; x < n; ++x) t[x] = static_cast<Element>(x);
  return FunctionTable(std::move(t));
}

FunctionTable FunctionTable::constant(std::size_t n, Element value) {
  return FunctionTable(std::vector<Element>(n, value));
}

Element apply(const FunctionTable& f, Element x) {
  if (x >= f.size())
    throw ValidationError("element " + std::to_string(x) + " outside domain of size " +
                          std::to_string(f.size()));
  return f[x];
}

FunctionTable compose(const FunctionTable& first, const FunctionTable& then) {
  if (first.size() != then.size()) throw ValidationError("compose: table sizes differ");
  std::vector<Element> out(first.size());
  for (std::size_t x = 0; x < first.size(); ++x) out[x] = then[first[x]];
  return FunctionTable(std::move(out));
}

void FfgInstance::validate() const {
  if (n == 0) throw ValidationError("ffg: domain size must be at least 1");
  if (generators.empty()) throw ValidationError("ffg: need at least one generator");
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i].size() != n)
      throw ValidationError("ffg: generator " + std::to_string(i) + " has length " +
                            std::to_string(generators[i].size()) + ", expected " +
                            std::to_string(n));
  if (target.size() != n) throw ValidationError("ffg: target has wrong length");
}

FunctionTable evaluate(const FfgInstance& instance, const CompositionWitness& witness) {
  if (witness.indices.empty()) throw ValidationError("witness must be nonempty");
  FunctionTable acc = FunctionTable::identity(instance.n);
  for (std::size_t i : witness.indices) {
    if (i >= instance.generators.size())
      throw ValidationError("witness index " + std::to_string(i) + " out of range");
    acc = compose(acc, instance.generators[i]);
  }
  return acc;
}

bool Closure::contains(const FunctionTable& f) const {
  return std::binary_search(elements.begin(), elements.end(), f);
}

Closure generated_closure(const std::vector<FunctionTable>& generators, std::size_t cap) {
  if (generators.empty()) throw ValidationError("closure: need at least one generator");
  std::set<FunctionTable> seen;
  std::deque<FunctionTable> queue;
  Closure out;
  for (const auto& g : generators) {
    if (seen.insert(g).second) queue.push_back(g);
  }
  while (!queue.empty() && !out.exhausted) {
    FunctionTable f = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      FunctionTable h = compose(f, g);
      if (seen.insert(h).second) {
        if (seen.size() > cap) {
          out.exhausted = true;
          break;
        }
        queue.push_back(std::move(h));
      }
    }
  }
  out.elements.assign(seen.begin(), seen.end());
  return out;
}

std::optional<CompositionWitness> is_generated(const FfgInstance& instance) {
  instance.validate();
  // BFS over functions reachable by nonempty compositions; parent links
  // reconstruct the shortest generator word.
  struct Node {
    std::size_t parent;
    std::size_t gen;
  };
  constexpr std::size_t kRoot = static_cast<std::size_t>(-1);
  std::map<FunctionTable, std::size_t> index;
  std::vector<FunctionTable> funcs;
  std::vector<Node> nodes;
  std::deque<std::size_t> queue;

  auto witness_of = [&](std::size_t id) {
    CompositionWitness w;
    for (std::size_t cur = id; cur != kRoot; cur = nodes[cur].parent) w.indices.push_back(nodes[cur].gen);
    std::reverse(w.indices.begin(), w.indices.end());
    return w;
  };

  for (std::size_t g = 0; g < instance.generators.size(); ++g) {
    const auto& f = instance.generators[g];
    if (index.contains(f)) continue;
    index.emplace(f, funcs.size());
    funcs.push_back(f);
    nodes.push_back({kRoot, g});
    if (f == instance.target) return witness_of(funcs.size() - 1);
    queue.push_back(funcs.size() - 1);
  }
  while (!queue.empty()) {
    std::size_t id = queue.front();
    queue.pop_front();
    for (std::size_t g = 0; g < instance.generators.size(); ++g) {
      FunctionTable h = compose(funcs[id], instance.generators[g]);
      if (index.contains(h)) continue;
      index.emplace(h, funcs.size());
      funcs.push_back(h);
      nodes.push_back({id, g});
      if (h == instance.target) return witness_of(funcs.size() - 1);
      queue.push_back(funcs.size() - 1);
    }
  }
  return std::nullopt;
}

std::vector<FunctionTable> all_tables(std::size_t n) {
  std::vector<FunctionTable> out;
  if (n == 0) return out;
  std::vector<Element> t(n, 0);
  for (;;) {
    out.emplace_back(t);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++t[i] < n) break;
      t[i] = 0;
      if (i == 0) return out;
    }
  }
}

InstanceStream::InstanceStream(std::size_t n, std::size_t max_generators)
    : n_(n), max_generators_(max_generators), tables_(all_tables(n)) {
  if (n == 0) throw ValidationError("domain size must be at least 1");
  if (max_generators_ == 0 || tables_.empty()) {
    done_ = true;
    return;
  }
  combo_ = {0};
}

bool InstanceStream::advance_combination() {
  const std::size_t m = tables_.size();
  std::size_t k = combo_.size();
  // next k-combination of {0..m-1} in lexicographic order
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (combo_[i] < m - k + i) {
      ++combo_[i];
      for (std::size_t j = i + 1; j < k; ++j) combo_[j] = combo_[j - 1] + 1;
      return true;
    }
  }
  if (k + 1 > max_generators_ || k + 1 > m) return false;
  combo_.resize(k + 1);
  for (std::size_t j = 0; j <= k; ++j) combo_[j] = j;
  return true;
}

std::optional<FfgInstance> InstanceStream::next() {
  if (done_) return std::nullopt;
  FfgInstance inst;
  inst.n = n_;
  for (std::size_t c : combo_) inst.generators.push_back(tables_[c]);
  inst.target = tables_[target_];
  if (++target_ == tables_.size()) {
    target_ = 0;
    if (!advance_combination()) done_ = true;
  }
  return inst;
}

std::vector<FfgInstance> enumerate_instances(std::size_t n, std::size_t max_generators) {
  std::vector<FfgInstance> out;
  InstanceStream s(n, max_generators);
  while (auto inst = s.next()) out.push_back(std::move(*inst));
  return out;
}

FfgInstance random_instance(std::size_t n, std::size_t max_generators, std::mt19937_64& rng) {
  if (n == 0 || max_generators == 0) throw ValidationError("random_instance needs n >= 1 and max_generators >= 1");
  std::uniform_int_distribution<Element> elem(0, static_cast<Element>(n - 1));
  auto table = [&] {
    std::vector<Element> v(n);
    for (auto& x : v) x = elem(rng);
    return FunctionTable(std::move(v));
  };
  FfgInstance inst;
  inst.n = n;
  const std::size_t k = std::uniform_int_distribution<std::size_t>(1, max_generators)(rng);
  for (std::size_t i = 0; i < k; ++i) inst.generators.push_back(table());
  inst.target = table();
  return inst;
}

}  // namespace ricochet::ffg
