// One PASS/FAIL line per acceptance criterion.  Exit status is the number
// of failed criteria (0 = all pass).

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "ricochet/gadgets.hpp"
#include "ricochet/io.hpp"
#include "ricochet/reduction.hpp"
#include "ricochet/solver.hpp"
#include "ricochet/verifier.hpp"
#include "suites.hpp"

using namespace ricochet;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const std::string kData = RICOCHET_DATA_DIR;

Outcome fig3_replay() {
  io::Problem p = io::load_problem(kData + "/fig3.json");
  Configuration end = apply_sequence(p.config, parse_sequence("E(r),S(r),S(p),E(g),S(g),W(g),N(g)"));
  const auto& goal = std::get<RelocationGoal>(*p.goal);
  const bool placed = end.tile("g").position == goal.cell;
  SearchOutcome r = solve(p.config, *p.goal);
  const bool short_enough = r.verdict == Verdict::Solvable && r.sequence.size() <= 7 &&
                            satisfies(apply_sequence(p.config, r.sequence), *p.goal);
  std::ostringstream d;
  d << "replay puts g at (" << end.tile("g").position.x << "," << end.tile("g").position.y << "), goal ("
    << goal.cell.x << "," << goal.cell.y << "); solve: " << to_string(r.verdict) << " length " << r.sequence.size();
  return {placed && short_enough, d.str()};
}

Outcome tilt_suite() {
  suites::Tally t = suites::tilt_properties(10'000, 20240607);
  return {t.ok(), std::to_string(t.cases) + " cases, " + std::to_string(t.failures) + " failures" +
                      (t.failures ? " (first: " + t.first_failure + ")" : "")};
}

Outcome solver_suite() {
  suites::SolverOracleOptions o;
  o.samples = 128;
  suites::Tally t = suites::solver_oracle(o);
  return {t.ok(), std::to_string(t.cases) + " queries on boards up to 4x4, " + std::to_string(t.failures) +
                      " mismatches" + (t.failures ? " (first: " + t.first_failure + ")" : "")};
}

Outcome ffg_suite() {
  suites::Tally t = suites::ffg_oracle(1000, 3);
  return {t.ok() && t.cases == 1040, std::to_string(t.cases) + " instances (40 exhaustive N=2 + 1000 random N=3), " +
                                         std::to_string(t.failures) + " mismatches" +
                                         (t.failures ? " (first: " + t.first_failure + ")" : "")};
}

Outcome gadget_suite() {
  const std::vector<ffg::FunctionTable> fig4{ffg::FunctionTable({1, 2, 0}), ffg::FunctionTable({1, 0, 1}),
                                             ffg::FunctionTable({2, 1, 0})};
  std::vector<std::pair<std::string, gadgets::Gadget>> family{
      {"selector", gadgets::build_function_selector(fig4)},
      {"enforcer", gadgets::build_function_enforcer(fig4)},
      {"lock-selector(2)", gadgets::build_lock_selector(2)},
      {"lock-selector(3)", gadgets::build_lock_selector(3)},
      {"lock-selector(4)", gadgets::build_lock_selector(4)},
      {"lock-selector(8)", gadgets::build_lock_selector(8)},
      {"lock(1x1)", gadgets::build_lock(1, 1)},
      {"lock(3x3)", gadgets::build_lock(3, 3)},
      {"relocation-goal(3)", gadgets::build_relocation_goal(3)},
      {"reconfiguration-goal(3)", gadgets::build_reconfiguration_goal(3)},
  };
  bool ok = true;
  std::ostringstream d;
  auto check = [&](const gadgets::Gadget& g) { return verify::verify(g, fig4); };
  for (const auto& [name, g] : family) {
    verify::GadgetReport r = check(g);
    const bool sel = g.kind == gadgets::GadgetKind::FunctionSelector;
    const bool legal_ok = !sel || r.legal_traversals == 9;
    if (!r.pass() || !legal_ok) {
      ok = false;
      d << name << " FAILS; ";
    }
  }
  // mutation sensitivity, one representative per family
  std::size_t caught = 0;
  for (std::size_t k : {0u, 1u, 4u, 7u, 8u, 9u}) {
    auto m = verify::find_violating_mutation(family[k].second, check);
    if (m) {
      ++caught;
    } else {
      ok = false;
      d << family[k].first << " survives every mutation; ";
    }
  }
  d << family.size() << " gadgets verified, " << caught << "/6 families break under a wall mutation";
  return {ok, d.str()};
}

Outcome crosscheck_suite() {
  std::size_t total = 0, agree = 0, undecided = 0;
  for (const auto& inst : ffg::enumerate_instances(2, 2))
    for (auto m : {reduction::Mode::Relocation, reduction::Mode::Reconfiguration}) {
      verify::CrosscheckReport r = verify::crosscheck(inst, m);
      ++total;
      agree += r.agree;
      undecided += r.board == verify::BoardVerdict::Inconclusive;
    }
  return {total == 80 && agree == total && undecided == 0,
          std::to_string(agree) + "/" + std::to_string(total) + " agree, " + std::to_string(undecided) +
              " inconclusive"};
}

Outcome structure_suite() {
  std::size_t built = 0;
  std::ostringstream bad;
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t f = 1; f <= 3; ++f) {
      ffg::FfgInstance inst{n, {}, ffg::FunctionTable::identity(n)};
      for (std::size_t i = 0; i < f; ++i) {
        std::vector<ffg::Element> v(n);
        for (std::size_t x = 0; x < n; ++x) v[x] = static_cast<ffg::Element>((x * (i + 1) + i) % n);
        inst.generators.emplace_back(v);
      }
      for (auto m : {reduction::Mode::Relocation, reduction::Mode::Reconfiguration}) {
        auto c = reduction::compile(inst, m);
        ++built;
        const reduction::GadgetCounts want{1, n - 1, n * n, f * n, 1};
        if (!(c.counts == want) || !is_connected(c.board)) bad << "N=" << n << " |F|=" << f << "; ";
      }
    }
  const std::string b = bad.str();
  return {b.empty(), std::to_string(built) + " compiled boards" + (b.empty() ? "" : ", wrong: " + b)};
}

std::pair<int, std::string> capture(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return {status, out};
}

Outcome determinism_suite() {
  const std::string cli = RICOCHET_CLI;
  const std::string fig3 = kData + "/fig3.json", fig4 = kData + "/fig4.json";
  const std::vector<std::string> cmds{
      "simulate --board " + fig3 + " --seq \"E(r),S(r),S(p),E(g),S(g),W(g),N(g)\"",
      "simulate --board " + fig3 + " --seq \"E(r),S(r)\" --format json",
      "solve --board " + fig3 + " --goal g",
      "solve --board " + fig3 + " --goal g --format json",
      "ffg is-generated --instance " + fig4,
      "ffg closure --instance " + fig4,
      "compile --instance " + fig4 + " --mode reconfiguration",
      "compile --instance " + fig4 + " --format json",
      "emit-witness --instance " + fig4 + " --mode relocation",
      "verify-gadget --gadget selector --instance " + fig4 + " --mutate",
      "verify-gadget --gadget lock --n 2 --functions 2 --format json",
      "crosscheck --n 2 --max-f 1 --mode both",
      "crosscheck --n 3 --max-f 2 --random 4 --seed 9 --format json",
      "render --board " + fig3,
      "render --board " + fig3 + " --format svg",
  };
  std::size_t same = 0;
  std::ostringstream bad;
  for (const auto& c : cmds) {
    const std::string full = "'" + cli + "' --threads 1 " + c + " 2>/dev/null";
    auto a = capture(full), b = capture(full);
    if (a == b && !a.second.empty())
      ++same;
    else
      bad << c << "; ";
  }
  return {same == cmds.size(), std::to_string(same) + "/" + std::to_string(cmds.size()) + " invocations byte-identical" +
                                   (bad.str().empty() ? "" : ", differing: " + bad.str())};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"sample board replay and solve", fig3_replay},
      {"tilt property suite", tilt_suite},
      {"solver oracle equivalence", solver_suite},
      {"FFG oracle", ffg_suite},
      {"gadget checks and mutations", gadget_suite},
      {"end-to-end cross-check N=2 |F|<=2", crosscheck_suite},
      {"structural counts and connectivity", structure_suite},
      {"CLI determinism", determinism_suite},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": " << o.detail
         << " [" << secs << "s]";
    std::cout << line.str() << std::endl;
  }
  return failed;
}
