#include "ricochet/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ricochet/io.hpp"

namespace ricochet::cli {

namespace {

struct Options {
  std::size_t max_states = 10'000'000;
  std::size_t max_depth = 0;  // 0 = unlimited
  double time_budget = 0;     // seconds, 0 = none
  unsigned threads = 1;
  std::string format = "ascii";
  std::uint64_t seed = 1;

  SearchLimits limits() const {
    SearchLimits l;
    l.max_states = max_states;
    if (max_depth) l.max_depth = max_depth;
    if (time_budget > 0) l.time_budget_seconds = time_budget;
    l.threads = threads;
    return l;
  }
};

std::optional<Coord> goal_cell(const std::optional<Goal>& g) {
  if (g)
    if (const auto* r = std::get_if<RelocationGoal>(&*g)) return r->cell;
  return std::nullopt;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Error("cannot write " + path);
}

void print_config(std::ostream& out, const Configuration& c, const std::optional<Goal>& goal,
                  const std::string& format) {
  if (format == "json")
    out << io::to_json(c, goal).dump(2) << "\n";
  else if (format == "svg")
    out << io::render_svg(c, goal);
  else
    out << render_ascii(c, goal_cell(goal)) << "\n";
}

ffg::CompositionWitness parse_witness(const std::string& text) {
  ffg::CompositionWitness w;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      w.indices.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("witness: bad index '" + tok + "'");
    }
  }
  if (w.indices.empty()) throw ValidationError("witness: empty");
  return w;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string table_text(const ffg::FunctionTable& f) { return io::to_json(f).dump(); }

// Resolve the goal for `solve`.  --goal names a JSON file (a problem with a
// goal, or a bare goal object) or a tile label whose target is taken from
// the board's own goal.
Goal resolve_goal(const io::Problem& p, const std::string& spec, const std::string& at) {
  if (!at.empty()) {
    if (spec.empty()) throw ValidationError("--at needs --goal LABEL");
    int x = 0, y = 0;
    char comma = 0;
    std::istringstream ss(at);
    if (!(ss >> x >> comma >> y) || comma != ',') throw ValidationError("--at expects X,Y");
    return RelocationGoal{spec, {x, y}};
  }
  if (spec.empty()) {
    if (!p.goal) throw ValidationError("board has no goal; pass --goal");
    return *p.goal;
  }
  if (std::filesystem::is_regular_file(spec)) {
    io::json j = io::json::parse(io::read_file(spec), nullptr, false);
    if (j.is_discarded()) throw io::ParseError(spec, "not JSON");
    io::json wrapped = io::to_json(p.config);
    wrapped["goal"] = j.contains("goal") ? j["goal"] : j;
    return *io::parse_problem(wrapped.dump()).goal;
  }
  if (!p.config.find(spec)) throw UnknownLabelError(spec);
  if (p.goal) {
    if (const auto* r = std::get_if<RelocationGoal>(&*p.goal); r && r->label == spec) return *r;
    if (const auto* rc = std::get_if<ReconfigurationGoal>(&*p.goal))
      for (const auto& t : rc->tiles)
        if (t.label == spec) return RelocationGoal{spec, t.position};
  }
  throw ValidationError("no target cell for '" + spec + "'; pass --at X,Y");
}

gadgets::Gadget build_probe(const std::string& kind, std::size_t n, const std::vector<ffg::FunctionTable>& gens,
                            std::size_t functions) {
  using namespace gadgets;
  if (kind == "selector") return build_function_selector(gens);
  if (kind == "enforcer") return build_function_enforcer(gens);
  if (kind == "lock-selector") return build_lock_selector(n);
  if (kind == "lock") return build_lock(functions, n);
  if (kind == "relocation-goal") return build_relocation_goal(n);
  if (kind == "reconfiguration-goal") return build_reconfiguration_goal(n);
  throw ValidationError("unknown gadget '" + kind + "'");
}

void print_report(std::ostream& out, const verify::GadgetReport& r) {
  out << "gadget: " << gadgets::to_string(r.kind) << "\n"
      << "verdict: " << (r.pass() ? "pass" : "fail") << "\n"
      << "entries: " << r.entries_tested << "\n"
      << "legal traversals: " << r.legal_traversals << "\n"
      << "states: " << r.states << "\n"
      << "stuck states: " << r.stuck_states << "\n"
      << "violations: " << r.violations.size() << "\n";
  for (const auto& v : r.violations)
    out << "  " << v.entry << " -> " << v.exit << (v.sequence.empty() ? "" : " via ") << format_sequence(v.sequence)
        << "\n";
}

bool inconclusive(const verify::GadgetReport& r) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [](const verify::Violation& v) { return v.exit == "inconclusive"; });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ricochet: tilt puzzles, finite function generation, and the reduction between them"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--max-states", o.max_states, "search state cap (gadget checks stop at 1e6)")->check(CLI::PositiveNumber);
  app.add_option("--max-depth", o.max_depth, "search depth cap (0 = none)");
  app.add_option("--time-budget", o.time_budget, "seconds (0 = none)")->check(CLI::NonNegativeNumber);
  app.add_option("--threads", o.threads, "search threads")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"ascii", "svg", "json"}));
  app.add_option("--seed", o.seed, "seed for random instance sampling");

  std::string board, seq, goal, at, instance, mode = "relocation", witness, gadget, out_path, map_path;
  std::size_t n = 2, max_f = 2, random = 0, functions = 1;
  bool mutate = false;

  auto* simulate = app.add_subcommand("simulate", "apply a tilt sequence");
  simulate->add_option("--board", board)->required();
  simulate->add_option("--seq", seq)->required();

  auto* solve = app.add_subcommand("solve", "shortest tilt sequence reaching a goal");
  solve->add_option("--board", board)->required();
  solve->add_option("--goal", goal, "tile label, or JSON file holding a goal");
  solve->add_option("--at", at, "relocation target X,Y for --goal LABEL");

  auto* ffgc = app.add_subcommand("ffg", "finite function generation");
  ffgc->require_subcommand(1);
  auto* isgen = ffgc->add_subcommand("is-generated", "shortest witness for h");
  isgen->add_option("--instance", instance)->required();
  auto* closure = ffgc->add_subcommand("closure", "all compositions of the generators");
  closure->add_option("--instance", instance)->required();

  auto* compile = app.add_subcommand("compile", "build the tilt board for an FFG instance");
  compile->add_option("--instance", instance)->required();
  compile->add_option("--mode", mode)->check(CLI::IsMember({"relocation", "reconfiguration"}));
  compile->add_option("--out", out_path, "write board JSON here");
  compile->add_option("--port-map", map_path, "write port map JSON here");

  auto* emit = app.add_subcommand("emit-witness", "tilt sequence for a composition witness");
  emit->add_option("--instance", instance)->required();
  emit->add_option("--mode", mode)->check(CLI::IsMember({"relocation", "reconfiguration"}));
  emit->add_option("--witness", witness, "0-based generator indices, comma separated (default: shortest)");

  auto* vg = app.add_subcommand("verify-gadget", "exhaustive check of one probe gadget");
  vg->add_option("--gadget", gadget)
      ->required()
      ->check(CLI::IsMember(
          {"selector", "enforcer", "lock-selector", "lock", "relocation-goal", "reconfiguration-goal"}));
  vg->add_option("--instance", instance, "generators for selector/enforcer (default: the 3-element example)");
  vg->add_option("--n", n, "values (lock selector, lock, goals)")->check(CLI::PositiveNumber);
  vg->add_option("--functions", functions, "functions (lock)")->check(CLI::PositiveNumber);
  vg->add_flag("--mutate", mutate, "also search for a single wall mutation that breaks the gadget");

  auto* cc = app.add_subcommand("crosscheck", "FFG oracle vs. compiled board");
  cc->add_option("--n", n)->check(CLI::PositiveNumber);
  cc->add_option("--max-f", max_f)->check(CLI::PositiveNumber);
  cc->add_option("--random", random, "sample this many random instances instead of the full family");
  cc->add_option("--mode", mode)->check(CLI::IsMember({"relocation", "reconfiguration", "both"}));

  auto* render = app.add_subcommand("render", "draw a board");
  render->add_option("--board", board)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o1, o2;
    const int code = app.exit(e, o1, o2);
    out << o1.str();
    err << o2.str();
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*simulate) {
      io::Problem p = io::load_problem(board);
      Configuration end = apply_sequence(p.config, parse_sequence(seq));
      if (o.format == "ascii") {
        out << io::to_json(end).dump() << "\n";
        out << render_ascii(end, goal_cell(p.goal)) << "\n";
        if (p.goal) out << "goal: " << (satisfies(end, *p.goal) ? "reached" : "not reached") << "\n";
      } else {
        print_config(out, end, p.goal, o.format);
      }
      return kOk;
    }

    if (*solve) {
      io::Problem p = io::load_problem(board);
      Goal g = resolve_goal(p, goal, at);
      SearchOutcome r = ricochet::solve(p.config, g, o.limits());
      if (o.format == "json") {
        out << io::to_json(r).dump(2) << "\n";
      } else {
        out << "verdict: " << to_string(r.verdict) << "\n";
        if (r.verdict == Verdict::Solvable)
          out << "length: " << r.sequence.size() << "\n" << "sequence: " << format_sequence(r.sequence) << "\n";
        out << "states: " << r.stats.states_discovered << "\n" << "depth: " << r.stats.depth_reached << "\n";
      }
      return r.verdict == Verdict::Solvable ? kOk : r.verdict == Verdict::Unsolvable ? kNo : kUndecided;
    }

    if (*isgen) {
      ffg::FfgInstance inst = io::load_ffg(instance);
      auto w = ffg::is_generated(inst);
      if (o.format == "json") {
        io::json j{{"generated", w.has_value()}};
        if (w) j["witness"] = w->indices;
        out << j.dump(2) << "\n";
      } else {
        out << "generated: " << (w ? "yes" : "no") << "\n";
        if (w) out << "witness: " << join(w->indices) << "\n" << "length: " << w->indices.size() << "\n";
      }
      return w ? kOk : kNo;
    }

    if (*closure) {
      ffg::FfgInstance inst = io::load_ffg(instance);
      ffg::Closure c = ffg::generated_closure(inst.generators);
      if (o.format == "json") {
        io::json arr = io::json::array();
        for (const auto& f : c.elements) arr.push_back(io::to_json(f));
        out << io::json{{"size", c.elements.size()}, {"exhausted", c.exhausted}, {"elements", arr}}.dump(2) << "\n";
      } else {
        out << "size: " << c.elements.size() << "\n";
        out << "contains h: " << (c.contains(inst.target) ? "yes" : "no") << "\n";
        for (const auto& f : c.elements) out << table_text(f) << "\n";
      }
      return c.exhausted ? kUndecided : kOk;
    }

    if (*compile) {
      ffg::FfgInstance inst = io::load_ffg(instance);
      auto c = reduction::compile(inst, reduction::mode_from_string(mode));
      if (!out_path.empty()) write_file(out_path, io::serialize(c.initial, c.goal));
      if (!map_path.empty()) write_file(map_path, io::port_map_json(c).dump(2) + "\n");
      if (o.format == "json")
        out << io::serialize(c.initial, c.goal);
      else if (o.format == "svg")
        out << io::render_svg(c.initial, c.goal);
      else
        out << reduction::layout_report(c);
      return kOk;
    }

    if (*emit) {
      ffg::FfgInstance inst = io::load_ffg(instance);
      std::optional<ffg::CompositionWitness> w;
      if (witness.empty())
        w = ffg::is_generated(inst);
      else
        w = parse_witness(witness);
      if (!w) {
        out << "generated: no\n";
        return kNo;
      }
      auto c = reduction::compile(inst, reduction::mode_from_string(mode));
      TiltSequence s = reduction::emit_witness(inst, *w, c);
      const bool ok = satisfies(apply_sequence(c.initial, s), c.goal);
      if (o.format == "json") {
        out << io::json{{"witness", w->indices}, {"length", s.size()}, {"replay", ok}, {"sequence", io::to_json(s)}}
                   .dump(2)
            << "\n";
      } else {
        out << "witness: " << join(w->indices) << "\n"
            << "plan:\n"
            << reduction::to_string(reduction::plan_rounds(inst, *w)) << "length: " << s.size() << "\n"
            << "replay: " << (ok ? "ok" : "FAILED") << "\n"
            << "sequence: " << format_sequence(s) << "\n";
      }
      return ok ? kOk : kNo;
    }

    if (*vg) {
      std::vector<ffg::FunctionTable> gens;
      if (!instance.empty())
        gens = io::load_ffg(instance).generators;
      else
        gens = {ffg::FunctionTable({1, 2, 0}), ffg::FunctionTable({1, 0, 1}), ffg::FunctionTable({2, 1, 0})};
      gadgets::Gadget g = build_probe(gadget, n, gens, functions);
      const std::size_t cap = std::min<std::size_t>(o.max_states, 1'000'000);
      auto check = [&](const gadgets::Gadget& x) { return verify::verify(x, gens, cap); };
      verify::GadgetReport r = check(g);
      std::optional<verify::Mutation> m;
      if (mutate) m = verify::find_violating_mutation(g, check);
      if (o.format == "json") {
        io::json j = io::to_json(r);
        if (mutate) {
          j["mutation"] = m ? io::json{{"x", m->cell.x}, {"y", m->cell.y}, {"report", io::to_json(m->report)}}
                            : io::json(nullptr);
        }
        out << j.dump(2) << "\n";
      } else {
        out << "board: " << g.board.width() << "x" << g.board.height() << "\n";
        print_report(out, r);
        if (mutate) {
          if (m)
            out << "mutation: opening (" << m->cell.x << "," << m->cell.y << ") -> "
                << m->report.violations.front().entry << " -> " << m->report.violations.front().exit << "\n";
          else
            out << "mutation: none breaks the gadget\n";
        }
      }
      if (inconclusive(r)) return kUndecided;
      return r.pass() ? kOk : kNo;
    }

    if (*cc) {
      std::vector<ffg::FfgInstance> family;
      if (random) {
        std::mt19937_64 rng(o.seed);
        for (std::size_t k = 0; k < random; ++k) family.push_back(ffg::random_instance(n, max_f, rng));
      } else {
        family = ffg::enumerate_instances(n, max_f);
      }
      std::vector<reduction::Mode> modes;
      if (mode == "both" || mode == "relocation") modes.push_back(reduction::Mode::Relocation);
      if (mode == "both" || mode == "reconfiguration") modes.push_back(reduction::Mode::Reconfiguration);
      std::size_t agree = 0, undecided = 0, total = 0;
      io::json rows = io::json::array();
      for (const auto& inst : family) {
        for (auto md : modes) {
          verify::CrosscheckReport r = verify::crosscheck(inst, md, o.limits());
          ++total;
          agree += r.agree;
          undecided += r.board == verify::BoardVerdict::Inconclusive;
          if (o.format == "json") {
            rows.push_back(io::to_json(r));
          } else {
            std::string gens;
            for (const auto& f : inst.generators) gens += table_text(f);
            out << (r.agree ? "agree" : "DISAGREE") << " " << reduction::to_string(md) << " F=" << gens
                << " h=" << table_text(inst.target) << " oracle=" << (r.oracle ? "yes" : "no")
                << " board=" << verify::to_string(r.board) << " size=" << r.width << "x" << r.height;
            if (r.witness)
              out << " moves=" << r.sequence_length;
            else
              out << " states=" << r.stats.states_discovered;
            out << "\n";
          }
        }
      }
      if (o.format == "json")
        out << io::json{{"total", total}, {"agree", agree}, {"inconclusive", undecided}, {"runs", rows}}.dump(2)
            << "\n";
      else
        out << "summary: " << agree << "/" << total << " agree, " << undecided << " inconclusive\n";
      if (agree == total) return kOk;
      return agree + undecided == total ? kUndecided : kNo;
    }

    if (*render) {
      io::Problem p = io::load_problem(board);
      print_config(out, p.config, p.goal, o.format);
      return kOk;
    }
  } catch (const UnknownLabelError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace ricochet::cli
