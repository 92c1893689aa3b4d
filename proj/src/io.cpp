#include "ricochet/io.hpp"

#include <fstream>
#include <sstream>

namespace ricochet::io {

ParseError::ParseError(const std::string& where, const std::string& what)
    : ValidationError(where + ": " + what), where_(where) {}

namespace {

// Schema walker that remembers where it is, for error messages.
struct Cursor {
  const json& j;
  std::string path;

  Cursor at(const std::string& key) const {
    if (!j.is_object()) throw ParseError(path.empty() ? "/" : path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(path + "/" + key, "missing");
    return {*it, path + "/" + key};
  }
  Cursor at(std::size_t i) const { return {j.at(i), path + "/" + std::to_string(i)}; }
  bool has(const std::string& key) const { return j.is_object() && j.contains(key); }

  const json& array() const {
    if (!j.is_array()) throw ParseError(path, "expected an array");
    return j;
  }
  long long integer() const {
    if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
    return j.get<long long>();
  }
  int coord() const {
    long long v = integer();
    if (v < 1 || v > 1'000'000) throw ParseError(path, "out of range");
    return static_cast<int>(v);
  }
  std::string string() const {
    if (!j.is_string()) throw ParseError(path, "expected a string");
    return j.get<std::string>();
  }
};

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
}

std::vector<Tile> parse_tiles(const Cursor& c) {
  std::vector<Tile> tiles;
  const json& arr = c.array();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    Cursor t = c.at(i);
    tiles.push_back({t.at("label").string(), {t.at("x").coord(), t.at("y").coord()}});
  }
  return tiles;
}

json tiles_json(const std::vector<Tile>& tiles) {
  json arr = json::array();
  for (const auto& t : tiles) arr.push_back({{"label", t.label}, {"x", t.position.x}, {"y", t.position.y}});
  return arr;
}

ffg::FunctionTable parse_table(const Cursor& c) {
  std::vector<ffg::Element> v;
  const json& arr = c.array();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    long long e = c.at(i).integer();
    if (e < 0) throw ParseError(c.path + "/" + std::to_string(i), "negative element");
    v.push_back(static_cast<ffg::Element>(e));
  }
  try {
    return ffg::FunctionTable(std::move(v));
  } catch (const ValidationError& e) {
    throw ParseError(c.path, e.what());
  }
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Problem parse_problem(const std::string& text) {
  const json doc = parse_json(text);
  Cursor root{doc, ""};
  const int w = root.at("width").coord();
  const int h = root.at("height").coord();
  std::vector<Coord> blocked;
  if (root.has("blocked")) {
    Cursor b = root.at("blocked");
    const json& arr = b.array();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Cursor cell = b.at(i);
      if (!cell.j.is_array() || cell.j.size() != 2) throw ParseError(cell.path, "expected [x,y]");
      Coord c{cell.at(0).coord(), cell.at(1).coord()};
      if (c.x > w || c.y > h) throw ParseError(cell.path, "outside the board");
      blocked.push_back(c);
    }
  }
  std::vector<Tile> tiles;
  if (root.has("tiles")) tiles = parse_tiles(root.at("tiles"));

  Problem p;
  try {
    p.config = Configuration(make_board(w, h, blocked), tiles);
  } catch (const ValidationError& e) {
    throw ParseError("/tiles", e.what());
  }
  if (root.has("goal")) {
    Cursor g = root.at("goal");
    const std::string kind = g.at("kind").string();
    if (kind == "relocation") {
      RelocationGoal r{g.at("label").string(), {g.at("x").coord(), g.at("y").coord()}};
      if (!p.config.find(r.label)) throw ParseError(g.path + "/label", "no tile labelled '" + r.label + "'");
      if (p.config.board().blocked(r.cell)) throw ParseError(g.path, "goal cell is blocked");
      p.goal = r;
    } else if (kind == "reconfiguration") {
      std::vector<Tile> target = parse_tiles(g.at("tiles"));
      try {
        Configuration check(p.config.board(), target);
        p.goal = ReconfigurationGoal{check.tiles()};
      } catch (const ValidationError& e) {
        throw ParseError(g.path + "/tiles", e.what());
      }
    } else {
      throw ParseError(g.path + "/kind", "unknown goal kind '" + kind + "'");
    }
  }
  return p;
}

Problem load_problem(const std::string& path) { return parse_problem(read_file(path)); }

json to_json(const Goal& goal) {
  if (const auto* r = std::get_if<RelocationGoal>(&goal))
    return {{"kind", "relocation"}, {"label", r->label}, {"x", r->cell.x}, {"y", r->cell.y}};
  return {{"kind", "reconfiguration"}, {"tiles", tiles_json(std::get<ReconfigurationGoal>(goal).tiles)}};
}

json to_json(const Configuration& config, const std::optional<Goal>& goal) {
  json blocked = json::array();
  for (Coord c : config.board().blocked_cells()) blocked.push_back({c.x, c.y});
  json j{{"width", config.board().width()},
         {"height", config.board().height()},
         {"blocked", std::move(blocked)},
         {"tiles", tiles_json(config.tiles())}};
  if (goal) j["goal"] = to_json(*goal);
  return j;
}

std::string serialize(const Configuration& config, const std::optional<Goal>& goal) {
  return to_json(config, goal).dump() + "\n";
}

ffg::FfgInstance parse_ffg(const std::string& text) {
  const json doc = parse_json(text);
  Cursor root{doc, ""};
  ffg::FfgInstance inst;
  long long n = root.at("n").integer();
  if (n < 1) throw ParseError("/n", "must be positive");
  inst.n = static_cast<std::size_t>(n);
  Cursor gens = root.at("generators");
  for (std::size_t i = 0; i < gens.array().size(); ++i) inst.generators.push_back(parse_table(gens.at(i)));
  inst.target = parse_table(root.at("h"));
  try {
    inst.validate();
  } catch (const ValidationError& e) {
    throw ParseError("/", e.what());
  }
  return inst;
}

ffg::FfgInstance load_ffg(const std::string& path) { return parse_ffg(read_file(path)); }

json to_json(const ffg::FunctionTable& f) { return f.table(); }

json to_json(const ffg::FfgInstance& instance) {
  json gens = json::array();
  for (const auto& g : instance.generators) gens.push_back(to_json(g));
  return {{"n", instance.n}, {"generators", std::move(gens)}, {"h", to_json(instance.target)}};
}

json to_json(const TiltSequence& seq) {
  json arr = json::array();
  for (const auto& m : seq) arr.push_back(format_sequence({m}));
  return arr;
}

json to_json(const SearchStats& s) {
  return {{"states_discovered", s.states_discovered},
          {"states_expanded", s.states_expanded},
          {"frontier_peak", s.frontier_peak},
          {"depth_reached", s.depth_reached}};
}

json to_json(const SearchOutcome& out) {
  json j{{"verdict", to_string(out.verdict)}, {"stats", to_json(out.stats)}};
  if (out.verdict == Verdict::Solvable) {
    j["length"] = out.sequence.size();
    j["sequence"] = format_sequence(out.sequence);
  }
  return j;
}

json to_json(const verify::GadgetReport& rep) {
  json v = json::array();
  for (const auto& x : rep.violations)
    v.push_back({{"entry", x.entry}, {"exit", x.exit}, {"sequence", format_sequence(x.sequence)}});
  return {{"kind", gadgets::to_string(rep.kind)},
          {"pass", rep.pass()},
          {"entries_tested", rep.entries_tested},
          {"legal_traversals", rep.legal_traversals},
          {"states", rep.states},
          {"stuck_states", rep.stuck_states},
          {"violations", std::move(v)}};
}

json to_json(const verify::CrosscheckReport& rep) {
  json j{{"instance", to_json(rep.instance)},
         {"mode", reduction::to_string(rep.mode)},
         {"oracle", rep.oracle ? "yes" : "no"},
         {"board", verify::to_string(rep.board)},
         {"agree", rep.agree},
         {"width", rep.width},
         {"height", rep.height},
         {"sequence_length", rep.sequence_length},
         {"stats", to_json(rep.stats)}};
  if (rep.witness) j["witness"] = rep.witness->indices;
  return j;
}

json port_map_json(const reduction::CompiledInstance& c) {
  json gadgets = json::array();
  for (const auto& g : c.port_map) {
    json ports = json::array();
    for (const auto& p : g.ports) ports.push_back({{"name", p.name}, {"x", p.cell.x}, {"y", p.cell.y}});
    gadgets.push_back({{"name", g.name},
                       {"kind", gadgets::to_string(g.kind)},
                       {"lo", {g.lo.x, g.lo.y}},
                       {"hi", {g.hi.x, g.hi.y}},
                       {"ports", std::move(ports)}});
  }
  const auto& k = c.counts;
  return {{"mode", reduction::to_string(c.mode)},
          {"instance", to_json(c.instance)},
          {"counts",
           {{"selectors", k.selectors},
            {"enforcers", k.enforcers},
            {"locks", k.locks},
            {"lock_selectors", k.lock_selectors},
            {"goals", k.goals}}},
          {"gadgets", std::move(gadgets)}};
}

std::string render_svg(const Configuration& config, const std::optional<Goal>& goal) {
  constexpr int s = 12;
  const Board& b = config.board();
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << b.width() * s << "\" height=\"" << b.height() * s
    << "\">\n";
  auto px = [&](Coord c) { return std::pair{(c.x - 1) * s, (b.height() - c.y) * s}; };
  o << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
  for (Coord c : b.blocked_cells()) {
    auto [x, y] = px(c);
    o << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << s << "\" height=\"" << s << "\" fill=\"#555\"/>\n";
  }
  auto outline = [&](Coord c) {
    auto [x, y] = px(c);
    o << "<rect x=\"" << x + 1 << "\" y=\"" << y + 1 << "\" width=\"" << s - 2 << "\" height=\"" << s - 2
      << "\" fill=\"none\" stroke=\"#c00\" stroke-width=\"2\"/>\n";
  };
  if (goal) {
    if (const auto* r = std::get_if<RelocationGoal>(&*goal))
      outline(r->cell);
    else
      for (const auto& t : std::get<ReconfigurationGoal>(*goal).tiles) outline(t.position);
  }
  for (const auto& t : config.tiles()) {
    auto [x, y] = px(t.position);
    o << "<circle cx=\"" << x + s / 2 << "\" cy=\"" << y + s / 2 << "\" r=\"" << s / 2 - 2
      << "\" fill=\"#36c\"><title>" << xml_escape(t.label) << "</title></circle>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace ricochet::io
