#include "ricochet/tilt.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace ricochet {

namespace {

std::string unknown_label_message(const std::string& label, std::optional<std::size_t> step) {
  std::string msg = "unknown tile label '" + label + "'";
  if (step) msg += " at step " + std::to_string(*step);
  return msg;
}

std::string coord_str(Coord c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

}  // namespace

UnknownLabelError::UnknownLabelError(std::string label, std::optional<std::size_t> step)
    : Error(unknown_label_message(label, step)), label_(std::move(label)), step_(step) {}

char to_char(Direction d) {
  switch (d) {
    case Direction::N: return 'N';
    case Direction::E: return 'E';
    case Direction::S: return 'S';
    case Direction::W: return 'W';
  }
  return '?';
}

Direction direction_from_char(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'N': return Direction::N;
    case 'E': return Direction::E;
    case 'S': return Direction::S;
    case 'W': return Direction::W;
    default: throw ValidationError(std::string("bad direction '") + c + "'");
  }
}

// ---------------------------------------------------------------- Board

Board make_board(int width, int height, const std::vector<Coord>& blocked) {
  if (width <= 0 || height <= 0) {
    throw ValidationError("board dimensions must be positive, got " + std::to_string(width) +
                          "x" + std::to_string(height));
  }
  Board b;
  b.width_ = width;
  b.height_ = height;
  b.cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
  for (Coord c : blocked) {
    if (!b.in_bounds(c)) throw ValidationError("blocked cell " + coord_str(c) + " outside board");
    auto& cell = b.cells_[b.index(c)];
    if (!cell) {
      cell = 1;
      ++b.blocked_count_;
    }
  }
  return b;
}

Board with_cell(const Board& board, Coord cell, bool blocked) {
  if (!board.in_bounds(cell)) throw ValidationError("cell " + coord_str(cell) + " outside board");
  Board b = board;
  auto& v = b.cells_[b.index(cell)];
  if (v && !blocked) --b.blocked_count_;
  if (!v && blocked) ++b.blocked_count_;
  v = blocked ? 1 : 0;
  return b;
}

std::vector<Coord> Board::blocked_cells() const {
  std::vector<Coord> out;
  out.reserve(blocked_count_);
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i]) out.push_back(coord(i));
  return out;
}

std::vector<Coord> Board::open_cells() const {
  std::vector<Coord> out;
  out.reserve(open_count());
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (!cells_[i]) out.push_back(coord(i));
  return out;
}

bool is_connected(const Board& board) {
  const std::size_t total = board.open_count();
  if (total == 0) return true;
  std::vector<std::uint8_t> seen(board.area(), 0);
  std::vector<Coord> stack;
  for (std::size_t i = 0; i < board.area(); ++i) {
    Coord c = board.coord(i);
    if (board.open(c)) {
      stack.push_back(c);
      seen[i] = 1;
      break;
    }
  }
  std::size_t reached = 0;
  while (!stack.empty()) {
    Coord c = stack.back();
    stack.pop_back();
    ++reached;
    for (Direction d : kDirections) {
      Coord n = c + d;
      if (board.blocked(n)) continue;
      auto& s = seen[board.index(n)];
      if (!s) {
        s = 1;
        stack.push_back(n);
      }
    }
  }
  return reached == total;
}

// -------------------------------------------------------- Configuration

Configuration::Configuration(Board board, std::vector<Tile> tiles)
    : board_(std::move(board)), tiles_(std::move(tiles)) {
  std::sort(tiles_.begin(), tiles_.end(),
            [](const Tile& a, const Tile& b) { return a.label < b.label; });
  std::set<Coord> cells;
  for (std::size_t i = 0; i < tiles_.size(); ++i) {
    const Tile& t = tiles_[i];
    if (t.label.empty()) throw ValidationError("tile label must not be empty");
    if (i > 0 && tiles_[i - 1].label == t.label)
      throw ValidationError("duplicate tile label '" + t.label + "'");
    if (board_.blocked(t.position))
      throw ValidationError("tile '" + t.label + "' at " + coord_str(t.position) +
                            " is not on an open cell");
    if (!cells.insert(t.position).second)
      throw ValidationError("two tiles share cell " + coord_str(t.position));
  }
}

std::optional<std::size_t> Configuration::find(const std::string& label) const {
  auto it = std::lower_bound(tiles_.begin(), tiles_.end(), label,
                             [](const Tile& t, const std::string& l) { return t.label < l; });
  if (it == tiles_.end() || it->label != label) return std::nullopt;
  return static_cast<std::size_t>(it - tiles_.begin());
}

const Tile& Configuration::tile(const std::string& label) const {
  auto i = find(label);
  if (!i) throw UnknownLabelError(label);
  return tiles_[*i];
}

bool Configuration::occupied(Coord c) const noexcept {
  return std::any_of(tiles_.begin(), tiles_.end(), [c](const Tile& t) { return t.position == c; });
}

Configuration Configuration::moved(std::size_t at, Coord to) const {
  Configuration out = *this;
  out.tiles_[at].position = to;
  return out;
}

// --------------------------------------------------------------- Motion

Coord slide(const Board& board, Coord from, Direction dir, const std::vector<Coord>& occupied) {
  Coord c = from;
  for (;;) {
    Coord n = c + dir;
    if (board.blocked(n)) return c;
    if (std::find(occupied.begin(), occupied.end(), n) != occupied.end()) return c;
    c = n;
  }
}

bool is_step_terminal(const Configuration& config, const std::string& label, Direction dir) {
  Coord next = config.tile(label).position + dir;
  return config.board().blocked(next) || config.occupied(next);
}

Configuration particle_step(const Configuration& config, const std::string& label, Direction dir) {
  auto at = config.find(label);
  if (!at) throw UnknownLabelError(label);
  if (is_step_terminal(config, label, dir)) return config;
  return config.moved(*at, config.tiles()[*at].position + dir);
}

Configuration particle_tilt(const Configuration& config, const std::string& label, Direction dir) {
  auto at = config.find(label);
  if (!at) throw UnknownLabelError(label);
  std::vector<Coord> others;
  others.reserve(config.tiles().size());
  for (std::size_t i = 0; i < config.tiles().size(); ++i)
    if (i != *at) others.push_back(config.tiles()[i].position);
  Coord from = config.tiles()[*at].position;
  Coord to = slide(config.board(), from, dir, others);
  if (to == from) return config;
  return config.moved(*at, to);
}

Configuration apply_sequence(const Configuration& config, const TiltSequence& seq) {
  Configuration cur = config;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!cur.find(seq[i].label)) throw UnknownLabelError(seq[i].label, i);
    cur = particle_tilt(cur, seq[i].label, seq[i].direction);
  }
  return cur;
}

// ------------------------------------------------------------ Rendering

std::string render_ascii(const Configuration& config, std::optional<Coord> goal) {
  const Board& b = config.board();
  std::string out;
  out.reserve(static_cast<std::size_t>(b.width() + 1) * static_cast<std::size_t>(b.height()));
  for (int y = b.height(); y >= 1; --y) {
    for (int x = 1; x <= b.width(); ++x) {
      Coord c{x, y};
      char ch = b.blocked(c) ? '#' : '.';
      if (goal && *goal == c && ch == '.') ch = '*';
      for (const Tile& t : config.tiles())
        if (t.position == c) ch = t.label.front();
      out.push_back(ch);
    }
    if (y > 1) out.push_back('\n');
  }
  return out;
}

std::string format_sequence(const TiltSequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out.push_back(',');
    out.push_back(to_char(seq[i].direction));
    out += "(" + seq[i].label + ")";
  }
  return out;
}

TiltSequence parse_sequence(const std::string& text) {
  TiltSequence seq;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos == text.size()) return seq;
  for (;;) {
    skip_ws();
    const std::size_t token_start = pos;
    if (pos >= text.size()) throw ValidationError("sequence: expected move at offset " +
                                                  std::to_string(pos));
    Direction d = direction_from_char(text[pos++]);
    if (pos >= text.size() || text[pos] != '(')
      throw ValidationError("sequence: expected '(' at offset " + std::to_string(pos));
    auto close = text.find(')', pos);
    if (close == std::string::npos)
      throw ValidationError("sequence: unterminated token at offset " + std::to_string(token_start));
    std::string label = text.substr(pos + 1, close - pos - 1);
    if (label.empty())
      throw ValidationError("sequence: empty label at offset " + std::to_string(token_start));
    seq.push_back({d, std::move(label)});
    pos = close + 1;
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != ',')
      throw ValidationError("sequence: expected ',' at offset " + std::to_string(pos));
    ++pos;
  }
  return seq;
}

}  // namespace ricochet
