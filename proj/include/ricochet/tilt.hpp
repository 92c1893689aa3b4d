#pragma once

// Board model and single-robot tilt dynamics.
//
// Coordinates are 1-based: x in [1, width] grows eastward, y in [1, height]
// grows northward, (1, 1) is the south-west corner.  Anything outside the
// rectangle behaves as a wall.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ricochet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class UnknownLabelError : public Error {
 public:
  UnknownLabelError(std::string label, std::optional<std::size_t> step = {});
  const std::string& label() const noexcept { return label_; }
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  std::string label_;
  std::optional<std::size_t> step_;
};

enum class Direction : std::uint8_t { N, E, S, W };

inline constexpr std::array<Direction, 4> kDirections{Direction::N, Direction::E, Direction::S,
                                                      Direction::W};

struct Coord {
  int x = 0;
  int y = 0;
  friend constexpr bool operator==(Coord, Coord) = default;
  friend constexpr auto operator<=>(Coord, Coord) = default;
};

constexpr Coord offset(Direction d) {
  switch (d) {
    case Direction::N: return {0, 1};
    case Direction::E: return {1, 0};
    case Direction::S: return {0, -1};
    case Direction::W: return {-1, 0};
  }
  return {0, 0};
}

constexpr Coord operator+(Coord c, Direction d) {
  Coord o = offset(d);
  return {c.x + o.x, c.y + o.y};
}

constexpr Direction opposite(Direction d) {
  switch (d) {
    case Direction::N: return Direction::S;
    case Direction::E: return Direction::W;
    case Direction::S: return Direction::N;
    case Direction::W: return Direction::E;
  }
  return d;
}

char to_char(Direction d);
Direction direction_from_char(char c);  // throws ValidationError

class Board {
 public:
  Board() = default;

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool in_bounds(Coord c) const noexcept {
    return c.x >= 1 && c.y >= 1 && c.x <= width_ && c.y <= height_;
  }
  // Out-of-range coordinates count as blocked.
  bool blocked(Coord c) const noexcept { return !in_bounds(c) || cells_[index(c)] != 0; }
  bool open(Coord c) const noexcept { return !blocked(c); }

  std::size_t area() const noexcept { return cells_.size(); }
  std::size_t open_count() const noexcept { return cells_.size() - blocked_count_; }
  std::size_t blocked_count() const noexcept { return blocked_count_; }

  // Row-major with y = 1 first.
  std::size_t index(Coord c) const noexcept {
    return static_cast<std::size_t>(c.y - 1) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.x - 1);
  }
  Coord coord(std::size_t index) const noexcept {
    return {static_cast<int>(index % static_cast<std::size_t>(width_)) + 1,
            static_cast<int>(index / static_cast<std::size_t>(width_)) + 1};
  }

  std::vector<Coord> blocked_cells() const;
  std::vector<Coord> open_cells() const;

  friend bool operator==(const Board&, const Board&) = default;

 private:
  friend Board make_board(int, int, const std::vector<Coord>&);
  friend Board with_cell(const Board&, Coord, bool);
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> cells_;  // 1 = blocked
  std::size_t blocked_count_ = 0;
};

Board make_board(int width, int height, const std::vector<Coord>& blocked);
// Copy of `board` with one cell forced open or blocked.
Board with_cell(const Board& board, Coord cell, bool blocked);

// 4-connectivity of the open cells; an empty open set counts as connected.
bool is_connected(const Board& board);

struct Tile {
  std::string label;
  Coord position;
  friend bool operator==(const Tile&, const Tile&) = default;
};

// Tiles are kept sorted by label so that equality does not depend on the
// order they were supplied in.
class Configuration {
 public:
  Configuration() = default;
  Configuration(Board board, std::vector<Tile> tiles);  // validates

  const Board& board() const noexcept { return board_; }
  const std::vector<Tile>& tiles() const noexcept { return tiles_; }

  std::optional<std::size_t> find(const std::string& label) const;
  const Tile& tile(const std::string& label) const;  // throws UnknownLabelError
  bool occupied(Coord c) const noexcept;

  // Copy with one tile moved; `at` indexes tiles().  No validation.
  Configuration moved(std::size_t at, Coord to) const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  Board board_;
  std::vector<Tile> tiles_;
};

struct TiltMove {
  Direction direction;
  std::string label;
  friend bool operator==(const TiltMove&, const TiltMove&) = default;
};

using TiltSequence = std::vector<TiltMove>;

bool is_step_terminal(const Configuration& config, const std::string& label, Direction dir);
Configuration particle_step(const Configuration& config, const std::string& label, Direction dir);
Configuration particle_tilt(const Configuration& config, const std::string& label, Direction dir);
Configuration apply_sequence(const Configuration& config, const TiltSequence& seq);

// Final cell of a maximal slide of `from` in `dir`, treating `occupied`
// cells as obstacles.  Shared by the solver's inner loop.
Coord slide(const Board& board, Coord from, Direction dir,
            const std::vector<Coord>& occupied);

// '#' blocked, '.' open, first label character for tiles, '*' for the goal
// cell when it is empty.  Row `height` comes first.
std::string render_ascii(const Configuration& config, std::optional<Coord> goal = {});

// "E(r),S(r)" <-> sequence.
std::string format_sequence(const TiltSequence& seq);
TiltSequence parse_sequence(const std::string& text);  // throws ValidationError

}  // namespace ricochet
