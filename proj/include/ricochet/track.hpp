#pragma once

// Track networks: the geometric vocabulary shared by every gadget.
//
// A network is a set of horizontal width-1 *segments* joined by vertical
// width-1 *chutes*.  A chute leaves a segment at one of its end cells and
// lands strictly inside another segment.  A tile sliding along a segment
// only stops at its end cells, so the landing cell of a chute can never be
// re-entered from the segment it lies on.  A chute that carries a *stub*
// (one dead cell beyond its source segment) cannot be climbed back into its
// source either: a tile moving up the chute runs past the source end cell
// into the stub and falls straight back down.  Together these make every
// hop one-way.
//
// Each segment gets its own row and each attachment its own column, so
// corridors only meet at intended junctions or at pass-through crossings.
// Rows are 3 apart (segment, stub, wall) and columns 2 apart, except column
// pairs: two adjacent columns used by a lock's exit (down) and blocker spur
// (up).
//
// Layout is two topological sorts: columns by the west < interior < east
// order each segment needs, rows by explicit above/below requirements.

#include <string>
#include <vector>

#include "ricochet/tilt.hpp"

namespace ricochet::track {

using SegId = int;
using ColId = int;

struct ColRef {
  ColId col = -1;
  int sub = 0;  // 1 = right half of a column pair
  friend bool operator==(const ColRef&, const ColRef&) = default;
};

class Network {
 public:
  SegId segment(std::string name);
  // One-cell segment sitting on `col`; used for gadget ports on probe boards.
  SegId terminal(std::string name, ColRef col);

  ColId column();
  ColId column_pair();

  void set_ends(SegId seg, ColRef west, ColRef east);
  void add_interior(SegId seg, ColRef col);
  // Vertical corridor on `col` from an end of `from` to the interior of
  // `to`.  `stub` adds the dead cell beyond `from`.
  void add_chute(ColRef col, SegId from, SegId to, bool stub = true);

  void require_above(SegId upper, SegId lower);
  void require_left(ColId left, ColId right);

  std::size_t segment_count() const noexcept { return segments_.size(); }
  const std::string& name(SegId s) const { return segments_.at(static_cast<std::size_t>(s)).name; }

  struct Segment {
    std::string name;
    ColRef west, east;
    std::vector<ColRef> interior;
    bool terminal = false;
  };
  struct Chute {
    ColRef col;
    SegId from, to;
    bool stub;
  };
  struct Column {
    bool pair = false;
  };

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  const std::vector<Chute>& chutes() const noexcept { return chutes_; }
  const std::vector<Column>& columns() const noexcept { return columns_; }
  const std::vector<std::pair<SegId, SegId>>& above() const noexcept { return above_; }
  const std::vector<std::pair<ColId, ColId>>& left() const noexcept { return left_; }

 private:
  std::vector<Segment> segments_;
  std::vector<Chute> chutes_;
  std::vector<Column> columns_;
  std::vector<std::pair<SegId, SegId>> above_;  // (upper, lower)
  std::vector<std::pair<ColId, ColId>> left_;   // (left, right)
};

class Layout {
 public:
  explicit Layout(const Network& net);  // throws Error on cyclic constraints

  const Board& board() const noexcept { return board_; }
  int row(SegId s) const { return rows_.at(static_cast<std::size_t>(s)); }
  int x(ColRef c) const { return xs_.at(static_cast<std::size_t>(c.col)) + c.sub; }
  Coord cell(SegId s, ColRef c) const { return {x(c), row(s)}; }
  Coord west(SegId s) const;
  Coord east(SegId s) const;

 private:
  std::vector<std::pair<ColRef, ColRef>> ends_;
  std::vector<int> rows_;
  std::vector<int> xs_;
  Board board_;
};

}  // namespace ricochet::track
