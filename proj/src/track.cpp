#include "ricochet/track.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace ricochet::track {

SegId Network::segment(std::string name) {
  segments_.push_back({std::move(name), {}, {}, {}, false});
  return static_cast<SegId>(segments_.size() - 1);
}

SegId Network::terminal(std::string name, ColRef col) {
  segments_.push_back({std::move(name), col, col, {}, true});
  return static_cast<SegId>(segments_.size() - 1);
}

ColId Network::column() {
  columns_.push_back({false});
  return static_cast<ColId>(columns_.size() - 1);
}

ColId Network::column_pair() {
  columns_.push_back({true});
  return static_cast<ColId>(columns_.size() - 1);
}

void Network::set_ends(SegId seg, ColRef west, ColRef east) {
  auto& s = segments_.at(static_cast<std::size_t>(seg));
  s.west = west;
  s.east = east;
}

void Network::add_interior(SegId seg, ColRef col) {
  segments_.at(static_cast<std::size_t>(seg)).interior.push_back(col);
}

void Network::add_chute(ColRef col, SegId from, SegId to, bool stub) {
  chutes_.push_back({col, from, to, stub});
}

void Network::require_above(SegId upper, SegId lower) { above_.emplace_back(upper, lower); }

void Network::require_left(ColId left, ColId right) { left_.emplace_back(left, right); }

namespace {

// Kahn's algorithm, smallest ready id first.  Returns rank per node.
std::vector<int> topo_rank(std::size_t n, const std::vector<std::pair<int, int>>& edges,
                           const char* what) {
  std::vector<std::vector<int>> out(n);
  std::vector<int> indeg(n, 0);
  for (auto [a, b] : edges) {
    if (a == b) continue;
    out[static_cast<std::size_t>(a)].push_back(b);
    ++indeg[static_cast<std::size_t>(b)];
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push(static_cast<int>(i));
  std::vector<int> rank(n, -1);
  int next = 0;
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    rank[static_cast<std::size_t>(v)] = next++;
    for (int w : out[static_cast<std::size_t>(v)])
      if (--indeg[static_cast<std::size_t>(w)] == 0) ready.push(w);
  }
  if (next != static_cast<int>(n)) throw Error(std::string("layout: cyclic ") + what + " constraints");
  return rank;
}

bool attached_end(const Network::Segment& s, ColRef c) {
  return s.terminal ? s.west.col == c.col : (s.west == c || s.east == c);
}

bool attached_inside(const Network::Segment& s, ColRef c) {
  if (s.terminal) return s.west.col == c.col;
  return std::find(s.interior.begin(), s.interior.end(), c) != s.interior.end();
}

}  // namespace

Layout::Layout(const Network& net) {
  const auto& segs = net.segments();
  for (const auto& s : segs) {
    if (s.west.col < 0 || s.east.col < 0) throw Error("layout: segment '" + s.name + "' has no ends");
    ends_.emplace_back(s.west, s.east);
  }
  for (const auto& c : net.chutes()) {
    const auto& from = segs.at(static_cast<std::size_t>(c.from));
    const auto& to = segs.at(static_cast<std::size_t>(c.to));
    // lock exits are the one place a chute leaves from inside a segment
    const bool pair_exit = net.columns().at(static_cast<std::size_t>(c.col.col)).pair && attached_inside(from, c.col);
    if (!attached_end(from, c.col) && !pair_exit)
      throw Error("layout: chute does not leave an end of '" + from.name + "'");
    if (!attached_inside(to, c.col))
      throw Error("layout: chute does not land inside '" + to.name + "'");
  }

  // Columns.
  std::vector<std::pair<int, int>> col_edges;
  for (const auto& s : segs) {
    if (s.terminal) continue;
    col_edges.emplace_back(s.west.col, s.east.col);
    for (ColRef c : s.interior) {
      col_edges.emplace_back(s.west.col, c.col);
      col_edges.emplace_back(c.col, s.east.col);
    }
  }
  for (auto [a, b] : net.left()) col_edges.emplace_back(a, b);
  std::vector<int> col_rank = topo_rank(net.columns().size(), col_edges, "column");
  std::vector<int> by_rank(col_rank.size());
  for (std::size_t i = 0; i < col_rank.size(); ++i) by_rank[static_cast<std::size_t>(col_rank[i])] = static_cast<int>(i);
  xs_.assign(col_rank.size(), 0);
  int cursor = 2;
  for (int c : by_rank) {
    xs_[static_cast<std::size_t>(c)] = cursor;
    cursor += net.columns()[static_cast<std::size_t>(c)].pair ? 3 : 2;
  }
  const int width = std::max(cursor - 1, 3);

  // Rows, bottom to top.
  std::vector<std::pair<int, int>> row_edges;
  for (auto [upper, lower] : net.above()) row_edges.emplace_back(lower, upper);
  std::vector<int> row_rank = topo_rank(segs.size(), row_edges, "row");
  rows_.resize(segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) rows_[i] = 3 + 3 * row_rank[i];
  const int height = 3 * static_cast<int>(std::max<std::size_t>(segs.size(), 1)) + 2;

  for (const auto& s : segs) {
    if (!s.terminal && x(s.west) >= x(s.east))
      throw Error("layout: segment '" + s.name + "' has west end east of its east end");
    for (ColRef c : s.interior)
      if (!s.terminal && (x(c) <= x(s.west) || x(c) >= x(s.east)))
        throw Error("layout: interior column outside segment '" + s.name + "'");
  }

  std::vector<std::uint8_t> open(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
  auto mark = [&](int cx, int cy) {
    open[static_cast<std::size_t>(cy - 1) * static_cast<std::size_t>(width) + static_cast<std::size_t>(cx - 1)] = 1;
  };
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (int cx = x(segs[i].west); cx <= x(segs[i].east); ++cx) mark(cx, rows_[i]);
  for (const auto& c : net.chutes()) {
    const int cx = x(c.col);
    const int y0 = rows_[static_cast<std::size_t>(c.from)];
    const int y1 = rows_[static_cast<std::size_t>(c.to)];
    if (y0 == y1) throw Error("layout: chute between segments on the same row");
    const int step = y1 > y0 ? 1 : -1;
    for (int cy = y0; cy != y1 + step; cy += step) mark(cx, cy);
    if (c.stub) mark(cx, y0 - step);
  }

  std::vector<Coord> blocked;
  for (int cy = 1; cy <= height; ++cy)
    for (int cx = 1; cx <= width; ++cx)
      if (!open[static_cast<std::size_t>(cy - 1) * static_cast<std::size_t>(width) + static_cast<std::size_t>(cx - 1)])
        blocked.push_back({cx, cy});
  board_ = make_board(width, height, blocked);
}

Coord Layout::west(SegId s) const { return cell(s, ends_.at(static_cast<std::size_t>(s)).first); }
Coord Layout::east(SegId s) const { return cell(s, ends_.at(static_cast<std::size_t>(s)).second); }

}  // namespace ricochet::track
