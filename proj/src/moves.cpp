#include "knotmoney/moves.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "knotmoney/error.hpp"

namespace knotmoney {

namespace {

using Row = std::vector<std::uint16_t>;

Row copy_of(std::span<const std::uint16_t> s) { return Row(s.begin(), s.end()); }

bool spans_compatible(int a0, int a1, int b0, int b1) {
  const int alo = std::min(a0, a1), ahi = std::max(a0, a1);
  const int blo = std::min(b0, b1), bhi = std::max(b0, b1);
  const bool disjoint = ahi < blo || bhi < alo;
  const bool nested = (alo <= blo && bhi <= ahi) || (blo <= alo && ahi <= bhi);
  return disjoint || nested;
}

std::optional<GridDiagram> stabilize_upper_right(const GridDiagram& g, int x, int y) {
  const int d = g.dim();
  if (x < 0 || y < 0 || x >= d || y >= d) return std::nullopt;
  const Marker t = g.at(x, y);
  if (t == Marker::None) return std::nullopt;
  auto shift_row = [y](int r) { return r + (r > y ? 1 : 0); };
  Row nx(d + 1), no(d + 1);
  for (int c = 0; c < d; ++c) {
    if (c == x) continue;
    const int cc = c + (c > x ? 1 : 0);
    nx[cc] = static_cast<std::uint16_t>(shift_row(g.x_row(c)));
    no[cc] = static_cast<std::uint16_t>(shift_row(g.o_row(c)));
  }
  // Column x keeps its other marker and gains the upper arm of the L; column
  // x+1 holds the lower arm and the opposite-type corner.
  const int other = shift_row(t == Marker::X ? g.o_row(x) : g.x_row(x));
  Row& same_col = t == Marker::X ? nx : no;
  Row& opp_col = t == Marker::X ? no : nx;
  opp_col[x] = static_cast<std::uint16_t>(other);
  same_col[x] = static_cast<std::uint16_t>(y + 1);
  same_col[x + 1] = static_cast<std::uint16_t>(y);
  opp_col[x + 1] = static_cast<std::uint16_t>(y + 1);
  return GridDiagram::from_trusted(std::move(nx), std::move(no));
}

std::optional<GridDiagram> destabilize_upper_right(const GridDiagram& g, int x, int y) {
  const int d = g.dim();
  if (d <= 2 || x < 0 || y < 0 || x + 1 >= d || y + 1 >= d) return std::nullopt;
  if (g.at(x, y) != Marker::None) return std::nullopt;
  const Marker arm_right = g.at(x + 1, y);
  const Marker arm_up = g.at(x, y + 1);
  const Marker corner = g.at(x + 1, y + 1);
  if (arm_right == Marker::None || arm_up == Marker::None || corner == Marker::None) return std::nullopt;
  if (arm_right != arm_up || corner != opposite(arm_right)) return std::nullopt;
  auto shift_row = [y](int r) { return r - (r > y + 1 ? 1 : 0); };
  Row nx(d - 1), no(d - 1);
  for (int c = 0; c < d; ++c) {
    if (c == x || c == x + 1) continue;
    const int cc = c - (c > x + 1 ? 1 : 0);
    nx[cc] = static_cast<std::uint16_t>(shift_row(g.x_row(c)));
    no[cc] = static_cast<std::uint16_t>(shift_row(g.o_row(c)));
  }
  const int other = shift_row(arm_up == Marker::X ? g.o_row(x) : g.x_row(x));
  if (arm_up == Marker::X) {
    nx[x] = static_cast<std::uint16_t>(y);
    no[x] = static_cast<std::uint16_t>(other);
  } else {
    no[x] = static_cast<std::uint16_t>(y);
    nx[x] = static_cast<std::uint16_t>(other);
  }
  return GridDiagram::from_trusted(std::move(nx), std::move(no));
}

template <class F>
std::optional<GridDiagram> conjugated(const GridDiagram& g, int k, F&& move) {
  k = ((k % 4) + 4) % 4;
  if (k == 0) return move(g);
  auto res = move(rotate_ccw(g, k));
  if (!res) return std::nullopt;
  return rotate_ccw(*res, 4 - k);
}

}  // namespace

GridDiagram cyclic(const GridDiagram& g, Axis axis, int dir) {
  const int d = g.dim();
  const int s = ((dir % d) + d) % d;
  Row nx(d), no(d);
  if (axis == Axis::Columns) {
    for (int c = 0; c < d; ++c) {
      nx[(c + s) % d] = g.x_row(c);
      no[(c + s) % d] = g.o_row(c);
    }
  } else {
    for (int c = 0; c < d; ++c) {
      nx[c] = static_cast<std::uint16_t>((g.x_row(c) + s) % d);
      no[c] = static_cast<std::uint16_t>((g.o_row(c) + s) % d);
    }
  }
  return GridDiagram::from_trusted(std::move(nx), std::move(no));
}

bool transpose_legal(const GridDiagram& g, Axis axis, int index) {
  if (index < 0 || index + 1 >= g.dim()) return false;
  if (axis == Axis::Columns) {
    return spans_compatible(g.x_row(index), g.o_row(index), g.x_row(index + 1), g.o_row(index + 1));
  }
  const auto xc = g.x_cols();
  const auto oc = g.o_cols();
  return spans_compatible(xc[index], oc[index], xc[index + 1], oc[index + 1]);
}

GridDiagram transpose(const GridDiagram& g, Axis axis, int index) {
  if (!transpose_legal(g, axis, index)) {
    throw Error(ErrorKind::IllegalTransposition,
                std::string(axis == Axis::Columns ? "columns " : "rows ") + std::to_string(index) + "," +
                    std::to_string(index + 1) + " interleave");
  }
  Row nx = copy_of(g.x_rows());
  Row no = copy_of(g.o_rows());
  if (axis == Axis::Columns) {
    std::swap(nx[index], nx[index + 1]);
    std::swap(no[index], no[index + 1]);
  } else {
    auto swap_rows = [index](std::uint16_t& r) {
      if (r == index) r = static_cast<std::uint16_t>(index + 1);
      else if (r == index + 1) r = static_cast<std::uint16_t>(index);
    };
    std::for_each(nx.begin(), nx.end(), swap_rows);
    std::for_each(no.begin(), no.end(), swap_rows);
  }
  return GridDiagram::from_trusted(std::move(nx), std::move(no));
}

GridDiagram rotate_ccw(const GridDiagram& g, int quarter_turns) {
  quarter_turns = ((quarter_turns % 4) + 4) % 4;
  if (quarter_turns == 0) return g;
  const int d = g.dim();
  Row nx(d), no(d);
  for (int c = 0; c < d; ++c) {
    nx[d - 1 - g.x_row(c)] = static_cast<std::uint16_t>(c);
    no[d - 1 - g.o_row(c)] = static_cast<std::uint16_t>(c);
  }
  auto once = GridDiagram::from_trusted(std::move(nx), std::move(no));
  return quarter_turns == 1 ? once : rotate_ccw(once, quarter_turns - 1);
}

std::optional<GridDiagram> try_stabilize(const GridDiagram& g, int x, int y, int k) {
  return conjugated(g, k, [x, y](const GridDiagram& h) { return stabilize_upper_right(h, x, y); });
}

std::optional<GridDiagram> try_destabilize(const GridDiagram& g, int x, int y, int k) {
  return conjugated(g, k, [x, y](const GridDiagram& h) { return destabilize_upper_right(h, x, y); });
}

GridDiagram stabilize(const GridDiagram& g, int x, int y, int k) {
  if (auto r = try_stabilize(g, x, y, k)) return std::move(*r);
  throw Error(ErrorKind::NoMarkerAtPosition,
              "no marker at (" + std::to_string(x) + "," + std::to_string(y) + ") in orientation " + std::to_string(k));
}

GridDiagram destabilize(const GridDiagram& g, int x, int y, int k) {
  if (auto r = try_destabilize(g, x, y, k)) return std::move(*r);
  throw Error(ErrorKind::IllegalDestabilization,
              "no collapsible L at (" + std::to_string(x) + "," + std::to_string(y) + ") in orientation " +
                  std::to_string(k));
}

std::vector<GridDiagram> neighbours(const GridDiagram& g, int dmax) {
  const int d = g.dim();
  std::vector<GridDiagram> out;
  for (auto axis : {Axis::Columns, Axis::Rows}) {
    out.push_back(cyclic(g, axis, +1));
    out.push_back(cyclic(g, axis, -1));
    for (int i = 0; i + 1 < d; ++i) {
      if (transpose_legal(g, axis, i)) out.push_back(transpose(g, axis, i));
    }
  }
  for (int k = 0; k < 4; ++k) {
    for (int x = 0; x < d; ++x) {
      for (int y = 0; y < d; ++y) {
        if (d + 1 <= dmax) {
          if (auto s = try_stabilize(g, x, y, k)) out.push_back(std::move(*s));
        }
        if (auto s = try_destabilize(g, x, y, k)) out.push_back(std::move(*s));
      }
    }
  }
  return out;
}

std::vector<GridDiagram> enumerate_class(const GridDiagram& g, int dmax, std::size_t cap) {
  if (g.dim() > dmax) throw Error(ErrorKind::InvalidParameter, "start diagram exceeds dmax");
  std::unordered_set<GridDiagram, GridDiagramHash> seen{g};
  std::deque<GridDiagram> frontier{g};
  while (!frontier.empty()) {
    const GridDiagram cur = std::move(frontier.front());
    frontier.pop_front();
    for (auto& n : neighbours(cur, dmax)) {
      if (seen.insert(n).second) {
        if (seen.size() > cap) {
          throw Error(ErrorKind::ExplosionLimit, "class exceeds " + std::to_string(cap) + " diagrams");
        }
        frontier.push_back(std::move(n));
      }
    }
  }
  std::vector<GridDiagram> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace knotmoney
