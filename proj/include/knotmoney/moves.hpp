#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "knotmoney/grid_diagram.hpp"

namespace knotmoney {

enum class Axis { Columns, Rows };

// Grid moves. Every function returns a new valid diagram; inputs are never
// modified.

/// Cyclic shift of all columns (rows) by `dir` = +1 (right / up) or -1.
GridDiagram cyclic(const GridDiagram& g, Axis axis, int dir);

/// Columns (rows) `index` and `index+1` may be exchanged iff the closed
/// marker spans of the two lines are disjoint or nested.
bool transpose_legal(const GridDiagram& g, Axis axis, int index);

/// Throws Error{IllegalTransposition} when transpose_legal is false.
GridDiagram transpose(const GridDiagram& g, Axis axis, int index);

/// Quarter turn counterclockwise: cell (c, r) moves to (d-1-r, c). Marker
/// types are kept.
GridDiagram rotate_ccw(const GridDiagram& g, int quarter_turns = 1);

/// Replaces the marker at (x,y) by an L of three markers. Orientation k
/// rotates the picture by 90k degrees counterclockwise, applies the k=0 rule
/// (L to the upper right) with the same (x,y), and rotates back.
/// Throws Error{NoMarkerAtPosition}.
GridDiagram stabilize(const GridDiagram& g, int x, int y, int k = 0);

/// Collapses the L whose empty corner is (x,y) (orientation k as above).
/// Throws Error{IllegalDestabilization}.
GridDiagram destabilize(const GridDiagram& g, int x, int y, int k = 0);

std::optional<GridDiagram> try_stabilize(const GridDiagram& g, int x, int y, int k);
std::optional<GridDiagram> try_destabilize(const GridDiagram& g, int x, int y, int k);

/// Every diagram reachable from `g` by legal grid moves whose results keep
/// dimension <= dmax. Throws Error{ExplosionLimit} past `cap` members.
std::vector<GridDiagram> enumerate_class(const GridDiagram& g, int dmax, std::size_t cap = 1'000'000);

/// One-step neighbours of `g` under all legal moves (results with dim <= dmax).
std::vector<GridDiagram> neighbours(const GridDiagram& g, int dmax);

}  // namespace knotmoney
