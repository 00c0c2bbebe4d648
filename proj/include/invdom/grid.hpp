#pragma once

// Uniform lattice {(i h, j h)} clipped to a convex domain, with the exact
// boundary crossings of every lattice row and column. Shared by the membrane
// and plate discretizations.

#include <cstddef>
#include <optional>
#include <vector>

#include "invdom/support.hpp"

namespace invdom {

/// A boundary point on a lattice line: its coordinate along the line and the
/// angle of the outward normal there.
struct Crossing {
  double coord = 0.0;
  double theta = 0.0;
};

/// Both crossings of one lattice line; `lo` has the smaller coordinate.
struct LineCrossings {
  Crossing lo;
  Crossing hi;
};

struct LatticeNode {
  int i = 0;
  int j = 0;
};

class CutCellGrid {
 public:
  /// Nodes closer than `exclusion * spacing` to the boundary along a lattice
  /// line are dropped; their neighbours see the true boundary distance.
  static CutCellGrid from_body(const ConvexBody& body, double spacing, double exclusion);
  /// Axis-aligned rectangle [x0, x1] x [y0, y1].
  static CutCellGrid from_box(double x0, double x1, double y0, double y1, double spacing,
                              double exclusion);

  double spacing() const noexcept { return h_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<LatticeNode>& nodes() const noexcept { return nodes_; }
  Point position(std::size_t n) const noexcept {
    return {nodes_[n].i * h_, nodes_[n].j * h_};
  }

  /// Node index of lattice point (i, j), or -1.
  long index(int i, int j) const noexcept;
  bool has_node(int i, int j) const noexcept { return index(i, j) >= 0; }

  const std::optional<LineCrossings>& row(int j) const;
  const std::optional<LineCrossings>& col(int i) const;

  int i_min() const noexcept { return i0_; }
  int i_max() const noexcept { return i1_; }
  int j_min() const noexcept { return j0_; }
  int j_max() const noexcept { return j1_; }

  /// Distance from node n to the boundary along direction (di, dj), one of the
  /// four lattice directions. Only meaningful when the neighbour is not a node.
  double boundary_distance(std::size_t n, int di, int dj) const;

 private:
  CutCellGrid() = default;
  void finalize(double exclusion);

  double h_ = 0.0;
  int i0_ = 0, i1_ = -1, j0_ = 0, j1_ = -1;
  std::vector<std::optional<LineCrossings>> rows_;
  std::vector<std::optional<LineCrossings>> cols_;
  std::vector<long> index_;
  std::vector<LatticeNode> nodes_;
};

}  // namespace invdom
