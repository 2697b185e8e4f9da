#pragma once

// Uniform 1D meshes and uniform 2D meshes with an optional annular active region.

#include <array>
#include <vector>

namespace gravdg {

struct Mesh1D {
  double a = 0.0;
  double b = 1.0;
  int n_cells = 1;
  double dx = 1.0;

  /// Physical coordinate of reference point X in [-1, 1] of `cell`.
  /// Shared interface nodes of neighboring cells evaluate to the same double.
  double node_x(int cell, double X) const {
    return a + (b - a) * (cell + 0.5 * (1.0 + X)) / n_cells;
  }
  double center(int cell) const { return a + (b - a) * (cell + 0.5) / n_cells; }
};

/// Throws ConfigError on b <= a or n_cells < 1.
Mesh1D make_mesh_1d(double a, double b, int n_cells);

struct Geometry2D {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  int nx = 1, ny = 1;
  bool periodic = false;
  /// Cells are active when r_inner < |center| < r_outer; disabled if r_outer <= 0.
  double r_inner = 0.0;
  double r_outer = 0.0;
};

/// Face between two active cells, or between an active cell and the outside (id -1).
/// For axis 0 `minus` is the left cell, for axis 1 the bottom cell.
struct Face {
  int axis = 0;
  int minus = -1;
  int plus = -1;
  int boundary_slot = -1;  ///< index into boundary ghost storage, -1 for interior faces
};

struct Mesh2D {
  Geometry2D geom;
  double dx = 1.0, dy = 1.0;
  std::vector<int> active_index;               ///< (j*nx + i) -> active id or -1
  std::vector<std::array<int, 2>> cell_ij;     ///< active id -> (i, j)
  std::vector<Face> faces;
  std::vector<std::array<int, 4>> cell_faces;  ///< active id -> face ids (x-, x+, y-, y+)
  int n_boundary_faces = 0;

  int n_cells() const { return static_cast<int>(cell_ij.size()); }
  double node_x(int cell, double X) const {
    return geom.xmin + (geom.xmax - geom.xmin) * (cell_ij[cell][0] + 0.5 * (1.0 + X)) / geom.nx;
  }
  double node_y(int cell, double Y) const {
    return geom.ymin + (geom.ymax - geom.ymin) * (cell_ij[cell][1] + 0.5 * (1.0 + Y)) / geom.ny;
  }
  double cell_volume() const { return dx * dy; }
};

/// Throws ConfigError on invalid extents, periodic annuli, or an empty active set.
Mesh2D make_mesh_2d(const Geometry2D& g);

}  // namespace gravdg
