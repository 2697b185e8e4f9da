#include "gravdg/mesh.hpp"

#include <cmath>
#include <string>

#include "gravdg/errors.hpp"

namespace gravdg {

Mesh1D make_mesh_1d(double a, double b, int n_cells) {
  if (!(b > a)) throw ConfigError("1D mesh requires b > a");
  if (n_cells < 1) throw ConfigError("1D mesh requires at least one cell");
  Mesh1D m;
  m.a = a;
  m.b = b;
  m.n_cells = n_cells;
  m.dx = (b - a) / n_cells;
  return m;
}

Mesh2D make_mesh_2d(const Geometry2D& g) {
  if (!(g.xmax > g.xmin) || !(g.ymax > g.ymin)) throw ConfigError("2D mesh requires positive extents");
  if (g.nx < 1 || g.ny < 1) throw ConfigError("2D mesh requires at least one cell per axis");
  const bool annulus = g.r_outer > 0.0;
  if (annulus && g.periodic) throw ConfigError("periodic boundaries require a full rectangle");
  if (annulus && !(g.r_outer > g.r_inner)) throw ConfigError("annulus requires r_outer > r_inner");

  Mesh2D m;
  m.geom = g;
  m.dx = (g.xmax - g.xmin) / g.nx;
  m.dy = (g.ymax - g.ymin) / g.ny;
  m.active_index.assign(static_cast<size_t>(g.nx) * g.ny, -1);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      bool active = true;
      if (annulus) {
        const double xc = g.xmin + (g.xmax - g.xmin) * (i + 0.5) / g.nx;
        const double yc = g.ymin + (g.ymax - g.ymin) * (j + 0.5) / g.ny;
        const double r = std::hypot(xc, yc);
        active = r > g.r_inner && r < g.r_outer;
      }
      if (active) {
        m.active_index[j * g.nx + i] = m.n_cells();
        m.cell_ij.push_back({i, j});
      }
    }
  }
  if (m.n_cells() == 0) throw ConfigError("2D mesh has no active cells");

  auto neighbor = [&](int i, int j) -> int {
    if (g.periodic) {
      i = (i + g.nx) % g.nx;
      j = (j + g.ny) % g.ny;
    }
    if (i < 0 || i >= g.nx || j < 0 || j >= g.ny) return -1;
    return m.active_index[j * g.nx + i];
  };

  const int n = m.n_cells();
  m.cell_faces.assign(n, {-1, -1, -1, -1});
  auto add_face = [&](int axis, int minus, int plus) {
    Face f;
    f.axis = axis;
    f.minus = minus;
    f.plus = plus;
    if (minus < 0 || plus < 0) f.boundary_slot = m.n_boundary_faces++;
    m.faces.push_back(f);
    return static_cast<int>(m.faces.size()) - 1;
  };
  for (int c = 0; c < n; ++c) {
    const auto [i, j] = m.cell_ij[c];
    m.cell_faces[c][1] = add_face(0, c, neighbor(i + 1, j));
    m.cell_faces[c][3] = add_face(1, c, neighbor(i, j + 1));
  }
  for (int c = 0; c < n; ++c) {
    const auto [i, j] = m.cell_ij[c];
    const int w = neighbor(i - 1, j);
    m.cell_faces[c][0] = w >= 0 ? m.cell_faces[w][1] : add_face(0, -1, c);
    const int s = neighbor(i, j - 1);
    m.cell_faces[c][2] = s >= 0 ? m.cell_faces[s][3] : add_face(1, -1, c);
  }
  return m;
}

}  // namespace gravdg
