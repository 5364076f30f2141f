#include "photomech/mesh.hpp"

#include <cstdio>

#include "photomech/errors.hpp"

namespace photomech {

namespace {

// Per-axis node coordinates: shell_cells uniform layers, then matter_cells
// uniform cells, then shell_cells layers again.
std::vector<double> axis_coords(int matter_cells, double length, int shell_cells,
                                double shell_thickness) {
  std::vector<double> x;
  x.reserve(matter_cells + 2 * shell_cells + 1);
  for (int i = 0; i < shell_cells; ++i)
    x.push_back(-shell_thickness + i * shell_thickness / shell_cells);
  for (int i = 0; i <= matter_cells; ++i) x.push_back(i * length / matter_cells);
  for (int i = 1; i <= shell_cells; ++i) x.push_back(length + i * shell_thickness / shell_cells);
  return x;
}

}  // namespace

HexMesh build_box_mesh(const BoxMeshSpec& spec) {
  for (int d = 0; d < 3; ++d) {
    if (spec.matter_cells[d] < 1) throw ConfigError("matter cell count must be positive");
    if (spec.matter_size[d] <= 0) throw ConfigError("matter box size must be positive");
  }
  if (spec.shell_cells < 0) throw ConfigError("shell cell count must be nonnegative");
  if (spec.shell_cells > 0 && spec.shell_thickness <= 0)
    throw ConfigError("shell thickness must be positive when a shell is requested");

  const int ns = spec.shell_cells;
  std::array<std::vector<double>, 3> coords;
  std::array<int, 3> ncells;
  for (int d = 0; d < 3; ++d) {
    coords[d] = axis_coords(spec.matter_cells[d], spec.matter_size[d], ns, spec.shell_thickness);
    ncells[d] = spec.matter_cells[d] + 2 * ns;
  }

  HexMesh mesh;
  mesh.node_count = {int(coords[0].size()), int(coords[1].size()), int(coords[2].size())};
  mesh.nodes.reserve(size_t(mesh.node_count[0]) * mesh.node_count[1] * mesh.node_count[2]);
  for (int iz = 0; iz < mesh.node_count[2]; ++iz)
    for (int iy = 0; iy < mesh.node_count[1]; ++iy)
      for (int ix = 0; ix < mesh.node_count[0]; ++ix)
        mesh.nodes.push_back(Vec3{coords[0][ix], coords[1][iy], coords[2][iz]});

  auto nid = [&](int ix, int iy, int iz) {
    return ix + mesh.node_count[0] * (iy + mesh.node_count[1] * iz);
  };
  auto is_matter = [&](int cx, int cy, int cz) {
    std::array<int, 3> c{cx, cy, cz};
    for (int d = 0; d < 3; ++d)
      if (c[d] < ns || c[d] >= ns + spec.matter_cells[d]) return false;
    return true;
  };
  auto cell_id = [&](int cx, int cy, int cz) {
    return cx + ncells[0] * (cy + ncells[1] * cz);
  };

  mesh.cells.reserve(size_t(ncells[0]) * ncells[1] * ncells[2]);
  for (int cz = 0; cz < ncells[2]; ++cz)
    for (int cy = 0; cy < ncells[1]; ++cy)
      for (int cx = 0; cx < ncells[0]; ++cx) {
        MeshCell cell;
        cell.nodes = {nid(cx, cy, cz),         nid(cx + 1, cy, cz),
                      nid(cx + 1, cy + 1, cz), nid(cx, cy + 1, cz),
                      nid(cx, cy, cz + 1),     nid(cx + 1, cy, cz + 1),
                      nid(cx + 1, cy + 1, cz + 1), nid(cx, cy + 1, cz + 1)};
        cell.matter = is_matter(cx, cy, cz);
        mesh.cells.push_back(cell);
      }

  mesh.node_in_matter.assign(mesh.nodes.size(), false);
  for (const MeshCell& cell : mesh.cells)
    if (cell.matter)
      for (int n : cell.nodes) mesh.node_in_matter[n] = true;

  // Matter-boundary facets: faces of matter cells whose neighbor across the
  // face is free space or outside the grid.
  for (int cz = 0; cz < ncells[2]; ++cz)
    for (int cy = 0; cy < ncells[1]; ++cy)
      for (int cx = 0; cx < ncells[0]; ++cx) {
        if (!is_matter(cx, cy, cz)) continue;
        const std::array<int, 3> c{cx, cy, cz};
        for (int axis = 0; axis < 3; ++axis)
          for (int sign = -1; sign <= 1; sign += 2) {
            std::array<int, 3> nb = c;
            nb[axis] += sign;
            bool outside = nb[axis] < 0 || nb[axis] >= ncells[axis];
            if (!outside && is_matter(nb[0], nb[1], nb[2])) continue;

            MeshFacet facet;
            facet.matter_cell = cell_id(cx, cy, cz);
            facet.free_cell = outside ? -1 : cell_id(nb[0], nb[1], nb[2]);
            facet.axis = axis;
            facet.sign = sign;
            facet.face = 2 * axis + (sign > 0 ? 1 : 0);
            facet.normal = Vec3{};
            facet.normal[axis] = sign;

            // In-plane axes (u, v) chosen so corners run counterclockwise
            // around the outward normal.
            int u = (axis + 1) % 3, v = (axis + 2) % 3;
            if (sign < 0) std::swap(u, v);
            std::array<int, 3> base = c;
            if (sign > 0) base[axis] += 1;
            auto corner = [&](int du, int dv) {
              std::array<int, 3> g = base;
              g[u] += du;
              g[v] += dv;
              return nid(g[0], g[1], g[2]);
            };
            facet.nodes = {corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1)};
            double wu = coords[u][c[u] + 1] - coords[u][c[u]];
            double wv = coords[v][c[v] + 1] - coords[v][c[v]];
            facet.area = wu * wv;
            mesh.matter_boundary.push_back(facet);
          }
      }

  return mesh;
}

int node_id(const HexMesh& mesh, int ix, int iy, int iz) {
  return ix + mesh.node_count[0] * (iy + mesh.node_count[1] * iz);
}

std::array<int, 3> node_grid(const HexMesh& mesh, int node) {
  int ix = node % mesh.node_count[0];
  int rest = node / mesh.node_count[0];
  return {ix, rest % mesh.node_count[1], rest / mesh.node_count[1]};
}

bool on_outer_face(const HexMesh& mesh, int node, int face) {
  std::array<int, 3> g = node_grid(mesh, node);
  int axis = face / 2;
  return (face % 2 == 0) ? g[axis] == 0 : g[axis] == mesh.node_count[axis] - 1;
}

std::vector<int> outer_face_nodes(const HexMesh& mesh, int face) {
  if (face < 0 || face > 5) throw ConfigError("face id must be in [0, 5]");
  std::vector<int> out;
  for (int n = 0; n < int(mesh.nodes.size()); ++n)
    if (on_outer_face(mesh, n, face)) out.push_back(n);
  return out;
}

}  // namespace photomech
