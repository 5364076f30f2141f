#pragma once

#include <array>
#include <vector>

#include "photomech/tensor.hpp"

namespace photomech {

// Trilinear hexahedral cell. Corner order follows the usual VTK convention:
// bottom quad counterclockwise, then top quad. Corner 0 is the box minimum
// and corner 6 the maximum, which the local-coordinate map relies on.
struct MeshCell {
  std::array<int, 8> nodes;
  bool matter = true;
};

// Facet of the matter-region boundary. Where a free-space shell is present
// this is an interface facet shared with exactly one free-space cell;
// otherwise free_cell is -1 and the facet lies on the domain boundary.
struct MeshFacet {
  std::array<int, 4> nodes;  // counterclockwise around the outward normal
  int matter_cell = -1;
  int free_cell = -1;
  int axis = 0;   // 0, 1, 2
  int sign = 1;   // outward direction from matter along axis
  int face = 0;   // matter-box face id: 2*axis + (sign > 0)
  double area = 0;
  Vec3 normal;    // sign * e_axis (reference configuration)
};

struct HexMesh {
  std::vector<Vec3> nodes;
  std::vector<MeshCell> cells;
  std::vector<MeshFacet> matter_boundary;
  std::vector<bool> node_in_matter;  // node touches at least one matter cell
  std::array<int, 3> node_count{};   // structured grid extents (nodes per axis)
};

// Structured box: matter block of matter_cells x matter_size, optionally
// wrapped on all six sides by a free-space shell of shell_cells layers with
// physical thickness shell_thickness per side. The matter block spans
// [0, matter_size] on each axis.
struct BoxMeshSpec {
  std::array<int, 3> matter_cells{1, 1, 1};
  Vec3 matter_size{1, 1, 1};
  int shell_cells = 0;
  double shell_thickness = 0;
};

HexMesh build_box_mesh(const BoxMeshSpec& spec);

int node_id(const HexMesh& mesh, int ix, int iy, int iz);
std::array<int, 3> node_grid(const HexMesh& mesh, int node);

// Domain outer faces use the same id scheme as matter-box faces:
// 0 x-, 1 x+, 2 y-, 3 y+, 4 z-, 5 z+.
bool on_outer_face(const HexMesh& mesh, int node, int face);
std::vector<int> outer_face_nodes(const HexMesh& mesh, int face);

}  // namespace photomech
