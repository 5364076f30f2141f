#pragma once

#include <array>

#include "photomech/mesh.hpp"
#include "photomech/species.hpp"
#include "photomech/state.hpp"
#include "photomech/tensor.hpp"

namespace photomech {

// Corner signs of the reference cube [-1,1]^3 in the cell's corner order.
inline constexpr std::array<std::array<int, 3>, 8> kHexCornerSign = {{
    {-1, -1, -1}, {1, -1, -1}, {1, 1, -1}, {-1, 1, -1},
    {-1, -1, 1}, {1, -1, 1}, {1, 1, 1}, {-1, 1, 1},
}};

// Shape functions and their material gradients at one quadrature point.
struct ShapeData {
  std::array<double, 8> N{};
  std::array<Vec3, 8> grad{};
  double weight = 0;  // quadrature weight times metric determinant
  Vec3 X;             // material position of the point
};

// 2x2x2 Gauss points on [-1,1]^3, unit weights.
const std::array<Vec3, 8>& hex_gauss_points();

// Cells are axis-aligned boxes, so the reference map is a per-axis affine
// stretch; corner 0 / corner 6 give the box extents.
Vec3 cell_local_coords(const HexMesh& mesh, int cell, const Vec3& X);

ShapeData hex_shape_data(const HexMesh& mesh, int cell, const Vec3& xi, double qweight);

// Interpolated fields and kinematics of one cell at one quadrature point.
// Electronic entries are filled only for matter cells.
struct PointFields {
  double potential = 0;
  Vec3 E;  // -grad potential
  Species<Vec3> order;
  Species<Mat3> order_grad;
  Mat3 F;
};

PointFields evaluate_fields(const HexMesh& mesh, int cell, const ShapeData& sd,
                            const FieldState& state);

// The four facet quadrature points: physical positions on the facet plus the
// area weight (facet area / 4 on the axis-aligned rectangle).
struct FacetQuadrature {
  std::array<Vec3, 4> points;
  double weight = 0;
};

FacetQuadrature facet_quadrature(const HexMesh& mesh, const MeshFacet& facet);

}  // namespace photomech
