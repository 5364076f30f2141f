#include "photomech/element.hpp"

#include <cmath>

#include "photomech/errors.hpp"

namespace photomech {

const std::array<Vec3, 8>& hex_gauss_points() {
  static const std::array<Vec3, 8> pts = [] {
    const double g = 1.0 / std::sqrt(3.0);
    std::array<Vec3, 8> p;
    for (int c = 0; c < 8; ++c)
      p[c] = Vec3{g * kHexCornerSign[c][0], g * kHexCornerSign[c][1], g * kHexCornerSign[c][2]};
    return p;
  }();
  return pts;
}

Vec3 cell_local_coords(const HexMesh& mesh, int cell, const Vec3& X) {
  const Vec3& lo = mesh.nodes[mesh.cells[cell].nodes[0]];
  const Vec3& hi = mesh.nodes[mesh.cells[cell].nodes[6]];
  Vec3 xi;
  for (int d = 0; d < 3; ++d) xi[d] = 2 * (X[d] - lo[d]) / (hi[d] - lo[d]) - 1;
  return xi;
}

ShapeData hex_shape_data(const HexMesh& mesh, int cell, const Vec3& xi, double qweight) {
  const Vec3& lo = mesh.nodes[mesh.cells[cell].nodes[0]];
  const Vec3& hi = mesh.nodes[mesh.cells[cell].nodes[6]];
  Vec3 half;
  double detJ = 1;
  for (int d = 0; d < 3; ++d) {
    half[d] = 0.5 * (hi[d] - lo[d]);
    detJ *= half[d];
  }
  if (detJ <= 0) throw NonPositiveJacobian("degenerate cell in structured mesh");

  ShapeData sd;
  sd.weight = qweight * detJ;
  for (int d = 0; d < 3; ++d) sd.X[d] = lo[d] + half[d] * (xi[d] + 1);
  for (int c = 0; c < 8; ++c) {
    std::array<double, 3> s, ds;
    for (int d = 0; d < 3; ++d) {
      s[d] = 0.5 * (1 + kHexCornerSign[c][d] * xi[d]);
      ds[d] = 0.5 * kHexCornerSign[c][d];
    }
    sd.N[c] = s[0] * s[1] * s[2];
    // material gradient: d/dX_d = (1/half_d) d/dxi_d
    sd.grad[c] = Vec3{ds[0] * s[1] * s[2] / half[0], s[0] * ds[1] * s[2] / half[1],
                      s[0] * s[1] * ds[2] / half[2]};
  }
  return sd;
}

PointFields evaluate_fields(const HexMesh& mesh, int cell, const ShapeData& sd,
                            const FieldState& state) {
  const MeshCell& c = mesh.cells[cell];
  PointFields pf;
  pf.F = Mat3::zero();
  for (int a = 0; a < 8; ++a) {
    const int n = c.nodes[a];
    pf.potential += sd.N[a] * state.potential[n];
    pf.E = pf.E - state.potential[n] * sd.grad[a];
    pf.F = pf.F + outer(state.position[n], sd.grad[a]);
  }
  if (c.matter) {
    for (int a = 0; a < 8; ++a) {
      const int n = c.nodes[a];
      pf.order.trans = pf.order.trans + sd.N[a] * state.order_trans[n];
      pf.order.cis = pf.order.cis + sd.N[a] * state.order_cis[n];
      pf.order_grad.trans = pf.order_grad.trans + outer(state.order_trans[n], sd.grad[a]);
      pf.order_grad.cis = pf.order_grad.cis + outer(state.order_cis[n], sd.grad[a]);
    }
  }
  return pf;
}

FacetQuadrature facet_quadrature(const HexMesh& mesh, const MeshFacet& facet) {
  const Vec3& p0 = mesh.nodes[facet.nodes[0]];
  const Vec3& p2 = mesh.nodes[facet.nodes[2]];  // opposite corner
  const double g = 1.0 / std::sqrt(3.0);

  const int u = (facet.axis + 1) % 3, v = (facet.axis + 2) % 3;
  Vec3 mid = 0.5 * (p0 + p2);
  double hu = 0.5 * std::abs(p2[u] - p0[u]);
  double hv = 0.5 * std::abs(p2[v] - p0[v]);

  FacetQuadrature q;
  q.weight = facet.area / 4;
  int k = 0;
  for (int su = -1; su <= 1; su += 2)
    for (int sv = -1; sv <= 1; sv += 2) {
      Vec3 p = mid;
      p[u] += su * g * hu;
      p[v] += sv * g * hv;
      q.points[k++] = p;
    }
  return q;
}

}  // namespace photomech
