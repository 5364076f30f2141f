#pragma once

#include <vector>

#include <Eigen/Core>

#include "photomech/mesh.hpp"
#include "photomech/state.hpp"
#include "photomech/tensor.hpp"

namespace photomech {

enum class Field { Potential, OrderTrans, OrderCis, Deformation };

// Dirichlet data on a domain outer face: prescribed field = value + gradient.X
// at each node of the face. face = -1 selects all six outer faces; face = -2
// selects every node of the mesh (freezes the field over the whole volume).
// For the scalar potential only component 0 of value and row 0 of gradient are
// used. Conditions are applied in order; a later condition overrides an
// earlier one on shared nodes (edges, corners).
struct BoundaryCondition {
  Field field = Field::Potential;
  int face = -1;
  Vec3 value{};
  Mat3 gradient{};
};

// Node-to-equation map of the reduced (free) system. -1 marks a prescribed
// dof or, for electronic fields, a node outside matter where the field does
// not exist. Vector fields store the index of their first component; the
// remaining two follow consecutively.
struct DofLayout {
  int count = 0;
  std::vector<int> potential;
  std::vector<int> order_trans;
  std::vector<int> order_cis;
  std::vector<int> deformation;
  std::vector<BoundaryCondition> bcs;
};

DofLayout build_dof_layout(const HexMesh& mesh, std::vector<BoundaryCondition> bcs);

// Writes the prescribed nodal values of every boundary condition into the
// state. scatter never touches prescribed entries, so one application after
// construction keeps the full state consistent.
void apply_bcs(const HexMesh& mesh, const DofLayout& layout, FieldState& state);

Eigen::VectorXd gather(const DofLayout& layout, const FieldState& state);
void scatter(const DofLayout& layout, const Eigen::VectorXd& x, FieldState& state);
Eigen::VectorXd gather_rates(const DofLayout& layout, const FieldState& state);
void scatter_rates(const DofLayout& layout, const Eigen::VectorXd& v, FieldState& state);

}  // namespace photomech
