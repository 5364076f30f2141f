#include "photomech/dofs.hpp"

#include "photomech/errors.hpp"

namespace photomech {

namespace {

bool bc_selects(const HexMesh& mesh, const BoundaryCondition& bc, int node) {
  if (bc.face == -2) return true;
  if (bc.face == -1) {
    for (int f = 0; f < 6; ++f)
      if (on_outer_face(mesh, node, f)) return true;
    return false;
  }
  return on_outer_face(mesh, node, bc.face);
}

}  // namespace

DofLayout build_dof_layout(const HexMesh& mesh, std::vector<BoundaryCondition> bcs) {
  for (const BoundaryCondition& bc : bcs)
    if (bc.face < -2 || bc.face > 5) throw ConfigError("boundary condition face id out of range");

  const int n = int(mesh.nodes.size());
  DofLayout layout;
  layout.bcs = std::move(bcs);
  layout.potential.assign(n, 0);
  layout.order_trans.assign(n, 0);
  layout.order_cis.assign(n, 0);
  layout.deformation.assign(n, 0);

  auto prescribed = [&](Field field, int node) {
    for (const BoundaryCondition& bc : layout.bcs)
      if (bc.field == field && bc_selects(mesh, bc, node)) return true;
    return false;
  };

  int next = 0;
  for (int a = 0; a < n; ++a) {
    layout.potential[a] = prescribed(Field::Potential, a) ? -1 : next++;
    if (mesh.node_in_matter[a]) {
      layout.order_trans[a] = prescribed(Field::OrderTrans, a) ? -1 : next;
      if (layout.order_trans[a] >= 0) next += 3;
      layout.order_cis[a] = prescribed(Field::OrderCis, a) ? -1 : next;
      if (layout.order_cis[a] >= 0) next += 3;
    } else {
      layout.order_trans[a] = -1;
      layout.order_cis[a] = -1;
    }
    layout.deformation[a] = prescribed(Field::Deformation, a) ? -1 : next;
    if (layout.deformation[a] >= 0) next += 3;
  }
  layout.count = next;
  return layout;
}

void apply_bcs(const HexMesh& mesh, const DofLayout& layout, FieldState& state) {
  for (const BoundaryCondition& bc : layout.bcs)
    for (int a = 0; a < int(mesh.nodes.size()); ++a) {
      if (!bc_selects(mesh, bc, a)) continue;
      const Vec3 value = bc.value + bc.gradient * mesh.nodes[a];
      switch (bc.field) {
        case Field::Potential:
          state.potential[a] = value[0];
          break;
        case Field::OrderTrans:
          if (mesh.node_in_matter[a]) state.order_trans[a] = value;
          break;
        case Field::OrderCis:
          if (mesh.node_in_matter[a]) state.order_cis[a] = value;
          break;
        case Field::Deformation:
          state.position[a] = value;
          break;
      }
    }
}

namespace {

template <typename Get>
void for_each_free(const DofLayout& layout, Get&& get) {
  const int n = int(layout.potential.size());
  for (int a = 0; a < n; ++a) {
    if (layout.potential[a] >= 0) get(layout.potential[a], Field::Potential, a, 0);
    for (int i = 0; i < 3; ++i) {
      if (layout.order_trans[a] >= 0) get(layout.order_trans[a] + i, Field::OrderTrans, a, i);
      if (layout.order_cis[a] >= 0) get(layout.order_cis[a] + i, Field::OrderCis, a, i);
      if (layout.deformation[a] >= 0) get(layout.deformation[a] + i, Field::Deformation, a, i);
    }
  }
}

}  // namespace

Eigen::VectorXd gather(const DofLayout& layout, const FieldState& state) {
  Eigen::VectorXd x(layout.count);
  for_each_free(layout, [&](int dof, Field field, int a, int i) {
    switch (field) {
      case Field::Potential: x[dof] = state.potential[a]; break;
      case Field::OrderTrans: x[dof] = state.order_trans[a][i]; break;
      case Field::OrderCis: x[dof] = state.order_cis[a][i]; break;
      case Field::Deformation: x[dof] = state.position[a][i]; break;
    }
  });
  return x;
}

void scatter(const DofLayout& layout, const Eigen::VectorXd& x, FieldState& state) {
  for_each_free(layout, [&](int dof, Field field, int a, int i) {
    switch (field) {
      case Field::Potential: state.potential[a] = x[dof]; break;
      case Field::OrderTrans: state.order_trans[a][i] = x[dof]; break;
      case Field::OrderCis: state.order_cis[a][i] = x[dof]; break;
      case Field::Deformation: state.position[a][i] = x[dof]; break;
    }
  });
}

Eigen::VectorXd gather_rates(const DofLayout& layout, const FieldState& state) {
  Eigen::VectorXd v(layout.count);
  for_each_free(layout, [&](int dof, Field field, int a, int i) {
    switch (field) {
      case Field::Potential: v[dof] = 0; break;  // degenerate field, no rate
      case Field::OrderTrans: v[dof] = state.order_trans_rate[a][i]; break;
      case Field::OrderCis: v[dof] = state.order_cis_rate[a][i]; break;
      case Field::Deformation: v[dof] = state.velocity[a][i]; break;
    }
  });
  return v;
}

void scatter_rates(const DofLayout& layout, const Eigen::VectorXd& v, FieldState& state) {
  for_each_free(layout, [&](int dof, Field field, int a, int i) {
    switch (field) {
      case Field::Potential: break;
      case Field::OrderTrans: state.order_trans_rate[a][i] = v[dof]; break;
      case Field::OrderCis: state.order_cis_rate[a][i] = v[dof]; break;
      case Field::Deformation: state.velocity[a][i] = v[dof]; break;
    }
  });
}

}  // namespace photomech
