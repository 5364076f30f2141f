#include "photomech/assembly.hpp"

#include <cstdio>

#include "photomech/constitutive.hpp"
#include "photomech/element.hpp"
#include "photomech/energy.hpp"
#include "photomech/errors.hpp"

namespace photomech {

namespace {

Kinematics cell_kinematics(const Mat3& F, int cell) {
  if (det(F) <= 0) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "non-positive Jacobian in cell %d", cell);
    throw NonPositiveJacobian(msg);
  }
  return build_kinematics(F);
}

// Local dof numbering inside one cell: 8 potential, then 3x8 per remaining
// field. Free-space cells use only the potential and deformation ranges.
constexpr int kPot = 0, kTrans = 8, kCis = 32, kDef = 56, kLocal = 80;

std::array<int, kLocal> local_to_global(const MeshCell& cell, const DofLayout& layout) {
  std::array<int, kLocal> map;
  for (int a = 0; a < 8; ++a) {
    const int n = cell.nodes[a];
    map[kPot + a] = layout.potential[n];
    for (int i = 0; i < 3; ++i) {
      map[kTrans + 3 * a + i] = layout.order_trans[n] < 0 ? -1 : layout.order_trans[n] + i;
      map[kCis + 3 * a + i] = layout.order_cis[n] < 0 ? -1 : layout.order_cis[n] + i;
      map[kDef + 3 * a + i] = layout.deformation[n] < 0 ? -1 : layout.deformation[n] + i;
    }
  }
  return map;
}

double patch_charge(const DiscreteLoads& loads, const MeshFacet& facet) {
  double q = 0;
  for (const SurfacePatchLoad& p : loads.surface)
    if (p.face == -1 || p.face == facet.face) q += p.loads.surface_charge;
  return q;
}

SurfaceLoads patch_loads(const DiscreteLoads& loads, const MeshFacet& facet) {
  SurfaceLoads sum;
  for (const SurfacePatchLoad& p : loads.surface)
    if (p.face == -1 || p.face == facet.face) {
      sum.surface_charge += p.loads.surface_charge;
      sum.electronic_flux.trans = sum.electronic_flux.trans + p.loads.electronic_flux.trans;
      sum.electronic_flux.cis = sum.electronic_flux.cis + p.loads.electronic_flux.cis;
      sum.traction = sum.traction + p.loads.traction;
    }
  return sum;
}

}  // namespace

EnergyBreakdown discrete_energy(const HexMesh& mesh, const MaterialParams& p,
                                const DiscreteLoads& loads, const FieldState& state) {
  EnergyBreakdown e;
  for (int c = 0; c < int(mesh.cells.size()); ++c) {
    for (const Vec3& xi : hex_gauss_points()) {
      ShapeData sd = hex_shape_data(mesh, c, xi, 1.0);
      PointFields pf = evaluate_fields(mesh, c, sd, state);
      Kinematics kin = cell_kinematics(pf.F, c);
      if (mesh.cells[c].matter) {
        e.internal += sd.weight * internal_energy(pf.E, pf.order, pf.order_grad, kin, p);
        Vec3 y;  // deformed position for the body-force potential
        for (int a = 0; a < 8; ++a)
          y = y + sd.N[a] * state.position[mesh.cells[c].nodes[a]];
        e.external += sd.weight * external_potential_bulk(pf.potential, pf.order, y, loads.bulk);
      } else {
        e.internal += sd.weight * free_space_energy(pf.E, kin, p);
      }
    }
  }
  for (const MeshFacet& facet : mesh.matter_boundary) {
    SurfaceLoads sl = patch_loads(loads, facet);
    FacetQuadrature fq = facet_quadrature(mesh, facet);
    for (const Vec3& X : fq.points) {
      ShapeData sd =
          hex_shape_data(mesh, facet.matter_cell, cell_local_coords(mesh, facet.matter_cell, X), 0);
      PointFields pf = evaluate_fields(mesh, facet.matter_cell, sd, state);
      Vec3 y;
      for (int a = 0; a < 8; ++a)
        y = y + sd.N[a] * state.position[mesh.cells[facet.matter_cell].nodes[a]];
      e.external += fq.weight * external_potential_surface(pf.potential, pf.order, y, sl);
    }
  }
  return e;
}

Eigen::VectorXd assemble_quasistatic_residual(const HexMesh& mesh, const DofLayout& layout,
                                              const MaterialParams& p, const DiscreteLoads& loads,
                                              const FieldState& state, const IncrementSpec& inc) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(layout.count);

  for (int c = 0; c < int(mesh.cells.size()); ++c) {
    const MeshCell& cell = mesh.cells[c];
    std::array<double, kLocal> rl{};
    for (const Vec3& xi : hex_gauss_points()) {
      ShapeData sd = hex_shape_data(mesh, c, xi, 1.0);
      PointFields pf = evaluate_fields(mesh, c, sd, state);
      Kinematics kin = cell_kinematics(pf.F, c);
      const double w = sd.weight;

      if (cell.matter) {
        MatterPoint pt{pf.E, pf.order, pf.order_grad, {}, {}};
        ElectricState el = electric_flux(pt, kin, p);
        ElectronicState tron = electronic_state(pt, kin, p, loads.bulk);
        StressState st = total_stress(pt, kin, p);
        for (int a = 0; a < 8; ++a) {
          rl[kPot + a] += w * (dot(el.flux_total, sd.grad[a]) + loads.bulk.free_charge * sd.N[a]);
          const Vec3 ft = st.total * sd.grad[a];
          const Vec3 st_t = tron.stress.trans * sd.grad[a];
          const Vec3 st_c = tron.stress.cis * sd.grad[a];
          for (int i = 0; i < 3; ++i) {
            rl[kTrans + 3 * a + i] +=
                w * (st_t[i] + sd.N[a] * (tron.source_energetic.trans[i] -
                                          tron.ext_source_total.trans[i]));
            rl[kCis + 3 * a + i] +=
                w * (st_c[i] +
                     sd.N[a] * (tron.source_energetic.cis[i] - tron.ext_source_total.cis[i]));
            rl[kDef + 3 * a + i] += w * (ft[i] - loads.bulk.body_force[i] * sd.N[a]);
          }
        }
      } else {
        Vec3 flux = free_space_flux(pf.E, kin, p);
        Mat3 stress = free_space_stress(pf.E, kin, p);
        for (int a = 0; a < 8; ++a) {
          rl[kPot + a] += w * dot(flux, sd.grad[a]);
          const Vec3 fs = stress * sd.grad[a];
          for (int i = 0; i < 3; ++i) rl[kDef + 3 * a + i] += w * fs[i];
        }
      }
    }
    const std::array<int, kLocal> map = local_to_global(cell, layout);
    for (int l = 0; l < kLocal; ++l)
      if (map[l] >= 0) r[map[l]] += rl[l];
  }

  // Surface loads on the matter boundary.
  for (const MeshFacet& facet : mesh.matter_boundary) {
    SurfaceLoads sl = patch_loads(loads, facet);
    FacetQuadrature fq = facet_quadrature(mesh, facet);
    const MeshCell& cell = mesh.cells[facet.matter_cell];
    for (const Vec3& X : fq.points) {
      ShapeData sd =
          hex_shape_data(mesh, facet.matter_cell, cell_local_coords(mesh, facet.matter_cell, X), 0);
      for (int a = 0; a < 8; ++a) {
        const int n = cell.nodes[a];
        const double wN = fq.weight * sd.N[a];
        if (layout.potential[n] >= 0) r[layout.potential[n]] += wN * sl.surface_charge;
        for (int i = 0; i < 3; ++i) {
          if (layout.order_trans[n] >= 0)
            r[layout.order_trans[n] + i] -= wN * sl.electronic_flux.trans[i];
          if (layout.order_cis[n] >= 0)
            r[layout.order_cis[n] + i] -= wN * sl.electronic_flux.cis[i];
          if (layout.deformation[n] >= 0) r[layout.deformation[n] + i] -= wN * sl.traction[i];
        }
      }
    }
  }

  if (inc.base != nullptr) {
    if (inc.dt <= 0) throw ConfigError("dissipative increment requires dt > 0");
    Eigen::SparseMatrix<double> damping = assemble_electronic_damping(mesh, layout, p, *inc.base);
    r += damping * ((gather(layout, state) - gather(layout, *inc.base)) / inc.dt);
  }
  return r;
}

Eigen::SparseMatrix<double> assemble_tangent(const HexMesh& mesh, const DofLayout& layout,
                                             const MaterialParams& p, const FieldState& state,
                                             const IncrementSpec& inc) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.cells.size() * 4096);

  for (int c = 0; c < int(mesh.cells.size()); ++c) {
    const MeshCell& cell = mesh.cells[c];
    std::array<double, kLocal * kLocal> kl{};
    auto K = [&](int i, int j) -> double& { return kl[i * kLocal + j]; };

    for (const Vec3& xi : hex_gauss_points()) {
      ShapeData sd = hex_shape_data(mesh, c, xi, 1.0);
      PointFields pf = evaluate_fields(mesh, c, sd, state);
      Kinematics kin = cell_kinematics(pf.F, c);
      const double w = sd.weight;

      PointTangent t = cell.matter ? matter_point_tangent({pf.E, pf.order, pf.order_grad, {}, {}},
                                                          kin, p)
                                   : free_space_point_tangent(pf.E, kin, p);

      for (int a = 0; a < 8; ++a) {
        const Vec3& ga = sd.grad[a];
        for (int b = 0; b < 8; ++b) {
          const Vec3& gb = sd.grad[b];

          // potential-potential: E enters with a minus sign on both slots.
          K(kPot + a, kPot + b) += w * dot(ga, t.EE * gb);

          // potential-deformation (both cell types).
          for (int m = 0; m < 3; ++m) {
            double v = 0;
            for (int j = 0; j < 3; ++j)
              for (int n = 0; n < 3; ++n) v += ga[j] * t.EF[j](m, n) * gb[n];
            v *= -w;
            K(kPot + a, kDef + 3 * b + m) += v;
            K(kDef + 3 * b + m, kPot + a) += v;
          }

          // deformation-deformation.
          const Mat3 dd = contract_24(t.FF, ga, gb);
          for (int m = 0; m < 3; ++m)
            for (int q = 0; q < 3; ++q) K(kDef + 3 * a + m, kDef + 3 * b + q) += w * dd(m, q);

          if (!cell.matter) continue;

          for (int i = 0; i < 3; ++i) {
            // potential-electronic.
            double vt = 0, vc = 0;
            for (int j = 0; j < 3; ++j) {
              vt += ga[j] * t.Ey.trans(j, i);
              vc += ga[j] * t.Ey.cis(j, i);
            }
            vt *= -w * sd.N[b];
            vc *= -w * sd.N[b];
            K(kPot + a, kTrans + 3 * b + i) += vt;
            K(kTrans + 3 * b + i, kPot + a) += vt;
            K(kPot + a, kCis + 3 * b + i) += vc;
            K(kCis + 3 * b + i, kPot + a) += vc;

            // electronic-electronic (local part plus gradient stiffness).
            const double gg = dot(ga, gb);
            for (int j = 0; j < 3; ++j) {
              K(kTrans + 3 * a + i, kTrans + 3 * b + j) +=
                  w * (sd.N[a] * sd.N[b] * t.yy.trans(i, j) +
                       (i == j ? t.grad_diag.trans * gg : 0.0));
              K(kCis + 3 * a + i, kCis + 3 * b + j) +=
                  w * (sd.N[a] * sd.N[b] * t.yy.cis(i, j) + (i == j ? t.grad_diag.cis * gg : 0.0));
            }

            // electronic-deformation.
            for (int m = 0; m < 3; ++m) {
              double wt = 0, wc = 0;
              for (int n = 0; n < 3; ++n) {
                wt += t.yF.trans[i](m, n) * gb[n];
                wc += t.yF.cis[i](m, n) * gb[n];
              }
              wt *= w * sd.N[a];
              wc *= w * sd.N[a];
              K(kTrans + 3 * a + i, kDef + 3 * b + m) += wt;
              K(kDef + 3 * b + m, kTrans + 3 * a + i) += wt;
              K(kCis + 3 * a + i, kDef + 3 * b + m) += wc;
              K(kDef + 3 * b + m, kCis + 3 * a + i) += wc;
            }
          }
        }
      }
    }

    const std::array<int, kLocal> map = local_to_global(cell, layout);
    for (int i = 0; i < kLocal; ++i) {
      if (map[i] < 0) continue;
      for (int j = 0; j < kLocal; ++j)
        if (map[j] >= 0 && K(i, j) != 0.0) trip.emplace_back(map[i], map[j], K(i, j));
    }
  }

  Eigen::SparseMatrix<double> T(layout.count, layout.count);
  T.setFromTriplets(trip.begin(), trip.end());
  if (inc.base != nullptr) {
    if (inc.dt <= 0) throw ConfigError("dissipative increment requires dt > 0");
    T += (assemble_electronic_damping(mesh, layout, p, *inc.base) / inc.dt).eval();
  }
  return T;
}

Eigen::SparseMatrix<double> assemble_mass(const HexMesh& mesh, const DofLayout& layout,
                                          const MaterialParams& p) {
  std::vector<Eigen::Triplet<double>> trip;
  for (int c = 0; c < int(mesh.cells.size()); ++c) {
    const MeshCell& cell = mesh.cells[c];
    if (!cell.matter) continue;
    for (const Vec3& xi : hex_gauss_points()) {
      ShapeData sd = hex_shape_data(mesh, c, xi, 1.0);
      for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
          const double nn = sd.weight * sd.N[a] * sd.N[b];
          const int na = cell.nodes[a], nb = cell.nodes[b];
          if (p.electronic_inertia > 0) {
            if (layout.order_trans[na] >= 0 && layout.order_trans[nb] >= 0)
              for (int i = 0; i < 3; ++i)
                trip.emplace_back(layout.order_trans[na] + i, layout.order_trans[nb] + i,
                                  p.electronic_inertia * nn);
            if (layout.order_cis[na] >= 0 && layout.order_cis[nb] >= 0)
              for (int i = 0; i < 3; ++i)
                trip.emplace_back(layout.order_cis[na] + i, layout.order_cis[nb] + i,
                                  p.electronic_inertia * nn);
          }
          if (layout.deformation[na] >= 0 && layout.deformation[nb] >= 0)
            for (int i = 0; i < 3; ++i)
              trip.emplace_back(layout.deformation[na] + i, layout.deformation[nb] + i,
                                p.mass_density * nn);
        }
    }
  }
  Eigen::SparseMatrix<double> M(layout.count, layout.count);
  M.setFromTriplets(trip.begin(), trip.end());
  return M;
}

Eigen::SparseMatrix<double> assemble_electronic_damping(const HexMesh& mesh,
                                                        const DofLayout& layout,
                                                        const MaterialParams& p,
                                                        const FieldState& base) {
  std::vector<Eigen::Triplet<double>> trip;
  if (p.gamma0 > 0) {
    for (int c = 0; c < int(mesh.cells.size()); ++c) {
      const MeshCell& cell = mesh.cells[c];
      if (!cell.matter) continue;
      for (const Vec3& xi : hex_gauss_points()) {
        ShapeData sd = hex_shape_data(mesh, c, xi, 1.0);
        PointFields pf = evaluate_fields(mesh, c, sd, base);
        const double J = det(pf.F);
        if (J <= 0) throw NonPositiveJacobian("non-positive Jacobian in damping base state");
        for (int a = 0; a < 8; ++a)
          for (int b = 0; b < 8; ++b) {
            const double m = p.gamma0 * J * sd.weight * sd.N[a] * sd.N[b];
            const int na = cell.nodes[a], nb = cell.nodes[b];
            if (layout.order_trans[na] >= 0 && layout.order_trans[nb] >= 0)
              for (int i = 0; i < 3; ++i)
                trip.emplace_back(layout.order_trans[na] + i, layout.order_trans[nb] + i, m);
            if (layout.order_cis[na] >= 0 && layout.order_cis[nb] >= 0)
              for (int i = 0; i < 3; ++i)
                trip.emplace_back(layout.order_cis[na] + i, layout.order_cis[nb] + i, m);
          }
      }
    }
  }
  Eigen::SparseMatrix<double> D(layout.count, layout.count);
  D.setFromTriplets(trip.begin(), trip.end());
  return D;
}

std::vector<FacetJump> interface_jump_check(const HexMesh& mesh, const MaterialParams& p,
                                            const DiscreteLoads& loads, const FieldState& state) {
  std::vector<FacetJump> jumps;
  jumps.reserve(mesh.matter_boundary.size());

  for (int fi = 0; fi < int(mesh.matter_boundary.size()); ++fi) {
    const MeshFacet& facet = mesh.matter_boundary[fi];
    SurfaceLoads sl = patch_loads(loads, facet);
    FacetQuadrature fq = facet_quadrature(mesh, facet);

    FacetJump jump;
    jump.facet = fi;
    jump.area = facet.area;

    for (const Vec3& X : fq.points) {
      // Matter side.
      ShapeData sdm =
          hex_shape_data(mesh, facet.matter_cell, cell_local_coords(mesh, facet.matter_cell, X), 0);
      PointFields pm = evaluate_fields(mesh, facet.matter_cell, sdm, state);
      Kinematics km = cell_kinematics(pm.F, facet.matter_cell);
      MatterPoint pt{pm.E, pm.order, pm.order_grad, {}, {}};
      Vec3 flux_m = electric_flux(pt, km, p).flux_total;
      Mat3 stress_m = total_stress(pt, km, p).total;

      Vec3 flux_f;
      Mat3 stress_f = Mat3::zero();
      if (facet.free_cell >= 0) {
        ShapeData sdf =
            hex_shape_data(mesh, facet.free_cell, cell_local_coords(mesh, facet.free_cell, X), 0);
        PointFields pf = evaluate_fields(mesh, facet.free_cell, sdf, state);
        Kinematics kf = cell_kinematics(pf.F, facet.free_cell);
        flux_f = free_space_flux(pf.E, kf, p);
        stress_f = free_space_stress(pf.E, kf, p);
      }

      jump.flux_measured += fq.weight * dot(flux_f - flux_m, facet.normal);
      jump.flux_prescribed += fq.weight * sl.surface_charge;
      jump.traction_measured =
          jump.traction_measured + fq.weight * ((stress_f - stress_m) * facet.normal);
      jump.traction_prescribed = jump.traction_prescribed - fq.weight * sl.traction;
    }
    jump.flux_residual = jump.flux_measured - jump.flux_prescribed;
    jump.traction_residual = jump.traction_measured - jump.traction_prescribed;
    jumps.push_back(jump);
  }
  return jumps;
}

}  // namespace photomech
