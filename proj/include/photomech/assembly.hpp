#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "photomech/dofs.hpp"
#include "photomech/material.hpp"
#include "photomech/mesh.hpp"
#include "photomech/state.hpp"

namespace photomech {

// Surface loads on a set of matter-boundary facets selected by matter-box
// face id (-1 = all). Overlapping patches act additively.
struct SurfacePatchLoad {
  int face = -1;
  SurfaceLoads loads;
};

struct DiscreteLoads {
  BulkLoads bulk;  // uniform over the matter region
  std::vector<SurfacePatchLoad> surface;
};

// Dissipative quasi-static increment: the electronic rate is the backward
// difference against *base over dt, and the volume metric of the dissipation
// term is frozen at *base so the residual stays an exact gradient of the
// incremental functional. base == nullptr assembles the energetic case.
struct IncrementSpec {
  const FieldState* base = nullptr;
  double dt = 0;
};

struct EnergyBreakdown {
  double internal = 0;  // field + coupling + stored energy, plus free space
  double external = 0;  // potential of prescribed bulk and surface loads
  double total() const { return internal + external; }
};

EnergyBreakdown discrete_energy(const HexMesh& mesh, const MaterialParams& p,
                                const DiscreteLoads& loads, const FieldState& state);

// Weak-form residual of the coupled electric/electronic/mechanical system on
// the free dofs; equals the gradient of the discrete total potential energy
// (energetic case) or of the incremental functional (dissipative case).
Eigen::VectorXd assemble_quasistatic_residual(const HexMesh& mesh, const DofLayout& layout,
                                              const MaterialParams& p, const DiscreteLoads& loads,
                                              const FieldState& state,
                                              const IncrementSpec& inc = {});

// Jacobian of the residual. Dead loads contribute nothing, so the loads do
// not appear. Symmetric (Hessian structure) in both cases.
Eigen::SparseMatrix<double> assemble_tangent(const HexMesh& mesh, const DofLayout& layout,
                                             const MaterialParams& p, const FieldState& state,
                                             const IncrementSpec& inc = {});

// Consistent mass: mass_density on deformation blocks and electronic_inertia
// on electronic blocks, matter cells only. The potential block is zero.
Eigen::SparseMatrix<double> assemble_mass(const HexMesh& mesh, const DofLayout& layout,
                                          const MaterialParams& p);

// gamma0 * integral of J(base) Na Nb over matter, electronic blocks only.
// Multiplying by an electronic rate vector gives the dissipative source.
Eigen::SparseMatrix<double> assemble_electronic_damping(const HexMesh& mesh,
                                                        const DofLayout& layout,
                                                        const MaterialParams& p,
                                                        const FieldState& base);

// Facet-integrated interface conditions. residual = measured - prescribed
// with measured flux = int (D_free - D_matter).N dA, prescribed = int q dA,
// and measured traction = int (P_free - P_matter).N dA, prescribed =
// -int t dA. On boundary facets without a free-space neighbor the free-side
// fields are zero.
struct FacetJump {
  int facet = -1;
  double area = 0;
  double flux_measured = 0;
  double flux_prescribed = 0;
  double flux_residual = 0;
  Vec3 traction_measured;
  Vec3 traction_prescribed;
  Vec3 traction_residual;
};

std::vector<FacetJump> interface_jump_check(const HexMesh& mesh, const MaterialParams& p,
                                            const DiscreteLoads& loads, const FieldState& state);

}  // namespace photomech
