#pragma once

#include <functional>
#include <vector>

#include "photomech/assembly.hpp"
#include "photomech/dofs.hpp"
#include "photomech/material.hpp"
#include "photomech/mesh.hpp"
#include "photomech/state.hpp"

namespace photomech {

// A fully specified discrete problem: geometry, unknown layout, material,
// and loads as a function of time (profiles baked into loads_at).
struct Problem {
  HexMesh mesh;
  DofLayout layout;
  MaterialParams material;
  std::function<DiscreteLoads(double)> loads_at = [](double) { return DiscreteLoads{}; };
};

// Reference state with the problem's Dirichlet values imposed.
FieldState initial_state(const Problem& problem);

enum class Integrator { Midpoint, BackwardEuler };
enum class Formulation { Dirichlet, HamiltonPrinciple, HamiltonEquations };

struct SolverConfig {
  double newton_tol = 1e-10;
  int max_iter = 30;
  double dt = 1e-2;
  double t_end = 1.0;
  Integrator integrator = Integrator::Midpoint;
  Formulation formulation = Formulation::Dirichlet;
  bool dissipative = false;

  void validate() const;  // throws ConfigError
};

struct StepDiagnostics {
  double time = 0;
  double kinetic = 0;
  double potential = 0;       // internal + external potential energy
  double external = 0;        // external part alone
  double dissipated_cum = 0;  // running integral of twice the dissipation potential
  int newton_iterations = 0;
  double residual_norm = 0;
  double lambda_norm = 0;       // backward-difference rate of the potential dofs
  double lambda_mech_norm = 0;  // deformation rate over pure free-space nodes
  double constraint_residual = 0;  // Gauss-law rows of the energetic residual
};

struct Trajectory {
  std::vector<FieldState> states;           // states[0] is the initial state
  std::vector<StepDiagnostics> diagnostics;  // parallel to states
};

// Sequence of stationarity problems, one per time step. Energetic case:
// stationary total potential energy. Dissipative case: stationary
// incremental functional with the backward-difference electronic rate.
Trajectory solve_quasistatic(const Problem& problem, const SolverConfig& cfg);
Trajectory solve_quasistatic(const Problem& problem, const SolverConfig& cfg,
                             const FieldState& initial);

// Second-order form of the dynamics: implicit midpoint (energetic) or
// backward Euler (dissipative) on M a + grad U = 0, with the potential and
// every other massless dof equilibrated algebraically inside each step.
Trajectory solve_dynamic_lagrangian(const Problem& problem, const SolverConfig& cfg,
                                    const FieldState& initial);

// First-order phase-space form with explicit momenta. The electric momentum
// is structural zero (never stepped); its stationarity row is the Gauss law
// and the multiplier rate diagnostics are reported per step.
Trajectory solve_dynamic_hamiltonian(const Problem& problem, const SolverConfig& cfg,
                                     const FieldState& initial);

struct EnergyAudit {
  std::vector<double> time;
  std::vector<double> kinetic;
  std::vector<double> potential;
  std::vector<double> dissipated;     // cumulative twice-dissipation integral
  std::vector<double> external_work;  // cumulative external-potential change
                                      // from the time variation of the loads
  std::vector<double> closure;        // (T + Pi + D) - (T0 + Pi0) - external_work
  double max_abs_closure = 0;
  double max_rel_closure = 0;  // relative to the trajectory energy scale
};

EnergyAudit energy_audit(const Problem& problem, const Trajectory& traj);

}  // namespace photomech
