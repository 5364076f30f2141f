#include "photomech/solver.hpp"

#include <cmath>

#include <Eigen/SparseCholesky>

#include "photomech/errors.hpp"
#include "photomech/newton.hpp"

namespace photomech {

void SolverConfig::validate() const {
  if (dt <= 0) throw ConfigError("solver dt must be positive");
  if (newton_tol <= 0) throw ConfigError("solver newton_tol must be positive");
  if (t_end < 0) throw ConfigError("solver t_end must be nonnegative");
  if (max_iter < 1) throw ConfigError("solver max_iter must be at least 1");
}

FieldState initial_state(const Problem& problem) {
  FieldState s = make_reference_state(problem.mesh);
  apply_bcs(problem.mesh, problem.layout, s);
  return s;
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;

int step_count(const SolverConfig& cfg) {
  return std::max(1, int(std::llround(cfg.t_end / cfg.dt)));
}

// Reduced-index bookkeeping for the diagnostic norms.
struct Indexer {
  std::vector<int> potential_dofs;
  std::vector<int> freespace_def_dofs;

  explicit Indexer(const Problem& pr) {
    for (int n = 0; n < int(pr.mesh.nodes.size()); ++n) {
      if (pr.layout.potential[n] >= 0) potential_dofs.push_back(pr.layout.potential[n]);
      if (!pr.mesh.node_in_matter[n] && pr.layout.deformation[n] >= 0)
        for (int i = 0; i < 3; ++i) freespace_def_dofs.push_back(pr.layout.deformation[n] + i);
    }
  }
};

double subnorm(const Eigen::VectorXd& v, const std::vector<int>& idx) {
  double s = 0;
  for (int i : idx) s += v[i] * v[i];
  return std::sqrt(s);
}

// Scatters reduced vectors into a work state and evaluates the discrete
// energy, its gradient, and its Hessian there.
struct Evaluator {
  const Problem& pr;
  FieldState work;

  Evaluator(const Problem& pr, const FieldState& proto) : pr(pr), work(proto) {}

  Eigen::VectorXd grad(const Eigen::VectorXd& x, const DiscreteLoads& loads) {
    scatter(pr.layout, x, work);
    return assemble_quasistatic_residual(pr.mesh, pr.layout, pr.material, loads, work);
  }
  SpMat hess(const Eigen::VectorXd& x) {
    scatter(pr.layout, x, work);
    return assemble_tangent(pr.mesh, pr.layout, pr.material, work);
  }
  EnergyBreakdown energy(const Eigen::VectorXd& x, const DiscreteLoads& loads) {
    scatter(pr.layout, x, work);
    return discrete_energy(pr.mesh, pr.material, loads, work);
  }
  SpMat damping(const Eigen::VectorXd& base_x) {
    scatter(pr.layout, base_x, work);
    return assemble_electronic_damping(pr.mesh, pr.layout, pr.material, work);
  }
};

// Mass structure and the dynamic/algebraic split (a dof is dynamic iff its
// consistent-mass diagonal is positive).
struct DynamicSetup {
  SpMat M;
  std::vector<char> dynamic;
  std::vector<int> alg_idx;
  std::vector<int> full_to_alg;
  std::vector<int> dyn_idx;
  std::vector<int> full_to_dyn;
  Eigen::SimplicialLDLT<SpMat> mass_solver;

  DynamicSetup(const Problem& pr) : M(assemble_mass(pr.mesh, pr.layout, pr.material)) {
    const int n = pr.layout.count;
    Eigen::VectorXd diag = M.diagonal();
    dynamic.assign(n, 0);
    full_to_alg.assign(n, -1);
    full_to_dyn.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      if (diag[i] > 0) {
        dynamic[i] = 1;
        full_to_dyn[i] = int(dyn_idx.size());
        dyn_idx.push_back(i);
      } else {
        full_to_alg[i] = int(alg_idx.size());
        alg_idx.push_back(i);
      }
    }
    if (!dyn_idx.empty()) {
      std::vector<Eigen::Triplet<double>> trip;
      for (int k = 0; k < M.outerSize(); ++k)
        for (SpMat::InnerIterator it(M, k); it; ++it)
          trip.emplace_back(full_to_dyn[it.row()], full_to_dyn[it.col()], it.value());
      SpMat Mdd(int(dyn_idx.size()), int(dyn_idx.size()));
      Mdd.setFromTriplets(trip.begin(), trip.end());
      mass_solver.compute(Mdd);
      if (mass_solver.info() != Eigen::Success)
        throw SingularMatrix("mass matrix factorization failed");
    }
  }

  double kinetic(const Eigen::VectorXd& v) const { return 0.5 * v.dot(M * v); }

  // v on dynamic dofs from momenta; algebraic entries left at zero.
  Eigen::VectorXd velocity_from_momentum(const Eigen::VectorXd& p) const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(p.size());
    if (dyn_idx.empty()) return v;
    Eigen::VectorXd pd(int(dyn_idx.size()));
    for (size_t k = 0; k < dyn_idx.size(); ++k) pd[k] = p[dyn_idx[k]];
    Eigen::VectorXd vd = mass_solver.solve(pd);
    for (size_t k = 0; k < dyn_idx.size(); ++k) v[dyn_idx[k]] = vd[k];
    return v;
  }
};

SpMat submatrix(const SpMat& A, const std::vector<int>& full_to_sub, int count) {
  std::vector<Eigen::Triplet<double>> trip;
  for (int k = 0; k < A.outerSize(); ++k)
    for (SpMat::InnerIterator it(A, k); it; ++it) {
      const int r = full_to_sub[it.row()], c = full_to_sub[it.col()];
      if (r >= 0 && c >= 0) trip.emplace_back(r, c, it.value());
    }
  SpMat S(count, count);
  S.setFromTriplets(trip.begin(), trip.end());
  return S;
}

Eigen::VectorXd subvector(const Eigen::VectorXd& v, const std::vector<int>& idx) {
  Eigen::VectorXd s(int(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) s[k] = v[idx[k]];
  return s;
}

// Massless dofs that are also undamped carry no evolution equation of their
// own: they are equilibrated at fixed dynamic dofs (consistent initialization
// and endpoint reporting for the midpoint scheme). Damped massless dofs keep
// their given initial values; their first-order flow is part of the step.
std::vector<int> equilibrated_dofs(const DynamicSetup& dyn, Evaluator& ev,
                                   const Eigen::VectorXd& x, bool dissipative) {
  std::vector<char> damped(x.size(), 0);
  if (dissipative) {
    Eigen::VectorXd dd = ev.damping(x).diagonal();  // positivity pattern is state independent
    for (int i = 0; i < int(x.size()); ++i) damped[i] = dd[i] > 0;
  }
  std::vector<int> idx;
  for (int i : dyn.alg_idx)
    if (!damped[i]) idx.push_back(i);
  return idx;
}

NewtonResult solve_algebraic(Evaluator& ev, const std::vector<int>& idx, Eigen::VectorXd& x,
                             const DiscreteLoads& loads, const SolverConfig& cfg) {
  if (idx.empty()) return {0, 0.0};
  std::vector<int> full_to_sub(x.size(), -1);
  for (size_t k = 0; k < idx.size(); ++k) full_to_sub[idx[k]] = int(k);
  Eigen::VectorXd xa = subvector(x, idx);
  auto put = [&](const Eigen::VectorXd& xa_) {
    for (size_t k = 0; k < idx.size(); ++k) x[idx[k]] = xa_[k];
  };
  NewtonResult nr = newton_solve(
      xa,
      [&](const Eigen::VectorXd& xa_) {
        put(xa_);
        return subvector(ev.grad(x, loads), idx);
      },
      [&](const Eigen::VectorXd& xa_) {
        put(xa_);
        return submatrix(ev.hess(x), full_to_sub, int(idx.size()));
      },
      cfg.newton_tol, cfg.max_iter);
  put(xa);
  return nr;
}

StepDiagnostics make_diagnostics(const Problem& pr, const Indexer& idx, Evaluator& ev,
                                 const Eigen::VectorXd& x, const Eigen::VectorXd& x0, double dt,
                                 double t, double kinetic, double dissipated,
                                 const NewtonResult& nr, const DiscreteLoads& loads) {
  StepDiagnostics d;
  d.time = t;
  d.kinetic = kinetic;
  EnergyBreakdown e = ev.energy(x, loads);
  d.potential = e.total();
  d.external = e.external;
  d.dissipated_cum = dissipated;
  d.newton_iterations = nr.iterations;
  d.residual_norm = nr.residual_norm;
  if (dt > 0) {
    d.lambda_norm = subnorm(x - x0, idx.potential_dofs) / dt;
    d.lambda_mech_norm = subnorm(x - x0, idx.freespace_def_dofs) / dt;
  }
  d.constraint_residual = subnorm(ev.grad(x, loads), idx.potential_dofs);
  return d;
}

void record(Trajectory& traj, const Problem& pr, Evaluator& ev, const Eigen::VectorXd& x,
            const Eigen::VectorXd& rates, double t, const StepDiagnostics& d) {
  FieldState s = ev.work;
  scatter(pr.layout, x, s);
  scatter_rates(pr.layout, rates, s);
  s.time = t;
  traj.states.push_back(std::move(s));
  traj.diagnostics.push_back(d);
}

}  // namespace

Trajectory solve_quasistatic(const Problem& problem, const SolverConfig& cfg) {
  return solve_quasistatic(problem, cfg, initial_state(problem));
}

Trajectory solve_quasistatic(const Problem& problem, const SolverConfig& cfg,
                             const FieldState& initial) {
  cfg.validate();
  FieldState start = initial;
  apply_bcs(problem.mesh, problem.layout, start);
  Evaluator ev(problem, start);
  Indexer idx(problem);

  Eigen::VectorXd x = gather(problem.layout, start);
  double dissipated = 0;
  Trajectory traj;

  DiscreteLoads loads0 = problem.loads_at(0.0);
  record(traj, problem, ev, x, Eigen::VectorXd::Zero(x.size()), 0.0,
         make_diagnostics(problem, idx, ev, x, x, 0, 0.0, 0.0, 0.0, {0, 0.0}, loads0));

  const int nsteps = step_count(cfg);
  for (int k = 1; k <= nsteps; ++k) {
    const double t = k * cfg.dt;
    DiscreteLoads loads = problem.loads_at(t);
    const Eigen::VectorXd x0 = x;
    NewtonResult nr;

    if (cfg.dissipative) {
      SpMat D = ev.damping(x0);
      nr = newton_solve(
          x,
          [&](const Eigen::VectorXd& xv) {
            return (ev.grad(xv, loads) + D * ((xv - x0) / cfg.dt)).eval();
          },
          [&](const Eigen::VectorXd& xv) { return (ev.hess(xv) + SpMat(D / cfg.dt)).eval(); },
          cfg.newton_tol, cfg.max_iter);
      dissipated += (x - x0).dot(D * (x - x0)) / cfg.dt;
    } else {
      nr = newton_solve(
          x, [&](const Eigen::VectorXd& xv) { return ev.grad(xv, loads); },
          [&](const Eigen::VectorXd& xv) { return ev.hess(xv); }, cfg.newton_tol, cfg.max_iter);
    }

    record(traj, problem, ev, x, (x - x0) / cfg.dt, t,
           make_diagnostics(problem, idx, ev, x, x0, cfg.dt, t, 0.0, dissipated, nr, loads));
  }
  return traj;
}

Trajectory solve_dynamic_lagrangian(const Problem& problem, const SolverConfig& cfg,
                                    const FieldState& initial) {
  cfg.validate();
  if (cfg.dissipative && cfg.integrator == Integrator::Midpoint)
    throw ConfigError("dissipative dynamics require the backward-euler integrator");

  FieldState start = initial;
  apply_bcs(problem.mesh, problem.layout, start);
  Evaluator ev(problem, start);
  Indexer idx(problem);
  DynamicSetup dyn(problem);

  Eigen::VectorXd x = gather(problem.layout, start);
  Eigen::VectorXd v = gather_rates(problem.layout, start);
  const double dt = cfg.dt;
  double dissipated = 0;
  Trajectory traj;

  const std::vector<int> eq_idx = equilibrated_dofs(dyn, ev, x, cfg.dissipative);
  DiscreteLoads loads0 = problem.loads_at(0.0);
  solve_algebraic(ev, eq_idx, x, loads0, cfg);  // consistent initialization
  record(traj, problem, ev, x, v, 0.0,
         make_diagnostics(problem, idx, ev, x, x, 0, 0.0, dyn.kinetic(v), 0.0, {0, 0.0}, loads0));

  const int nsteps = step_count(cfg);
  for (int k = 1; k <= nsteps; ++k) {
    const double t = k * dt;
    const Eigen::VectorXd x0 = x, v0 = v;
    NewtonResult nr;

    if (cfg.integrator == Integrator::Midpoint) {
      DiscreteLoads loads = problem.loads_at(t - dt / 2);
      auto eval_point = [&](const Eigen::VectorXd& x1) {
        Eigen::VectorXd xe = x1;
        for (int i : dyn.dyn_idx) xe[i] = 0.5 * (x0[i] + x1[i]);
        return xe;
      };
      nr = newton_solve(
          x,
          [&](const Eigen::VectorXd& x1) {
            Eigen::VectorXd r = ev.grad(eval_point(x1), loads);
            r += dyn.M * (2.0 * (x1 - x0) / (dt * dt) - 2.0 * v0 / dt);
            return r;
          },
          [&](const Eigen::VectorXd& x1) {
            SpMat K = ev.hess(eval_point(x1));
            for (int c = 0; c < K.outerSize(); ++c)
              if (dyn.dynamic[c])
                for (SpMat::InnerIterator it(K, c); it; ++it) it.valueRef() *= 0.5;
            return (K + SpMat(dyn.M * (2.0 / (dt * dt)))).eval();
          },
          cfg.newton_tol, cfg.max_iter);

      // Endpoint values of the massless dofs for reporting; the unknowns held
      // their midpoint values, which the dynamics itself uses.
      DiscreteLoads loads_end = problem.loads_at(t);
      solve_algebraic(ev, eq_idx, x, loads_end, cfg);
      v = (x - x0) / dt;  // algebraic rate diagnostic
      for (int i : dyn.dyn_idx) v[i] = 2.0 * (x[i] - x0[i]) / dt - v0[i];
      record(traj, problem, ev, x, v, t,
             make_diagnostics(problem, idx, ev, x, x0, dt, t, dyn.kinetic(v), dissipated, nr,
                              loads_end));
    } else {
      DiscreteLoads loads = problem.loads_at(t);
      SpMat D = cfg.dissipative ? ev.damping(x0) : SpMat(x.size(), x.size());
      nr = newton_solve(
          x,
          [&](const Eigen::VectorXd& x1) {
            Eigen::VectorXd r = ev.grad(x1, loads);
            r += dyn.M * ((x1 - x0) / dt - v0) / dt;
            r += D * ((x1 - x0) / dt);
            return r;
          },
          [&](const Eigen::VectorXd& x1) {
            return (ev.hess(x1) + SpMat(dyn.M / (dt * dt)) + SpMat(D / dt)).eval();
          },
          cfg.newton_tol, cfg.max_iter);
      dissipated += (x - x0).dot(D * (x - x0)) / dt;
      v = (x - x0) / dt;
      record(traj, problem, ev, x, v, t,
             make_diagnostics(problem, idx, ev, x, x0, dt, t, dyn.kinetic(v), dissipated, nr,
                              loads));
    }
  }
  return traj;
}

Trajectory solve_dynamic_hamiltonian(const Problem& problem, const SolverConfig& cfg,
                                     const FieldState& initial) {
  cfg.validate();
  if (cfg.dissipative && cfg.integrator == Integrator::Midpoint)
    throw ConfigError("dissipative dynamics require the backward-euler integrator");

  FieldState start = initial;
  apply_bcs(problem.mesh, problem.layout, start);
  Evaluator ev(problem, start);
  Indexer idx(problem);
  DynamicSetup dyn(problem);
  const int n = problem.layout.count;
  const double dt = cfg.dt;
  const bool midpoint = cfg.integrator == Integrator::Midpoint;

  Eigen::VectorXd x = gather(problem.layout, start);
  Eigen::VectorXd p = dyn.M * gather_rates(problem.layout, start);
  double dissipated = 0;
  Trajectory traj;

  auto check_constraint = [&](const Eigen::VectorXd& pv) {
    // The electric (and every other massless) momentum is structural zero:
    // it is never stepped, only monitored.
    double drift = subnorm(pv, dyn.alg_idx);
    if (drift > 1e-10 * (1.0 + pv.norm()))
      throw ConstraintViolation("massless momentum drifted away from zero");
  };

  const std::vector<int> eq_idx = equilibrated_dofs(dyn, ev, x, cfg.dissipative);
  DiscreteLoads loads0 = problem.loads_at(0.0);
  solve_algebraic(ev, eq_idx, x, loads0, cfg);
  check_constraint(p);
  record(traj, problem, ev, x, dyn.velocity_from_momentum(p), 0.0,
         make_diagnostics(problem, idx, ev, x, x, 0, 0.0,
                          dyn.kinetic(dyn.velocity_from_momentum(p)), 0.0, {0, 0.0}, loads0));

  const int nsteps = step_count(cfg);
  for (int k = 1; k <= nsteps; ++k) {
    const double t = k * dt;
    const Eigen::VectorXd x0 = x, p0 = p;
    DiscreteLoads loads = problem.loads_at(midpoint ? t - dt / 2 : t);
    SpMat D = (cfg.dissipative && !midpoint) ? ev.damping(x0) : SpMat(n, n);

    auto split_eval = [&](const Eigen::VectorXd& z, Eigen::VectorXd& xe, Eigen::VectorXd& pe,
                          Eigen::VectorXd& x1, Eigen::VectorXd& p1) {
      x1 = z.head(n);
      p1 = z.tail(n);
      xe = x1;
      pe = p1;
      if (midpoint)
        for (int i : dyn.dyn_idx) {
          xe[i] = 0.5 * (x0[i] + x1[i]);
          pe[i] = 0.5 * (p0[i] + p1[i]);
        }
    };

    Eigen::VectorXd z(2 * n);
    z.head(n) = x;
    z.tail(n) = p;
    NewtonResult nr = newton_solve(
        z,
        [&](const Eigen::VectorXd& zv) {
          Eigen::VectorXd xe, pe, x1, p1;
          split_eval(zv, xe, pe, x1, p1);
          Eigen::VectorXd g = ev.grad(xe, loads) + D * ((x1 - x0) / dt);
          Eigen::VectorXd mdx = dyn.M * (x1 - x0) / dt;
          Eigen::VectorXd r(2 * n);
          for (int i = 0; i < n; ++i) {
            if (dyn.dynamic[i]) {
              r[i] = mdx[i] - pe[i];
              r[n + i] = (p1[i] - p0[i]) / dt + g[i];
            } else {
              r[i] = g[i];
              r[n + i] = p1[i];
            }
          }
          return r;
        },
        [&](const Eigen::VectorXd& zv) {
          Eigen::VectorXd xe, pe, x1, p1;
          split_eval(zv, xe, pe, x1, p1);
          SpMat K = ev.hess(xe);
          std::vector<Eigen::Triplet<double>> trip;
          trip.reserve(K.nonZeros() + dyn.M.nonZeros() + 3 * n);
          for (int c = 0; c < K.outerSize(); ++c) {
            const double scale = (midpoint && dyn.dynamic[c]) ? 0.5 : 1.0;
            for (SpMat::InnerIterator it(K, c); it; ++it) {
              const int row = dyn.dynamic[it.row()] ? n + int(it.row()) : int(it.row());
              trip.emplace_back(row, int(it.col()), it.value() * scale);
            }
          }
          for (int c = 0; c < D.outerSize(); ++c)
            for (SpMat::InnerIterator it(D, c); it; ++it) {
              const int row = dyn.dynamic[it.row()] ? n + int(it.row()) : int(it.row());
              trip.emplace_back(row, int(it.col()), it.value() / dt);
            }
          for (int c = 0; c < dyn.M.outerSize(); ++c)
            for (SpMat::InnerIterator it(dyn.M, c); it; ++it)
              trip.emplace_back(int(it.row()), int(it.col()), it.value() / dt);
          for (int i = 0; i < n; ++i) {
            if (dyn.dynamic[i]) {
              trip.emplace_back(i, n + i, midpoint ? -0.5 : -1.0);
              trip.emplace_back(n + i, n + i, 1.0 / dt);
            } else {
              trip.emplace_back(n + i, n + i, 1.0);
            }
          }
          SpMat J(2 * n, 2 * n);
          J.setFromTriplets(trip.begin(), trip.end());
          return J;
        },
        cfg.newton_tol, cfg.max_iter);

    x = z.head(n);
    p = z.tail(n);
    check_constraint(p);
    if (cfg.dissipative && !midpoint) dissipated += (x - x0).dot(D * (x - x0)) / dt;

    DiscreteLoads loads_end = problem.loads_at(t);
    if (midpoint) solve_algebraic(ev, eq_idx, x, loads_end, cfg);
    Eigen::VectorXd v = dyn.velocity_from_momentum(p);
    for (int i : dyn.alg_idx) v[i] = (x[i] - x0[i]) / dt;  // multiplier rate diagnostics
    record(traj, problem, ev, x, v, t,
           make_diagnostics(problem, idx, ev, x, x0, dt, t, dyn.kinetic(v), dissipated, nr,
                            loads_end));
  }
  return traj;
}

EnergyAudit energy_audit(const Problem& problem, const Trajectory& traj) {
  EnergyAudit audit;
  const size_t n = traj.states.size();
  if (n == 0) return audit;

  audit.time.reserve(n);
  double work = 0;
  double scale = 0;

  for (size_t k = 0; k < n; ++k) {
    const StepDiagnostics& d = traj.diagnostics[k];
    if (k > 0) {
      // Work done by the time variation of the loads, evaluated with the
      // trapezoid state; external potentials are linear in the fields, so
      // averaging the states equals averaging the potentials.
      const FieldState& a = traj.states[k - 1];
      const FieldState& b = traj.states[k];
      FieldState mid = a;
      for (size_t i = 0; i < mid.potential.size(); ++i) {
        mid.potential[i] = 0.5 * (a.potential[i] + b.potential[i]);
        mid.order_trans[i] = 0.5 * (a.order_trans[i] + b.order_trans[i]);
        mid.order_cis[i] = 0.5 * (a.order_cis[i] + b.order_cis[i]);
        mid.position[i] = 0.5 * (a.position[i] + b.position[i]);
      }
      const double t0 = traj.diagnostics[k - 1].time, t1 = d.time;
      double v_new = discrete_energy(problem.mesh, problem.material, problem.loads_at(t1), mid)
                         .external;
      double v_old = discrete_energy(problem.mesh, problem.material, problem.loads_at(t0), mid)
                         .external;
      work += v_new - v_old;  // d(T + Pi)/dt = dV/dt along conservative motion
    }
    audit.time.push_back(d.time);
    audit.kinetic.push_back(d.kinetic);
    audit.potential.push_back(d.potential);
    audit.dissipated.push_back(d.dissipated_cum);
    audit.external_work.push_back(work);

    const double e0 = traj.diagnostics[0].kinetic + traj.diagnostics[0].potential;
    const double closure = d.kinetic + d.potential + d.dissipated_cum - e0 - work;
    audit.closure.push_back(closure);
    audit.max_abs_closure = std::max(audit.max_abs_closure, std::abs(closure));
    scale = std::max(scale, std::abs(d.kinetic) +
                                std::abs(d.potential - traj.diagnostics[0].potential) +
                                d.dissipated_cum + std::abs(work));
  }
  audit.max_rel_closure = scale > 1e-30 ? audit.max_abs_closure / scale : audit.max_abs_closure;
  return audit;
}

}  // namespace photomech
