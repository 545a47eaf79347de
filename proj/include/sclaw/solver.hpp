#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sclaw/flux.hpp"
#include "sclaw/grid.hpp"
#include "sclaw/noise.hpp"

namespace sclaw {

/// Explicit Euler-Maruyama discretization of the semi-discrete scheme
///
///   du_j + (F_{j+1/2} - F_{j-1/2})/dx dt
///       = sigma(u_j) dW + integral eta(u_j; z) Ntilde(dz, dt)
///
/// All coefficients are evaluated at the start-of-step state. The step is
/// dt = cfl * dx / Lip(f), rounded down so that T/dt is an integer and dt
/// is an integer multiple of the path's micro-step.
struct SchemeConfig {
    FluxModel flux;
    DiffusionCoefficient sigma;
    JumpCoefficient eta;
    LevyMeasureSpec levy;

    double cfl = 0.5;
    double T = 1.0;
    std::vector<double> record_times;
    /// Sub-step at exact jump times instead of lumping all of a step's
    /// jumps at its end (sensitivity switch; O(dt) difference in L1-mean).
    bool jump_adapted = false;

    /// Pathwise L-infinity bound max{2M, ||u0||_inf} holds up to this slack.
    double linf_slack = 0.05;
    /// Abort when |u_j| exceeds blowup_multiplier times the bound.
    double blowup_multiplier = 10.0;

    /// max{2M, linf0} with M the cutoff of the active noise coefficients.
    double linf_bound(double linf0) const;
};

struct StepPlan {
    double dt = 0.0;
    std::size_t n_steps = 0;
    std::size_t micro_per_step = 0;
    std::vector<std::size_t> record_steps;
    std::vector<double> record_times;  // snapped to the step lattice
};

/// Plans the time stepping for one grid against a path's micro lattice.
/// Throws AlignmentError when no admissible step exists.
StepPlan make_step_plan(const SchemeConfig& config, double dx, double dt_micro,
                        double T_path);

/// Smallest micro step dt = T/n with n a multiple of `divisibility` such
/// that the finest grid's CFL step is resolved: n >= T*lip/(cfl*dx_finest).
double choose_dt_micro(double T, double dx_finest, double cfl, double lipschitz,
                       std::size_t divisibility);

struct DiagnosticsRow {
    std::size_t step;
    double t;
    double mass;
    double bv;
    double linf;
    double l2;
};

struct Trajectory {
    std::vector<LatticeState> snapshots;
    std::vector<DiagnosticsRow> log;
};

/// Per-step view handed to observers (valid only during the callback).
struct StepRecord {
    std::size_t step;
    double t0;
    double dt;
    double dW;
    std::span<const double> marks;
    std::span<const double> u_before;
    std::span<const double> u_after;
    const Grid1D* grid;
};

class StepObserver {
public:
    virtual ~StepObserver() = default;
    virtual void on_step(const StepRecord& record) = 0;
};

/// One explicit step. Throws BlowUpError when the result exceeds the
/// stability guard.
LatticeState step(const LatticeState& state, double dt, double dW,
                  std::span<const double> jump_marks, const SchemeConfig& config);

struct SolveOptions {
    StepObserver* observer = nullptr;
    bool log_diagnostics = true;
};

/// Integrates the scheme over [0, T], consuming the path's Brownian
/// increments and jumps step by step; records snapshots at the plan's
/// record times and per-step diagnostics (mass, BV, L-inf, L2).
Trajectory solve_path(const SchemeConfig& config, const Grid1D& grid,
                      const LatticeState& u0_state, const NoisePath& path,
                      const SolveOptions& options = {});

/// Runs one trajectory per resolution, all driven by the identical noise
/// realization. Grids must share the domain and be nested by powers of 2;
/// every dt must be aligned to the path's micro lattice.
std::vector<Trajectory> coupled_solve(std::span<const SchemeConfig> configs,
                                      std::span<const Grid1D> grids,
                                      const std::function<double(double)>& u0,
                                      const NoisePath& path);

/// Diagnostics CSV: header `step,t,mass,bv,linf,l2`.
void write_diagnostics_csv(std::span<const DiagnosticsRow> log, std::ostream& os,
                           const std::string& provenance = {});

}  // namespace sclaw
