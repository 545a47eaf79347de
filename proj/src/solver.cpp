#include "sclaw/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace sclaw {

double SchemeConfig::linf_bound(double linf0) const {
    double cutoff = 0.0;
    if (!sigma.is_zero()) cutoff = std::max(cutoff, sigma.cutoff_M);
    if (!eta.is_zero() && !levy.empty()) cutoff = std::max(cutoff, eta.cutoff_M);
    return std::max(2.0 * cutoff, linf0);
}

StepPlan make_step_plan(const SchemeConfig& config, double dx, double dt_micro,
                        double T_path) {
    if (!(config.T > 0.0)) throw ConfigError("SchemeConfig: T must be > 0");
    if (!(config.cfl > 0.0 && config.cfl <= 1.0)) {
        throw ConfigError("SchemeConfig: cfl must be in (0, 1]");
    }
    if (config.T > T_path * (1.0 + 1e-12)) {
        throw AlignmentError("path horizon shorter than solve horizon");
    }
    const double n_total_raw = config.T / dt_micro;
    const auto n_total = static_cast<std::size_t>(std::llround(n_total_raw));
    if (n_total == 0 || std::abs(n_total_raw - static_cast<double>(n_total)) > 1e-6) {
        throw AlignmentError("T is not an integer multiple of dt_micro");
    }
    const double dt_raw = config.cfl * dx / config.flux.lipschitz();
    auto m = static_cast<std::size_t>(std::floor(dt_raw / dt_micro + 1e-9));
    if (m < 1) {
        throw AlignmentError("dt_micro exceeds the CFL step for this grid");
    }
    m = std::min(m, n_total);
    while (n_total % m != 0) --m;  // largest admissible divisor

    StepPlan plan;
    plan.micro_per_step = m;
    plan.dt = static_cast<double>(m) * dt_micro;
    plan.n_steps = n_total / m;
    for (double rt : config.record_times) {
        auto s = static_cast<std::size_t>(std::llround(rt / plan.dt));
        s = std::min(s, plan.n_steps);
        if (!plan.record_steps.empty() && plan.record_steps.back() == s) continue;
        if (!plan.record_steps.empty() && plan.record_steps.back() > s) {
            throw ConfigError("record_times must be sorted");
        }
        plan.record_steps.push_back(s);
        plan.record_times.push_back(static_cast<double>(s) * plan.dt);
    }
    return plan;
}

double choose_dt_micro(double T, double dx_finest, double cfl, double lipschitz,
                       std::size_t divisibility) {
    if (divisibility == 0) divisibility = 1;
    const double n_raw = std::max(1.0, T * lipschitz / (cfl * dx_finest));
    auto n = static_cast<std::size_t>(std::ceil(n_raw - 1e-9));
    n = ((n + divisibility - 1) / divisibility) * divisibility;
    return T / static_cast<double>(n);
}

namespace {

struct Workspace {
    std::vector<double> fp;
    std::vector<double> fm;
};

// One explicit update of `in` into `out`; coefficients at the start-of-step
// state. Returns false on guard violation (offending index via *bad_cell).
void eo_arrays(const FluxModel& flux, std::span<const double> u, Workspace& ws) {
    const std::size_t n = u.size();
    ws.fp.resize(n);
    ws.fm.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        ws.fp[j] = flux.eo_plus(u[j]);
        ws.fm[j] = flux.eo_minus(u[j]);
    }
}

void explicit_update(const SchemeConfig& cfg, const Grid1D& grid,
                     std::span<const double> u, std::span<double> out,
                     double dt, double dW, std::span<const double> marks,
                     Workspace& ws) {
    const std::size_t n = u.size();
    const bool periodic = grid.boundary() == Boundary::Periodic;
    const double lambda = dt / grid.dx();
    eo_arrays(cfg.flux, u, ws);
    const bool has_diffusion = !cfg.sigma.is_zero();
    const bool has_jumps = !cfg.eta.is_zero() && !cfg.levy.empty();
    for (std::size_t j = 0; j < n; ++j) {
        const double fp_left = (j > 0) ? ws.fp[j - 1] : (periodic ? ws.fp[n - 1] : 0.0);
        const double fm_right = (j + 1 < n) ? ws.fm[j + 1] : (periodic ? ws.fm[0] : 0.0);
        const double div = (ws.fp[j] + fm_right) - (fp_left + ws.fm[j]);
        double v = u[j] - lambda * div;
        if (has_diffusion) v += cfg.sigma(u[j]) * dW;
        if (has_jumps) {
            for (double z : marks) v += cfg.eta(u[j], z);
            v -= dt * compensator(cfg.eta, cfg.levy, u[j]);
        }
        out[j] = v;
    }
}

void check_guard(std::span<const double> u, double guard, std::size_t step_idx,
                 double t) {
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (!(std::abs(u[j]) <= guard)) {
            throw BlowUpError("stability violation: |u[" + std::to_string(j) +
                                  "]| = " + std::to_string(u[j]) +
                                  " exceeds guard " + std::to_string(guard) +
                                  " at step " + std::to_string(step_idx),
                              step_idx, t);
        }
    }
}

// jump-adapted variant: drift and compensator sub-stepped at exact jump
// times; the step's Brownian increment is applied in the first sub-interval;
// each mark acts on the pre-jump state at its own time.
void adapted_update(const SchemeConfig& cfg, const Grid1D& grid,
                    std::span<const double> u_in, std::span<double> out,
                    double t0, double dt, double dW,
                    std::span<const JumpEvent> events, Workspace& ws,
                    std::vector<double>& scratch) {
    const std::size_t n = u_in.size();
    scratch.assign(u_in.begin(), u_in.end());
    double t_cur = t0;
    bool first = true;
    auto advance = [&](double delta, double dw_part) {
        if (delta <= 0.0 && dw_part == 0.0) return;
        explicit_update(cfg, grid, scratch, out, delta, dw_part, {}, ws);
        std::copy(out.begin(), out.end(), scratch.begin());
    };
    for (const auto& ev : events) {
        advance(ev.t - t_cur, first ? dW : 0.0);
        first = false;
        const bool has_jumps = !cfg.eta.is_zero();
        if (has_jumps) {
            for (std::size_t j = 0; j < n; ++j) scratch[j] += cfg.eta(scratch[j], ev.z);
        }
        t_cur = ev.t;
    }
    advance(t0 + dt - t_cur, first ? dW : 0.0);
    std::copy(scratch.begin(), scratch.end(), out.begin());
}

DiagnosticsRow make_row(std::size_t step_idx, double t, const Grid1D& grid,
                        std::span<const double> u) {
    double sum = 0.0, bv = 0.0, linf = 0.0, sumsq = 0.0;
    const std::size_t n = u.size();
    for (std::size_t j = 0; j < n; ++j) {
        sum += u[j];
        linf = std::max(linf, std::abs(u[j]));
        sumsq += u[j] * u[j];
        if (j + 1 < n) bv += std::abs(u[j + 1] - u[j]);
    }
    if (grid.boundary() == Boundary::Periodic) {
        bv += std::abs(u[0] - u[n - 1]);
    } else {
        bv += std::abs(u[0]) + std::abs(u[n - 1]);
    }
    return {step_idx, t, grid.dx() * sum, bv, linf, std::sqrt(grid.dx() * sumsq)};
}

}  // namespace

LatticeState step(const LatticeState& state, double dt, double dW,
                  std::span<const double> jump_marks, const SchemeConfig& config) {
    Workspace ws;
    std::vector<double> out(state.values.size());
    explicit_update(config, state.grid, state.values, out, dt, dW, jump_marks, ws);
    const double guard =
        config.blowup_multiplier * config.linf_bound(norm_linf(state));
    check_guard(out, guard, 0, state.time + dt);
    for (double v : out) {
        if (!std::isfinite(v)) {
            throw BlowUpError("non-finite state after step", 0, state.time + dt);
        }
    }
    return LatticeState(state.grid, std::move(out), state.time + dt);
}

Trajectory solve_path(const SchemeConfig& config, const Grid1D& grid,
                      const LatticeState& u0_state, const NoisePath& path,
                      const SolveOptions& options) {
    if (u0_state.grid != grid) throw DimensionError("solve_path: grid mismatch");
    const StepPlan plan = make_step_plan(config, grid.dx(), path.dt_micro(), path.T());
    const double guard =
        config.blowup_multiplier * config.linf_bound(norm_linf(u0_state));

    Trajectory traj;
    std::vector<double> u(u0_state.values);
    std::vector<double> u_next(u.size());
    Workspace ws;
    std::vector<double> scratch;
    std::vector<double> marks;

    std::size_t record_idx = 0;
    auto maybe_record = [&](std::size_t step_count, double t) {
        while (record_idx < plan.record_steps.size() &&
               plan.record_steps[record_idx] == step_count) {
            traj.snapshots.emplace_back(grid, u, plan.record_times[record_idx]);
            (void)t;
            ++record_idx;
        }
    };

    if (options.log_diagnostics) traj.log.push_back(make_row(0, 0.0, grid, u));
    maybe_record(0, 0.0);

    const auto& jumps = path.jumps();
    std::size_t jump_cursor = 0;
    for (std::size_t s = 0; s < plan.n_steps; ++s) {
        const double t0 = static_cast<double>(s) * plan.dt;
        const double t1 = static_cast<double>(s + 1) * plan.dt;
        const double dW =
            path.brownian_sum(s * plan.micro_per_step, (s + 1) * plan.micro_per_step);
        const std::size_t jump_begin = jump_cursor;
        while (jump_cursor < jumps.size() && jumps[jump_cursor].t <= t1) ++jump_cursor;
        marks.clear();
        for (std::size_t k = jump_begin; k < jump_cursor; ++k) {
            marks.push_back(jumps[k].z);
        }

        if (config.jump_adapted && jump_cursor > jump_begin) {
            adapted_update(config, grid, u, u_next, t0, plan.dt, dW,
                           {jumps.data() + jump_begin, jump_cursor - jump_begin}, ws,
                           scratch);
        } else {
            explicit_update(config, grid, u, u_next, plan.dt, dW, marks, ws);
        }
        check_guard(u_next, guard, s, t1);

        if (options.observer) {
            StepRecord rec{s, t0, plan.dt, dW, marks, u, u_next, &grid};
            options.observer->on_step(rec);
        }
        u.swap(u_next);
        if (options.log_diagnostics) traj.log.push_back(make_row(s + 1, t1, grid, u));
        maybe_record(s + 1, t1);
    }
    return traj;
}

std::vector<Trajectory> coupled_solve(std::span<const SchemeConfig> configs,
                                      std::span<const Grid1D> grids,
                                      const std::function<double(double)>& u0,
                                      const NoisePath& path) {
    if (configs.size() != grids.size() || configs.empty()) {
        throw ConfigError("coupled_solve: configs and grids must match");
    }
    for (std::size_t i = 0; i < grids.size(); ++i) {
        if (grids[i].x_min() != grids[0].x_min() ||
            grids[i].x_max() != grids[0].x_max()) {
            throw ConfigError("coupled_solve: grids must share the domain");
        }
        if (configs[i].T != configs[0].T) {
            throw ConfigError("coupled_solve: configs must share T");
        }
        const std::size_t a = std::max(grids[i].n_cells(), grids[0].n_cells());
        const std::size_t b = std::min(grids[i].n_cells(), grids[0].n_cells());
        if (a % b != 0 || (a / b) & ((a / b) - 1)) {
            throw ConfigError("coupled_solve: grids must be nested by powers of 2");
        }
    }
    std::vector<Trajectory> out;
    out.reserve(configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i) {
        out.push_back(
            solve_path(configs[i], grids[i], project_initial(u0, grids[i]), path));
    }
    return out;
}

void write_diagnostics_csv(std::span<const DiagnosticsRow> log, std::ostream& os,
                           const std::string& provenance) {
    if (!provenance.empty()) os << "# " << provenance << "\n";
    os << "step,t,mass,bv,linf,l2\n";
    char buf[160];
    for (const auto& r : log) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,%.17g", r.step,
                      r.t, r.mass, r.bv, r.linf, r.l2);
        os << buf << "\n";
    }
}

}  // namespace sclaw
