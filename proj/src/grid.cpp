#include "sclaw/grid.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "sclaw/quadrature.hpp"
#include "sclaw/stats.hpp"

namespace sclaw {

std::string to_string(Boundary b) {
    return b == Boundary::Periodic ? "periodic" : "zero_extension";
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "periodic") return Boundary::Periodic;
    if (s == "zero_extension") return Boundary::ZeroExtension;
    throw ConfigError("unknown boundary policy: " + s);
}

Grid1D::Grid1D(double x_min, double x_max, std::size_t n_cells, Boundary boundary)
    : x_min_(x_min), x_max_(x_max), n_cells_(n_cells), boundary_(boundary) {
    if (!(x_max > x_min)) throw ConfigError("Grid1D: x_max must exceed x_min");
    if (n_cells < 2) throw ConfigError("Grid1D: n_cells must be >= 2");
    dx_ = (x_max - x_min) / static_cast<double>(n_cells);
}

LatticeState::LatticeState(Grid1D g, std::vector<double> v, double t)
    : grid(g), values(std::move(v)), time(t) {
    if (values.size() != grid.n_cells()) {
        throw DimensionError("LatticeState: values length != n_cells");
    }
    if (!(time >= 0.0)) throw ConfigError("LatticeState: time must be >= 0");
}

LatticeState LatticeState::zeros(const Grid1D& g, double t) {
    return LatticeState(g, std::vector<double>(g.n_cells(), 0.0), t);
}

LatticeState project_initial(const std::function<double(double)>& u0,
                             const Grid1D& grid) {
    std::vector<double> values(grid.n_cells());
    const double inv_dx = 1.0 / grid.dx();
    for (std::size_t j = 0; j < grid.n_cells(); ++j) {
        const double avg =
            quad::gauss5(u0, grid.left_edge(j), grid.right_edge(j)) * inv_dx;
        if (!std::isfinite(avg)) {
            throw NumericsError("project_initial: invalid initial data in cell " +
                                std::to_string(j));
        }
        values[j] = avg;
    }
    return LatticeState(grid, std::move(values), 0.0);
}

double reconstruct(const LatticeState& state, double x) {
    const Grid1D& g = state.grid;
    const double len = g.x_max() - g.x_min();
    if (g.boundary() == Boundary::Periodic) {
        x -= len * std::floor((x - g.x_min()) / len);
    } else if (x < g.x_min() || x >= g.x_max()) {
        return 0.0;
    }
    auto j = static_cast<std::size_t>((x - g.x_min()) / g.dx());
    if (j >= g.n_cells()) j = g.n_cells() - 1;  // guard x == x_max under rounding
    return state.values[j];
}

double norm_lp(const LatticeState& state, double p) {
    if (std::isinf(p)) return norm_linf(state);
    if (!(p >= 1.0)) throw ConfigError("norm_lp: p must be >= 1 or infinity");
    double s = 0.0;
    for (double v : state.values) s += std::pow(std::abs(v), p);
    return std::pow(state.grid.dx() * s, 1.0 / p);
}

double norm_linf(const LatticeState& state) {
    double m = 0.0;
    for (double v : state.values) m = std::max(m, std::abs(v));
    return m;
}

double bv_seminorm(const LatticeState& state) {
    const auto& u = state.values;
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < u.size(); ++j) s += std::abs(u[j + 1] - u[j]);
    if (state.grid.boundary() == Boundary::Periodic) {
        s += std::abs(u.front() - u.back());
    } else {
        s += std::abs(u.front()) + std::abs(u.back());
    }
    return s;
}

LatticeState restrict_mean(const LatticeState& fine, std::size_t factor) {
    if (factor == 0 || fine.grid.n_cells() % factor != 0) {
        throw DimensionError("restrict_mean: n_cells not divisible by factor");
    }
    const std::size_t n_coarse = fine.grid.n_cells() / factor;
    Grid1D coarse(fine.grid.x_min(), fine.grid.x_max(), n_coarse,
                  fine.grid.boundary());
    std::vector<double> values(n_coarse);
    const double inv = 1.0 / static_cast<double>(factor);
    for (std::size_t j = 0; j < n_coarse; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < factor; ++i) s += fine.values[j * factor + i];
        values[j] = s * inv;
    }
    return LatticeState(coarse, std::move(values), fine.time);
}

double l1_distance(const LatticeState& a, const LatticeState& b) {
    if (a.grid != b.grid) throw DimensionError("l1_distance: grid mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j) {
        s += std::abs(a.values[j] - b.values[j]);
    }
    return a.grid.dx() * s;
}

double l1_distance_window(const LatticeState& a, const LatticeState& b,
                          double k_lo, double k_hi) {
    if (a.grid != b.grid) throw DimensionError("l1_distance_window: grid mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j) {
        if (a.grid.left_edge(j) >= k_lo && a.grid.right_edge(j) <= k_hi) {
            s += std::abs(a.values[j] - b.values[j]);
        }
    }
    return a.grid.dx() * s;
}

double mass(const LatticeState& state) {
    return state.grid.dx() * stats::pairwise_sum(state.values);
}

void write_csv(const LatticeState& state, std::ostream& os,
               const std::string& provenance) {
    if (!provenance.empty()) os << "# " << provenance << "\n";
    os << "x,u\n";
    char buf[64];
    for (std::size_t j = 0; j < state.values.size(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g", state.grid.center(j),
                      state.values[j]);
        os << buf << "\n";
    }
}

}  // namespace sclaw
