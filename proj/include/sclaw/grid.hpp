#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sclaw/errors.hpp"

namespace sclaw {

enum class Boundary { Periodic, ZeroExtension };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

/// Uniform 1-D mesh of right-open cells I_j = [x_{j-1/2}, x_{j+1/2}).
class Grid1D {
public:
    Grid1D(double x_min, double x_max, std::size_t n_cells,
           Boundary boundary = Boundary::ZeroExtension);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t n_cells() const { return n_cells_; }
    Boundary boundary() const { return boundary_; }
    double dx() const { return dx_; }

    double center(std::size_t j) const { return x_min_ + (static_cast<double>(j) + 0.5) * dx_; }
    double left_edge(std::size_t j) const { return x_min_ + static_cast<double>(j) * dx_; }
    double right_edge(std::size_t j) const { return x_min_ + static_cast<double>(j + 1) * dx_; }

    bool operator==(const Grid1D&) const = default;

private:
    double x_min_;
    double x_max_;
    std::size_t n_cells_;
    Boundary boundary_;
    double dx_;
};

/// One lattice state {u_j} at a time instant.
struct LatticeState {
    Grid1D grid;
    std::vector<double> values;
    double time = 0.0;

    LatticeState(Grid1D g, std::vector<double> v, double t = 0.0);
    static LatticeState zeros(const Grid1D& g, double t = 0.0);
};

/// Cell averages of u0 by composite 5-point Gauss quadrature per cell
/// (exact to quadrature tolerance for polynomials of degree <= 9 per cell).
LatticeState project_initial(const std::function<double(double)>& u0,
                             const Grid1D& grid);

/// Piecewise-constant point evaluation. Periodic wraps; ZeroExtension
/// returns 0 outside [x_min, x_max).
double reconstruct(const LatticeState& state, double x);

/// Discrete L^p norm: (dx * sum |u_j|^p)^(1/p); p = infinity gives max |u_j|.
double norm_lp(const LatticeState& state, double p);
double norm_linf(const LatticeState& state);

/// Sum of absolute consecutive differences. Periodic includes the
/// wrap-around term; ZeroExtension includes the two boundary steps
/// against the implicit zero state.
double bv_seminorm(const LatticeState& state);

/// Coarsen by averaging groups of `factor` cells (preserves cell averages).
LatticeState restrict_mean(const LatticeState& fine, std::size_t factor);

/// dx * sum |a_j - b_j| over a shared grid.
double l1_distance(const LatticeState& a, const LatticeState& b);

/// Same, restricted to cells fully contained in [k_lo, k_hi].
double l1_distance_window(const LatticeState& a, const LatticeState& b,
                          double k_lo, double k_hi);

/// dx * sum u_j.
double mass(const LatticeState& state);

/// CSV serialization: header `x,u`, one row per cell center, 17 significant
/// digits. A leading `#` comment line carries provenance.
void write_csv(const LatticeState& state, std::ostream& os,
               const std::string& provenance = {});

}  // namespace sclaw
