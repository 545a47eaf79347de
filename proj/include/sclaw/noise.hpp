#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sclaw/errors.hpp"

namespace sclaw {

/// Multiplicative diffusion coefficient: sigma(0) = 0, sigma vanishes
/// beyond the cutoff, Lipschitz with the stated constant.
struct DiffusionCoefficient {
    std::string label;
    std::function<double(double)> sigma;
    double lipschitz_sigma = 0.0;
    double cutoff_M = 1.0;

    double operator()(double u) const { return sigma(u); }

    /// sigma(u) = a*u inside |u| <= 0.9M, taken smoothly to zero over the
    /// ramp [0.9M, M] (cubic smoothstep), zero beyond.
    static DiffusionCoefficient linear_cutoff(double a, double M);
    static DiffusionCoefficient zero();
    bool is_zero() const { return !sigma; }
};

/// Jump amplitude eta(u; z): eta(0;z) = 0, vanishes beyond the cutoff, and
/// |eta(u;z) - eta(v;z)| <= lambda_star |u - v| (|z| ^ 1) with
/// lambda_star < 1.
struct JumpCoefficient {
    std::string label;
    std::function<double(double, double)> eta;
    double lambda_star = 0.0;
    double cutoff_M = 1.0;

    double operator()(double u, double z) const { return eta(u, z); }

    /// eta(u,z) = b * (|z| ^ 1) * tent(u), where tent(u) = u on
    /// |u| <= M/2 and descends with slope 1 to zero at |u| = M. The descent
    /// slope never exceeds 1, so the global Lipschitz constant in u is
    /// exactly b and lambda_star = b < 1 holds for every sample.
    static JumpCoefficient linear_cutoff(double b, double M);
    static JumpCoefficient zero();
    bool is_zero() const { return !eta; }
};

/// Truncated Levy measure: finite-activity atoms plus an optional density
/// restricted to truncation_eps < |z| <= max support. The compensated
/// small jumps below truncation_eps are dropped; their discarded L2 weight
/// integral_{|z|<=eps} z^2 m(dz) is reported as a diagnostic.
class LevyMeasureSpec {
public:
    struct Atom {
        double z;
        double rate;
    };
    struct Density {
        std::function<double(double)> m;
        double truncation_eps;
        double z_min;
        double z_max;
    };

    LevyMeasureSpec() = default;
    static LevyMeasureSpec atoms(std::vector<Atom> atoms);
    static LevyMeasureSpec with_density(std::vector<Atom> atoms, Density density);

    const std::vector<Atom>& atom_list() const { return atoms_; }
    const std::optional<Density>& density() const { return density_; }

    bool empty() const { return atoms_.empty() && !density_.has_value(); }
    /// Total truncated mass Lambda.
    double total_rate() const { return total_rate_; }
    double density_rate() const { return density_rate_; }
    /// integral (1 ^ z^2) m(dz) over the truncated measure.
    double levy_integral() const { return levy_integral_; }
    /// integral_{|z| <= eps} z^2 m(dz): L2 weight of the dropped small jumps.
    double discarded_small_jump_z2() const { return discarded_z2_; }

    /// Draw one mark from the normalized truncated measure given two
    /// uniforms (component selection, then within-density inversion).
    double sample_mark(double u_select, double u_within) const;

private:
    void finalize();

    std::vector<Atom> atoms_;
    std::optional<Density> density_;
    double total_rate_ = 0.0;
    double density_rate_ = 0.0;
    double levy_integral_ = 0.0;
    double discarded_z2_ = 0.0;
    // piecewise-linear inverse-CDF table for the density part
    std::vector<double> cdf_z_;
    std::vector<double> cdf_mass_;
};

struct JumpEvent {
    double t;
    double z;
};

/// One realization of the driving noise: Brownian micro-increments plus
/// time-ordered jump events. A single path is shared by every grid
/// resolution of a coupled experiment.
///
/// Increments are quantized to multiples of 2^-46, so windowed sums taken
/// through the prefix table are exact in double arithmetic and additive
/// across any partition, bit for bit.
class NoisePath {
public:
    NoisePath(std::uint64_t seed, double T, double dt_micro,
              std::vector<double> brownian_increments,
              std::vector<JumpEvent> jumps);

    std::uint64_t seed() const { return seed_; }
    double T() const { return T_; }
    double dt_micro() const { return dt_micro_; }
    const std::vector<double>& brownian_increments() const { return dW_; }
    const std::vector<JumpEvent>& jumps() const { return jumps_; }

    /// Sum of micro-increments over (t0, t1]; t0, t1 must sit on the
    /// micro lattice.
    double brownian_on_step(double t0, double t1) const;
    /// Same by micro-step index: sum over increments (i0, i1].
    double brownian_sum(std::size_t i0, std::size_t i1) const;

    /// Marks of all jumps with t in (t0, t1], in time order.
    std::vector<double> jumps_on_step(double t0, double t1) const;

    std::size_t micro_index(double t) const;

    void write_binary(std::ostream& os) const;
    static NoisePath read_binary(std::istream& is);

private:
    std::uint64_t seed_;
    double T_;
    double dt_micro_;
    std::vector<double> dW_;
    std::vector<double> prefix_;  // prefix_[i] = sum of dW_[0..i)
    std::vector<JumpEvent> jumps_;
};

/// Samples a reproducible path: Brownian increments Normal(0, dt_micro)
/// from stream 0 of a counter-based generator keyed by `seed`, jump count
/// Poisson(Lambda*T) from stream 1, jump times Uniform(0,T] from stream 2,
/// marks from stream 3. Identical inputs give identical paths regardless
/// of thread count.
NoisePath sample_path(const LevyMeasureSpec& spec, double T, double dt_micro,
                      std::uint64_t seed);

/// Drift of the compensated jump integral:
/// integral eta(u, z) m(dz) over the truncated measure.
double compensator(const JumpCoefficient& jc, const LevyMeasureSpec& spec,
                   double u);

}  // namespace sclaw
