#include "sclaw/noise.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "sclaw/quadrature.hpp"
#include "sclaw/rng.hpp"

namespace sclaw {

namespace {

constexpr double kQuantum = 0x1p-46;

double quantize(double x) { return std::round(x / kQuantum) * kQuantum; }

double smoothstep_down(double s) {
    // 1 at s<=0, 0 at s>=1, C1 cubic in between
    if (s <= 0.0) return 1.0;
    if (s >= 1.0) return 0.0;
    return 1.0 - s * s * (3.0 - 2.0 * s);
}

}  // namespace

DiffusionCoefficient DiffusionCoefficient::linear_cutoff(double a, double M) {
    if (!(M > 0.0)) throw ConfigError("DiffusionCoefficient: cutoff must be > 0");
    DiffusionCoefficient c;
    c.label = "linear_cutoff";
    const double ramp_start = 0.9 * M;
    const double ramp_width = 0.1 * M;
    c.sigma = [a, M, ramp_start, ramp_width](double u) {
        const double au = std::abs(u);
        if (au > M) return 0.0;
        return a * u * smoothstep_down((au - ramp_start) / ramp_width);
    };
    // |d/du (u*g)| <= 1 + M * (1.5/ramp_width); a bound, not sharp.
    c.lipschitz_sigma = std::abs(a) * (1.0 + 1.5 * M / ramp_width);
    c.cutoff_M = M;
    return c;
}

DiffusionCoefficient DiffusionCoefficient::zero() {
    DiffusionCoefficient c;
    c.label = "zero";
    c.lipschitz_sigma = 0.0;
    c.cutoff_M = 0.0;
    return c;
}

JumpCoefficient JumpCoefficient::linear_cutoff(double b, double M) {
    if (!(M > 0.0)) throw ConfigError("JumpCoefficient: cutoff must be > 0");
    if (!(std::abs(b) < 1.0)) {
        throw ConfigError("JumpCoefficient: amplitude must satisfy |b| < 1 (A5)");
    }
    JumpCoefficient c;
    c.label = "linear_cutoff";
    c.eta = [b, M](double u, double z) {
        const double au = std::abs(u);
        if (au > M) return 0.0;
        const double tent = std::min(au, M - au);  // slope-1 descent from M/2
        const double zcap = std::min(std::abs(z), 1.0);
        return b * zcap * (u < 0.0 ? -tent : tent);
    };
    c.lambda_star = std::abs(b);
    c.cutoff_M = M;
    return c;
}

JumpCoefficient JumpCoefficient::zero() {
    JumpCoefficient c;
    c.label = "zero";
    c.lambda_star = 0.0;
    c.cutoff_M = 0.0;
    return c;
}

// ---------------------------------------------------------------------------
// LevyMeasureSpec
// ---------------------------------------------------------------------------

LevyMeasureSpec LevyMeasureSpec::atoms(std::vector<Atom> atoms) {
    LevyMeasureSpec spec;
    spec.atoms_ = std::move(atoms);
    spec.finalize();
    return spec;
}

LevyMeasureSpec LevyMeasureSpec::with_density(std::vector<Atom> atoms,
                                              Density density) {
    LevyMeasureSpec spec;
    spec.atoms_ = std::move(atoms);
    spec.density_ = std::move(density);
    spec.finalize();
    return spec;
}

void LevyMeasureSpec::finalize() {
    total_rate_ = 0.0;
    levy_integral_ = 0.0;
    for (const auto& a : atoms_) {
        if (a.z == 0.0) throw ConfigError("LevyMeasureSpec: atom at z = 0");
        if (!(a.rate > 0.0)) throw ConfigError("LevyMeasureSpec: atom rate must be > 0");
        total_rate_ += a.rate;
        levy_integral_ += std::min(1.0, a.z * a.z) * a.rate;
    }
    if (density_) {
        const auto& d = *density_;
        if (!(d.truncation_eps > 0.0)) {
            throw ConfigError("LevyMeasureSpec: truncation_eps must be > 0");
        }
        if (!(d.z_min < d.z_max)) {
            throw ConfigError("LevyMeasureSpec: density support empty");
        }
        // Tabulate the truncated density per side for mass and inversion.
        const auto add_side = [&](double lo, double hi) {
            if (!(hi > lo)) return;
            constexpr std::size_t kPanels = 1024;
            const double h = (hi - lo) / static_cast<double>(kPanels);
            for (std::size_t i = 0; i < kPanels; ++i) {
                const double a = lo + static_cast<double>(i) * h;
                const double b = a + h;
                const double panel = quad::gauss8(d.m, a, b);
                if (!(panel >= -1e-12) || !std::isfinite(panel)) {
                    throw ConfigError("LevyMeasureSpec: density must be finite and >= 0");
                }
                if (cdf_z_.empty()) {
                    cdf_z_.push_back(a);
                    cdf_mass_.push_back(0.0);
                }
                if (cdf_z_.back() != a) {  // gap between sides
                    cdf_z_.push_back(a);
                    cdf_mass_.push_back(cdf_mass_.back());
                }
                cdf_z_.push_back(b);
                cdf_mass_.push_back(cdf_mass_.back() + std::max(panel, 0.0));
                levy_integral_ += quad::gauss8(
                    [&](double z) { return std::min(1.0, z * z) * d.m(z); }, a, b);
            }
        };
        add_side(d.z_min, std::min(-d.truncation_eps, d.z_max));
        add_side(std::max(d.truncation_eps, d.z_min), d.z_max);
        density_rate_ = cdf_mass_.empty() ? 0.0 : cdf_mass_.back();
        if (!std::isfinite(density_rate_)) {
            throw ConfigError("LevyMeasureSpec: truncated mass is not finite");
        }
        total_rate_ += density_rate_;
        // Discarded compensated small jumps: integral_{|z|<=eps} z^2 m(dz),
        // estimated down to a relative floor above the origin.
        const double floor = d.truncation_eps * 1e-8;
        const auto z2m = [&](double z) { return z * z * d.m(z); };
        discarded_z2_ = 0.0;
        if (d.z_min < -floor) {
            discarded_z2_ += quad::integrate_adaptive(
                z2m, std::max(d.z_min, -d.truncation_eps), -floor, 1e-10);
        }
        if (d.z_max > floor) {
            discarded_z2_ += quad::integrate_adaptive(
                z2m, floor, std::min(d.z_max, d.truncation_eps), 1e-10);
        }
    }
    if (!std::isfinite(total_rate_) || !std::isfinite(levy_integral_)) {
        throw ConfigError("LevyMeasureSpec: unsupported measure (infinite mass)");
    }
}

double LevyMeasureSpec::sample_mark(double u_select, double u_within) const {
    double target = u_select * total_rate_;
    for (const auto& a : atoms_) {
        if (target <= a.rate) return a.z;
        target -= a.rate;
    }
    if (!density_ || cdf_mass_.empty() || density_rate_ <= 0.0) {
        // numerical edge: fall back to the last atom
        if (!atoms_.empty()) return atoms_.back().z;
        throw NumericsError("sample_mark on empty measure");
    }
    const double mass = std::min(u_within * density_rate_, cdf_mass_.back());
    const auto it = std::lower_bound(cdf_mass_.begin(), cdf_mass_.end(), mass);
    const std::size_t hi = std::max<std::size_t>(
        1, static_cast<std::size_t>(it - cdf_mass_.begin()));
    const std::size_t lo = hi - 1;
    const double dm = cdf_mass_[hi] - cdf_mass_[lo];
    const double frac = dm > 0.0 ? (mass - cdf_mass_[lo]) / dm : 0.5;
    return cdf_z_[lo] + frac * (cdf_z_[hi] - cdf_z_[lo]);
}

// ---------------------------------------------------------------------------
// NoisePath
// ---------------------------------------------------------------------------

NoisePath::NoisePath(std::uint64_t seed, double T, double dt_micro,
                     std::vector<double> brownian_increments,
                     std::vector<JumpEvent> jumps)
    : seed_(seed),
      T_(T),
      dt_micro_(dt_micro),
      dW_(std::move(brownian_increments)),
      jumps_(std::move(jumps)) {
    if (!(T > 0.0) || !(dt_micro > 0.0)) {
        throw ConfigError("NoisePath: T and dt_micro must be > 0");
    }
    prefix_.resize(dW_.size() + 1);
    prefix_[0] = 0.0;
    for (std::size_t i = 0; i < dW_.size(); ++i) prefix_[i + 1] = prefix_[i] + dW_[i];
    for (std::size_t i = 1; i < jumps_.size(); ++i) {
        if (!(jumps_[i - 1].t < jumps_[i].t)) {
            throw ConfigError("NoisePath: jump times must be strictly increasing");
        }
    }
    for (const auto& j : jumps_) {
        if (!(j.t > 0.0 && j.t <= T_)) {
            throw ConfigError("NoisePath: jump times must lie in (0, T]");
        }
    }
}

std::size_t NoisePath::micro_index(double t) const {
    const double ratio = t / dt_micro_;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-6) {
        throw AlignmentError("time " + std::to_string(t) +
                             " is not aligned to the micro-step lattice");
    }
    const auto i = static_cast<std::size_t>(rounded);
    if (i > dW_.size()) {
        throw AlignmentError("time " + std::to_string(t) + " beyond path horizon");
    }
    return i;
}

double NoisePath::brownian_sum(std::size_t i0, std::size_t i1) const {
    if (i0 > i1 || i1 > dW_.size()) {
        throw AlignmentError("brownian_sum: bad index window");
    }
    return prefix_[i1] - prefix_[i0];
}

double NoisePath::brownian_on_step(double t0, double t1) const {
    if (!(t0 <= t1)) throw AlignmentError("brownian_on_step: t0 > t1");
    return brownian_sum(micro_index(t0), micro_index(t1));
}

std::vector<double> NoisePath::jumps_on_step(double t0, double t1) const {
    std::vector<double> marks;
    auto lo = std::upper_bound(jumps_.begin(), jumps_.end(), t0,
                               [](double t, const JumpEvent& e) { return t < e.t; });
    for (auto it = lo; it != jumps_.end() && it->t <= t1; ++it) {
        marks.push_back(it->z);
    }
    return marks;
}

NoisePath sample_path(const LevyMeasureSpec& spec, double T, double dt_micro,
                      std::uint64_t seed) {
    if (!(T > 0.0) || !(dt_micro > 0.0)) {
        throw ConfigError("sample_path: T and dt_micro must be > 0");
    }
    const auto n_micro = static_cast<std::size_t>(std::ceil(T / dt_micro - 1e-9));
    const double root_dt = std::sqrt(dt_micro);

    rng::CounterRng brownian(seed, 0);
    std::vector<double> dW(n_micro);
    for (std::size_t i = 0; i < n_micro; ++i) {
        dW[i] = quantize(brownian.normal(i) * root_dt);
    }

    std::vector<JumpEvent> jumps;
    const double lambda = spec.total_rate();
    if (lambda > 0.0) {
        rng::SequentialRng count_rng(seed, 1);
        const std::uint64_t n_jumps = rng::poisson(count_rng, lambda * T);
        rng::CounterRng times(seed, 2);
        rng::CounterRng marks(seed, 3);
        jumps.reserve(n_jumps);
        for (std::uint64_t i = 0; i < n_jumps; ++i) {
            const double t = times.uniform01(i) * T;  // in (0, T]
            const double z =
                spec.sample_mark(marks.uniform01(2 * i), marks.uniform01(2 * i + 1));
            jumps.push_back({t, z});
        }
        std::sort(jumps.begin(), jumps.end(), [](const JumpEvent& a, const JumpEvent& b) {
            return a.t < b.t;
        });
        // ties have probability zero; nudge exact duplicates apart to keep
        // the strict-ordering invariant
        for (std::size_t i = 1; i < jumps.size(); ++i) {
            if (jumps[i].t <= jumps[i - 1].t) {
                jumps[i].t = std::nextafter(jumps[i - 1].t, T + 1.0);
            }
        }
    }
    return NoisePath(seed, T, dt_micro, std::move(dW), std::move(jumps));
}

double compensator(const JumpCoefficient& jc, const LevyMeasureSpec& spec,
                   double u) {
    if (jc.is_zero() || spec.empty()) return 0.0;
    double s = 0.0;
    for (const auto& a : spec.atom_list()) s += a.rate * jc.eta(u, a.z);
    if (spec.density()) {
        const auto& d = *spec.density();
        const auto integrand = [&](double z) { return jc.eta(u, z) * d.m(z); };
        const double neg_hi = std::min(-d.truncation_eps, d.z_max);
        if (d.z_min < neg_hi) {
            s += quad::integrate_adaptive(integrand, d.z_min, neg_hi, 5e-10);
        }
        const double pos_lo = std::max(d.truncation_eps, d.z_min);
        if (pos_lo < d.z_max) {
            s += quad::integrate_adaptive(integrand, pos_lo, d.z_max, 5e-10);
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Binary sidecar
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'S', 'C', 'L', 'A', 'W', 'N', 'P', '1'};

template <typename T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw IoError("NoisePath: truncated binary stream");
    return v;
}

}  // namespace

void NoisePath::write_binary(std::ostream& os) const {
    os.write(kMagic, sizeof(kMagic));
    put(os, seed_);
    put(os, T_);
    put(os, dt_micro_);
    put<std::uint64_t>(os, dW_.size());
    put<std::uint64_t>(os, jumps_.size());
    for (double v : dW_) put(os, v);
    for (const auto& j : jumps_) {
        put(os, j.t);
        put(os, j.z);
    }
    if (!os) throw IoError("NoisePath: write failed");
}

NoisePath NoisePath::read_binary(std::istream& is) {
    char magic[8];
    is.read(magic, sizeof(magic));
    if (!is || !std::equal(magic, magic + 8, kMagic)) {
        throw IoError("NoisePath: bad magic");
    }
    const auto seed = get<std::uint64_t>(is);
    const auto T = get<double>(is);
    const auto dt_micro = get<double>(is);
    const auto n_micro = get<std::uint64_t>(is);
    const auto n_jumps = get<std::uint64_t>(is);
    std::vector<double> dW(n_micro);
    for (auto& v : dW) v = get<double>(is);
    std::vector<JumpEvent> jumps(n_jumps);
    for (auto& j : jumps) {
        j.t = get<double>(is);
        j.z = get<double>(is);
    }
    return NoisePath(seed, T, dt_micro, std::move(dW), std::move(jumps));
}

}  // namespace sclaw
