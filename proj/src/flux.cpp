#include "sclaw/flux.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "sclaw/quadrature.hpp"

namespace sclaw {

namespace {

double require_param(const std::map<std::string, double>& params,
                     const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

}  // namespace

FluxModel FluxModel::burgers(double range_bound) {
    FluxModel m;
    m.label_ = "burgers";
    m.f_ = [](double u) { return 0.5 * u * u; };
    m.f_prime_ = [](double u) { return u; };
    m.lipschitz_ = std::abs(range_bound);
    m.critical_points_ = {0.0};
    m.kind_ = EoKind::Burgers;
    return m;
}

FluxModel FluxModel::linear(double speed) {
    FluxModel m;
    m.label_ = "linear";
    m.f_ = [speed](double u) { return speed * u; };
    m.f_prime_ = [speed](double) { return speed; };
    m.lipschitz_ = std::abs(speed);
    m.kind_ = speed >= 0.0 ? EoKind::LinearUp : EoKind::LinearDown;
    m.speed_ = speed;
    return m;
}

FluxModel FluxModel::decreasing(double range_bound) {
    FluxModel m;
    m.label_ = "decreasing";
    m.f_ = [](double u) { return -0.5 * u * std::abs(u) - u; };
    m.f_prime_ = [](double u) { return -std::abs(u) - 1.0; };
    m.lipschitz_ = 1.0 + std::abs(range_bound);
    m.kind_ = EoKind::AllDecreasing;
    return m;
}

FluxModel FluxModel::custom(std::string label, std::function<double(double)> f,
                            std::function<double(double)> f_prime,
                            double lipschitz,
                            std::vector<double> critical_points) {
    FluxModel m;
    m.label_ = std::move(label);
    m.f_ = std::move(f);
    m.f_prime_ = std::move(f_prime);
    m.lipschitz_ = lipschitz;
    if (std::abs(m.f_(0.0)) > 1e-12) {
        throw ConfigError("FluxModel '" + m.label_ + "': f(0) must be 0");
    }
    if (!(lipschitz > 0.0)) {
        throw ConfigError("FluxModel '" + m.label_ + "': lipschitz must be > 0");
    }
    std::sort(critical_points.begin(), critical_points.end());
    m.critical_points_ = std::move(critical_points);
    m.kind_ = m.critical_points_.empty() ? EoKind::Quadrature : EoKind::CriticalPoints;
    return m;
}

double FluxModel::f(double u) const {
    switch (kind_) {
        case EoKind::Burgers: return 0.5 * u * u;
        case EoKind::LinearUp:
        case EoKind::LinearDown: return speed_ * u;
        default: return f_(u);
    }
}

double FluxModel::f_prime(double u) const {
    switch (kind_) {
        case EoKind::Burgers: return u;
        case EoKind::LinearUp:
        case EoKind::LinearDown: return speed_;
        default: return f_prime_(u);
    }
}

double FluxModel::eo_signed_part(double u, bool positive_part) const {
    if (u == 0.0) return 0.0;
    if (kind_ == EoKind::CriticalPoints) {
        // f' keeps one sign between consecutive critical points, so the
        // signed part of the integral telescopes through f itself.
        const double lo = std::min(0.0, u);
        const double hi = std::max(0.0, u);
        double acc = 0.0;
        double left = lo;
        auto take_piece = [&](double a, double b) {
            const double sprime = f_prime_(0.5 * (a + b));
            const bool active = positive_part ? (sprime > 0.0) : (sprime < 0.0);
            if (active) acc += f_(b) - f_(a);
        };
        for (double p : critical_points_) {
            if (p <= lo || p >= hi) continue;
            take_piece(left, p);
            left = p;
        }
        take_piece(left, hi);
        return u > 0.0 ? acc : -acc;
    }
    const auto integrand = [&](double s) {
        const double d = f_prime_(s);
        return positive_part ? std::max(d, 0.0) : std::min(d, 0.0);
    };
    return quad::integrate_adaptive(integrand, 0.0, u, 1e-10);
}

double FluxModel::eo_plus(double u) const {
    switch (kind_) {
        case EoKind::Burgers: return u > 0.0 ? 0.5 * u * u : 0.0;
        case EoKind::LinearUp: return speed_ * u;
        case EoKind::LinearDown: return 0.0;
        case EoKind::AllDecreasing: return 0.0;
        default: return f(0.0) + eo_signed_part(u, true);
    }
}

double FluxModel::eo_minus(double u) const {
    switch (kind_) {
        case EoKind::Burgers: return u < 0.0 ? 0.5 * u * u : 0.0;
        case EoKind::LinearUp: return 0.0;
        case EoKind::LinearDown: return speed_ * u;
        case EoKind::AllDecreasing: return f_(u);
        default: return eo_signed_part(u, false);
    }
}

std::vector<double> flux_divergence(const FluxModel& model,
                                    const LatticeState& state) {
    const auto& u = state.values;
    const std::size_t n = u.size();
    const bool periodic = state.grid.boundary() == Boundary::Periodic;
    std::vector<double> fp(n), fm(n);
    for (std::size_t j = 0; j < n; ++j) {
        fp[j] = model.eo_plus(u[j]);
        fm[j] = model.eo_minus(u[j]);
    }
    std::vector<double> div(n);
    const double inv_dx = 1.0 / state.grid.dx();
    for (std::size_t j = 0; j < n; ++j) {
        const double fp_left = (j > 0) ? fp[j - 1] : (periodic ? fp[n - 1] : 0.0);
        const double fm_right = (j + 1 < n) ? fm[j + 1] : (periodic ? fm[0] : 0.0);
        const double flux_right = fp[j] + fm_right;
        const double flux_left = fp_left + fm[j];
        div[j] = (flux_right - flux_left) * inv_dx;
    }
    return div;
}

// ---------------------------------------------------------------------------
// Entropy pair
// ---------------------------------------------------------------------------

namespace {

// Base profile on |s| <= 1, extended by |s| - 5/16 respectively sign(s).
double base_beta(double s) {
    const double a = std::abs(s);
    if (a >= 1.0) return a - 5.0 / 16.0;
    const double s2 = a * a;
    return s2 * (15.0 - 5.0 * s2 + s2 * s2) / 16.0;
}

double base_beta_prime(double s) {
    const double a = std::abs(s);
    double v;
    if (a >= 1.0) {
        v = 1.0;
    } else {
        const double s2 = a * a;
        v = a * (15.0 - 10.0 * s2 + 3.0 * s2 * s2) / 8.0;
    }
    return s < 0.0 ? -v : v;
}

double base_beta_double_prime(double s) {
    const double a = std::abs(s);
    if (a >= 1.0) return 0.0;
    const double t = 1.0 - a * a;
    return (15.0 / 8.0) * t * t;
}

}  // namespace

EntropyPair::EntropyPair(double xi) : xi_(xi) {
    if (!(xi > 0.0)) throw ConfigError("EntropyPair: xi must be > 0");
}

double EntropyPair::beta(double r) const { return xi_ * base_beta(r / xi_); }

double EntropyPair::beta_prime(double r) const { return base_beta_prime(r / xi_); }

double EntropyPair::beta_double_prime(double r) const {
    return base_beta_double_prime(r / xi_) / xi_;
}

double entropy_flux_fbeta(const FluxModel& model, const EntropyPair& pair,
                          double a, double b) {
    if (a == b) return 0.0;
    const auto integrand = [&](double r) {
        return pair.beta_prime(r - b) * model.f_prime(r);
    };
    return quad::integrate_adaptive(integrand, b, a, 1e-10);
}

double kruzkov_flux(const FluxModel& model, double a, double b) {
    const double s = (a > b) ? 1.0 : (a < b ? -1.0 : 0.0);
    return s * (model.f(a) - model.f(b));
}

namespace {

double eo_entropy_flux_part(const FluxModel& model, const EntropyPair& pair,
                            double k, double u, bool positive_part) {
    if (u == k) return 0.0;
    const auto integrand = [&](double r) {
        const double d = model.f_prime(r);
        const double part = positive_part ? std::max(d, 0.0) : std::min(d, 0.0);
        return pair.beta_prime(r - k) * part;
    };
    double breaks[8];
    std::size_t nb = 0;
    for (double p : model.critical_points()) {
        if (nb + 2 < std::size(breaks)) breaks[nb++] = p;
    }
    breaks[nb++] = k - pair.xi();
    breaks[nb++] = k + pair.xi();
    return quad::piecewise_gauss8(integrand, k, u, {breaks, nb});
}

}  // namespace

double eo_entropy_flux_plus(const FluxModel& model, const EntropyPair& pair,
                            double k, double u) {
    return eo_entropy_flux_part(model, pair, k, u, true);
}

double eo_entropy_flux_minus(const FluxModel& model, const EntropyPair& pair,
                             double k, double u) {
    return eo_entropy_flux_part(model, pair, k, u, false);
}

EntropyFluxTable::EntropyFluxTable(const FluxModel& model, const EntropyPair& pair,
                                   double k, double u_min, double u_max,
                                   std::size_t n_points)
    : k_(k), u_min_(u_min) {
    if (!(u_max > u_min) || n_points < 2) {
        throw ConfigError("EntropyFluxTable: invalid range");
    }
    h_ = (u_max - u_min) / static_cast<double>(n_points - 1);
    plus_.resize(n_points);
    minus_.resize(n_points);
    plus_d_.resize(n_points);
    minus_d_.resize(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double u = u_min_ + static_cast<double>(i) * h_;
        const double d = model.f_prime(u);
        const double bp = pair.beta_prime(u - k);
        plus_d_[i] = bp * std::max(d, 0.0);
        minus_d_[i] = bp * std::min(d, 0.0);
    }
    // Accumulate from the zeta(k) = 0 anchor outward in exact increments.
    const auto accumulate = [&](bool positive_part, std::vector<double>& y) {
        std::vector<double> inc(plus_.size(), 0.0);
        for (std::size_t i = 0; i + 1 < y.size(); ++i) {
            const double a = u_min_ + static_cast<double>(i) * h_;
            inc[i + 1] = eo_entropy_flux_part(model, pair, a, a + h_, positive_part);
        }
        // zeta(u) = zeta(u_anchor) + sum of interval increments
        y[0] = eo_entropy_flux_part(model, pair, k, u_min_, positive_part);
        for (std::size_t i = 0; i + 1 < y.size(); ++i) y[i + 1] = y[i] + inc[i + 1];
    };
    accumulate(true, plus_);
    accumulate(false, minus_);
}

double EntropyFluxTable::eval(const std::vector<double>& y,
                              const std::vector<double>& d, double u) const {
    const std::size_t n = y.size();
    double t = (u - u_min_) / h_;
    if (t <= 0.0) return y.front() + d.front() * (u - u_min_);
    if (t >= static_cast<double>(n - 1)) {
        const double u_max = u_min_ + h_ * static_cast<double>(n - 1);
        return y.back() + d.back() * (u - u_max);
    }
    const auto i = static_cast<std::size_t>(t);
    const double s = t - static_cast<double>(i);
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    return h00 * y[i] + h10 * h_ * d[i] + h01 * y[i + 1] + h11 * h_ * d[i + 1];
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

namespace {

std::map<std::string, FluxBuilder>& registry() {
    static std::map<std::string, FluxBuilder> reg = [] {
        std::map<std::string, FluxBuilder> r;
        r["burgers"] = [](double range, const std::map<std::string, double>&) {
            return FluxModel::burgers(range);
        };
        r["linear"] = [](double, const std::map<std::string, double>& params) {
            return FluxModel::linear(require_param(params, "speed", 1.0));
        };
        r["decreasing"] = [](double range, const std::map<std::string, double>&) {
            return FluxModel::decreasing(range);
        };
        return r;
    }();
    return reg;
}

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

void register_flux_model(const std::string& label, FluxBuilder builder) {
    std::lock_guard<std::mutex> lock(registry_mutex());
    registry()[label] = std::move(builder);
}

FluxModel make_flux_model(const std::string& label, double range_bound,
                          const std::map<std::string, double>& params) {
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto it = registry().find(label);
    if (it == registry().end()) {
        throw ConfigError("unknown flux label: " + label);
    }
    return it->second(range_bound, params);
}

bool flux_model_known(const std::string& label) {
    std::lock_guard<std::mutex> lock(registry_mutex());
    return registry().count(label) != 0;
}

}  // namespace sclaw
