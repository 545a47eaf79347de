#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sclaw/errors.hpp"
#include "sclaw/grid.hpp"

namespace sclaw {

/// Scalar flux f with derivative, Lipschitz bound over the stated solution
/// range, and the Engquist-Osher splitting
///
///   f+(u) = f(0) + integral_0^u max(f'(s), 0) ds
///   f-(u) = integral_0^u min(f'(s), 0) ds
///
/// Built-in models evaluate the splitting in closed form; models that
/// register the critical points of f' get exact piecewise evaluation, and
/// anything else falls back to adaptive quadrature (tol 1e-10).
class FluxModel {
public:
    static FluxModel burgers(double range_bound);
    static FluxModel linear(double speed);
    /// Strictly decreasing flux f(u) = -sign(u) u^2/2 - u; exercises the
    /// f' <= 0 branch where the EO flux reduces to F = f(u_{j+1}).
    static FluxModel decreasing(double range_bound);
    static FluxModel custom(std::string label, std::function<double(double)> f,
                            std::function<double(double)> f_prime,
                            double lipschitz,
                            std::vector<double> critical_points = {});

    const std::string& label() const { return label_; }
    double lipschitz() const { return lipschitz_; }
    const std::vector<double>& critical_points() const { return critical_points_; }

    double f(double u) const;
    double f_prime(double u) const;

    double eo_plus(double u) const;
    double eo_minus(double u) const;
    /// EO numerical flux F(a,b) = f+(a) + f-(b).
    double eo_flux(double a, double b) const { return eo_plus(a) + eo_minus(b); }

    enum class EoKind { Burgers, LinearUp, LinearDown, AllDecreasing, CriticalPoints, Quadrature };
    EoKind eo_kind() const { return kind_; }

private:
    FluxModel() = default;

    std::string label_;
    std::function<double(double)> f_;
    std::function<double(double)> f_prime_;
    double lipschitz_ = 0.0;
    std::vector<double> critical_points_;
    EoKind kind_ = EoKind::Quadrature;
    double speed_ = 0.0;  // linear models

    double eo_signed_part(double u, bool positive_part) const;
};

/// Component j of (F_{j+1/2} - F_{j-1/2}) / dx with neighbors resolved by
/// the grid's boundary policy.
std::vector<double> flux_divergence(const FluxModel& model,
                                    const LatticeState& state);

/// C^2 mollified absolute value family beta_xi(r) = xi * beta(r/xi) built
/// from the base profile with beta''(s) = (15/8)(1-s^2)^2 on |s| <= 1.
///
/// Closed-form constants: m1 = 5/16 (sup | |r| - beta(r) | of the base),
/// m2 = 15/8 (sup beta'' of the base), so
///   |r| - m1*xi <= beta(r) <= |r|,   |beta''(r)| <= m2/xi on |r| <= xi.
class EntropyPair {
public:
    explicit EntropyPair(double xi);

    double xi() const { return xi_; }
    double m1() const { return 5.0 / 16.0; }
    double m2() const { return 15.0 / 8.0; }

    double beta(double r) const;
    double beta_prime(double r) const;
    double beta_double_prime(double r) const;

private:
    double xi_;
};

inline EntropyPair make_entropy_pair(double xi) { return EntropyPair(xi); }

/// f^beta(a,b) = integral_b^a beta'(r-b) f'(r) dr (adaptive, tol 1e-10).
double entropy_flux_fbeta(const FluxModel& model, const EntropyPair& pair,
                          double a, double b);

/// Kruzkov flux sign(a-b) (f(a) - f(b)); the xi -> 0 limit of f^beta.
double kruzkov_flux(const FluxModel& model, double a, double b);

/// EO split of the entropy flux for Kruzkov level k:
///   zeta+(u) = integral_k^u beta'(r-k) max(f'(r),0) dr
///   zeta-(u) = integral_k^u beta'(r-k) min(f'(r),0) dr
/// The numerical entropy flux of the cell entropy inequality is
/// Z_{j+1/2} = zeta+(u_j) + zeta-(u_{j+1}); for f' <= 0 it reduces to the
/// single-variable flux zeta(u_{j+1}) with zeta' = beta' f'.
double eo_entropy_flux_plus(const FluxModel& model, const EntropyPair& pair,
                            double k, double u);
double eo_entropy_flux_minus(const FluxModel& model, const EntropyPair& pair,
                             double k, double u);

/// Cubic-Hermite tabulation of zeta+- over a u-range; used by per-step
/// diagnostics where direct quadrature per cell would dominate the run.
class EntropyFluxTable {
public:
    EntropyFluxTable(const FluxModel& model, const EntropyPair& pair, double k,
                     double u_min, double u_max, std::size_t n_points = 2048);

    double zeta_plus(double u) const { return eval(plus_, plus_d_, u); }
    double zeta_minus(double u) const { return eval(minus_, minus_d_, u); }
    double k() const { return k_; }

private:
    double eval(const std::vector<double>& y, const std::vector<double>& d,
                double u) const;

    double k_;
    double u_min_;
    double h_;
    std::vector<double> plus_, plus_d_, minus_, minus_d_;
};

/// Registry of flux models selectable by label from run configurations.
/// Builders receive the solution-range bound (for the Lipschitz constant)
/// and the scenario's numeric parameters.
using FluxBuilder =
    std::function<FluxModel(double range_bound, const std::map<std::string, double>& params)>;

void register_flux_model(const std::string& label, FluxBuilder builder);
FluxModel make_flux_model(const std::string& label, double range_bound,
                          const std::map<std::string, double>& params = {});
bool flux_model_known(const std::string& label);

}  // namespace sclaw
