#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <span>
#include <vector>

#include "sclaw/errors.hpp"

namespace sclaw::quad {

template <typename F>
concept Integrand = requires(F f, double x) {
    { f(x) } -> std::convertible_to<double>;
};

namespace detail {

// 5-point Gauss-Legendre on [-1,1]; exact for polynomials of degree <= 9.
inline constexpr std::array<double, 5> kG5Nodes = {
    -0.9061798459386640, -0.5384693101056831, 0.0,
    0.5384693101056831, 0.9061798459386640};
inline constexpr std::array<double, 5> kG5Weights = {
    0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
    0.4786286704993665, 0.2369268850561891};

// 8-point Gauss-Legendre; exact for degree <= 15.
inline constexpr std::array<double, 8> kG8Nodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498, 0.5255324099163290,
    0.7966664774136267, 0.9602898564975363};
inline constexpr std::array<double, 8> kG8Weights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

// Gauss-Kronrod 15/7 pair (QUADPACK qk15 abscissae and weights).
inline constexpr std::array<double, 8> kGk15Nodes = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr std::array<double, 8> kGk15WeightsK = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
inline constexpr std::array<double, 4> kGk15WeightsG = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct Gk15Result {
    double kronrod;
    double error;
};

template <Integrand F>
Gk15Result gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double result_k = kGk15WeightsK[7] * fc;
    double result_g = kGk15WeightsG[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kGk15Nodes[i];
        const double fsum = f(c - dx) + f(c + dx);
        result_k += kGk15WeightsK[i] * fsum;
        if (i % 2 == 1) result_g += kGk15WeightsG[i / 2] * fsum;
    }
    result_k *= h;
    result_g *= h;
    return {result_k, std::abs(result_k - result_g)};
}

template <Integrand F>
double adaptive_rec(F&& f, double a, double b, double tol, int depth) {
    const auto r = gk15(f, a, b);
    if (r.error <= tol || r.error <= 1e-15 * std::abs(r.kronrod)) {
        return r.kronrod;
    }
    if (depth <= 0) {
        throw NumericsError("adaptive quadrature failed to converge");
    }
    const double c = 0.5 * (a + b);
    return adaptive_rec(f, a, c, 0.5 * tol, depth - 1) +
           adaptive_rec(f, c, b, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Fixed 5-point Gauss on [a,b].
template <Integrand F>
double gauss5(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 5; ++i) {
        s += detail::kG5Weights[i] * f(c + h * detail::kG5Nodes[i]);
    }
    return s * h;
}

/// Fixed 8-point Gauss on [a,b].
template <Integrand F>
double gauss8(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) {
        s += detail::kG8Weights[i] * f(c + h * detail::kG8Nodes[i]);
    }
    return s * h;
}

/// Adaptive Gauss-Kronrod integration of f over [a,b] to absolute
/// tolerance `tol`. Orientation-aware (a > b gives the negated integral).
/// Throws NumericsError when the local error cannot be brought under tol.
template <Integrand F>
double integrate_adaptive(F&& f, double a, double b, double tol,
                          int max_depth = 48) {
    if (a == b) return 0.0;
    const double sign = (a <= b) ? 1.0 : -1.0;
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    return sign * detail::adaptive_rec(f, lo, hi, tol, max_depth);
}

/// Oriented integral of f over [a,b] split at the given breakpoints, with
/// fixed 8-point Gauss per smooth piece. Exact for integrands that are
/// polynomials of degree <= 15 between consecutive breakpoints.
template <Integrand F>
double piecewise_gauss8(F&& f, double a, double b,
                        std::span<const double> breakpoints) {
    if (a == b) return 0.0;
    const double sign = (a <= b) ? 1.0 : -1.0;
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    double cuts[16];
    std::size_t n = 0;
    cuts[n++] = lo;
    for (double p : breakpoints) {
        if (p > lo && p < hi && n + 1 < std::size(cuts)) cuts[n++] = p;
    }
    cuts[n++] = hi;
    std::sort(cuts, cuts + n);
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        s += gauss8(f, cuts[i], cuts[i + 1]);
    }
    return sign * s;
}

}  // namespace sclaw::quad
