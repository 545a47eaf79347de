#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "sclaw/errors.hpp"

namespace sclaw::stats {

/// Sum with a fixed binary reduction tree. The result depends only on the
/// order of `values`, never on thread count or chunking, so ensemble
/// statistics are bit-stable.
inline double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

struct MeanStdErr {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

/// Sample mean and standard error (sample std / sqrt(n)).
inline MeanStdErr mean_stderr(std::span<const double> values) {
    MeanStdErr out;
    out.n = values.size();
    if (out.n == 0) return out;
    out.mean = pairwise_sum(values) / static_cast<double>(out.n);
    if (out.n < 2) return out;
    std::vector<double> sq(out.n);
    for (std::size_t i = 0; i < out.n; ++i) {
        const double d = values[i] - out.mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(out.n - 1);
    out.std_error = std::sqrt(var / static_cast<double>(out.n));
    return out;
}

inline double sample_std(std::span<const double> values) {
    const auto ms = mean_stderr(values);
    return ms.std_error * std::sqrt(static_cast<double>(ms.n));
}

/// Linear-interpolation quantile of a copy of the data (R type-7).
inline double quantile(std::span<const double> values, double p) {
    if (values.empty()) throw NumericsError("quantile of empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    if (p <= 0.0) return sorted.front();
    if (p >= 1.0) return sorted.back();
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    if (i + 1 >= sorted.size()) return sorted.back();
    return sorted[i] * (1.0 - frac) + sorted[i + 1] * frac;
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// ||y - yhat||_2 / ||y||_2
    double relative_residual = 0.0;
};

/// Weighted least squares y ~ intercept + slope * x.
inline LinearFit weighted_linear_fit(std::span<const double> x,
                                     std::span<const double> y,
                                     std::span<const double> w) {
    if (x.size() != y.size() || x.size() != w.size() || x.size() < 2) {
        throw NumericsError("weighted_linear_fit: need >= 2 matching points");
    }
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        swx += w[i] * x[i];
        swy += w[i] * y[i];
        swxx += w[i] * x[i] * x[i];
        swxy += w[i] * x[i] * y[i];
    }
    const double det = sw * swxx - swx * swx;
    if (!(std::abs(det) > 1e-300)) {
        throw NumericsError("weighted_linear_fit: degenerate design matrix");
    }
    LinearFit fit;
    fit.slope = (sw * swxy - swx * swy) / det;
    fit.intercept = (swxx * swy - swx * swxy) / det;
    double rss = 0, yy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        rss += r * r;
        yy += y[i] * y[i];
    }
    fit.relative_residual = (yy > 0) ? std::sqrt(rss / yy) : 0.0;
    return fit;
}

struct TwoTermFit {
    double c1 = 0.0;  // coefficient of x1
    double c2 = 0.0;  // coefficient of x2
    double relative_residual = 0.0;
};

/// Least squares y ~ c1*x1 + c2*x2 (no intercept).
inline TwoTermFit two_term_fit(std::span<const double> x1,
                               std::span<const double> x2,
                               std::span<const double> y) {
    if (x1.size() != x2.size() || x1.size() != y.size() || y.size() < 2) {
        throw NumericsError("two_term_fit: need >= 2 matching points");
    }
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        a11 += x1[i] * x1[i];
        a12 += x1[i] * x2[i];
        a22 += x2[i] * x2[i];
        b1 += x1[i] * y[i];
        b2 += x2[i] * y[i];
    }
    const double det = a11 * a22 - a12 * a12;
    if (!(std::abs(det) > 1e-300)) {
        throw NumericsError("two_term_fit: degenerate design matrix");
    }
    TwoTermFit fit;
    fit.c1 = (a22 * b1 - a12 * b2) / det;
    fit.c2 = (a11 * b2 - a12 * b1) / det;
    double rss = 0, yy = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = y[i] - (fit.c1 * x1[i] + fit.c2 * x2[i]);
        rss += r * r;
        yy += y[i] * y[i];
    }
    fit.relative_residual = (yy > 0) ? std::sqrt(rss / yy) : 0.0;
    return fit;
}

}  // namespace sclaw::stats
