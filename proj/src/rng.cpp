#include "sclaw/rng.hpp"

#include <cmath>
#include <numbers>

#include "sclaw/errors.hpp"

namespace sclaw::rng {

double CounterRng::normal(std::uint64_t index) const {
    const auto b = bits128(index);
    const double u1 = to_unit_positive(b[0]);
    const double u2 = to_unit(b[1]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t poisson(SequentialRng& rng, double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw NumericsError("poisson: mean must be finite and nonnegative");
    }
    if (mean == 0.0) return 0;
    // Poisson(m) = Poisson(m/2) + Poisson(m/2); split until inversion is
    // well-conditioned (exp(-mean) comfortably above denormal range).
    if (mean > 500.0) {
        const std::uint64_t a = poisson(rng, mean * 0.5);
        const std::uint64_t b = poisson(rng, mean * 0.5);
        return a + b;
    }
    const double u = rng.uniform01();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    while (u > cdf) {
        ++k;
        p *= mean / static_cast<double>(k);
        cdf += p;
        if (k > 200 + static_cast<std::uint64_t>(20.0 * mean)) break;  // tail guard
    }
    return k;
}

}  // namespace sclaw::rng
