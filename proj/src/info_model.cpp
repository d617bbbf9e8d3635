#include "adtarget/info_model.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "adtarget/errors.hpp"
#include "adtarget/root_find.hpp"

namespace adtarget {

InfoTechnology::InfoTechnology(double lambda) : lambda_(lambda), decay_(0.0) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw ValidationError("lambda", "must lie strictly between 0 and 1");
    }
    decay_ = -std::log1p(-lambda);
}

double phi(const InfoTechnology& tech, double a) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
        throw DomainError("phi: advertising intensity must be finite and nonnegative");
    }
    return -std::expm1(-tech.decay() * std::sqrt(a));
}

double phi_prime(const InfoTechnology& tech, double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw DomainError("phi_prime: advertising intensity must be finite and positive");
    }
    const double s = std::sqrt(a);
    const double k = tech.decay();
    return k * std::exp(-k * s) / (2.0 * s);
}

double inverse_phi_prime(const InfoTechnology& tech, double y) {
    if (!(y > 0.0) || !std::isfinite(y)) {
        throw DomainError("inverse_phi_prime: target must be finite and positive");
    }
    const double k = tech.decay();
    // phi'(s^2) = y  <=>  g(s) = k s + ln s + ln(2y/k) = 0, g increasing and concave.
    const double offset = std::log(2.0 * y / k);
    auto g = [&](double s) { return std::pair{k * s + std::log(s) + offset, k + 1.0 / s}; };

    // g(k / 2y) = k^2 / 2y > 0.
    const double hi = k / (2.0 * y);
    double lo = 0.5 * hi;
    while (g(lo).first >= 0.0) {
        lo *= 0.5;
        if (lo < std::numeric_limits<double>::min()) {
            throw SolverError("inverse_phi_prime: lower bracket underflowed");
        }
    }
    const double s = root_find::safeguarded_newton(g, {lo, hi}, {.rel_tol = 1e-15, .max_iter = 200});
    return s * s;
}

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

bool trial_informed(double lambda, std::uint64_t message_count, std::uint64_t seed_key,
                    std::uint64_t trial) {
    const std::uint64_t trial_key = splitmix64(seed_key ^ (trial * kGolden));
    for (std::uint64_t j = 0; j < message_count; ++j) {
        if (unit_uniform(splitmix64(trial_key + j)) < lambda) return true;
    }
    return false;
}

void check_mc_args(double lambda, std::uint64_t trials) {
    if (trials < 1) throw DomainError("informed_fraction_monte_carlo: trials must be >= 1");
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw DomainError("informed_fraction_monte_carlo: lambda must lie in [0, 1]");
    }
}

McEstimate summarize(std::uint64_t informed, std::uint64_t trials) {
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(informed) / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

}  // namespace

McEstimate informed_fraction_monte_carlo(double lambda, std::uint64_t message_count,
                                         std::uint64_t trials, std::uint64_t seed) {
    check_mc_args(lambda, trials);
    const std::uint64_t seed_key = splitmix64(seed);
    const auto n = static_cast<std::int64_t>(trials);
    std::uint64_t informed = 0;
#pragma omp parallel for reduction(+ : informed) schedule(static)
    for (std::int64_t t = 0; t < n; ++t) {
        informed += trial_informed(lambda, message_count, seed_key, static_cast<std::uint64_t>(t)) ? 1 : 0;
    }
    return summarize(informed, trials);
}

namespace serial {

McEstimate informed_fraction_monte_carlo(double lambda, std::uint64_t message_count,
                                         std::uint64_t trials, std::uint64_t seed) {
    check_mc_args(lambda, trials);
    const std::uint64_t seed_key = splitmix64(seed);
    std::uint64_t informed = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        informed += trial_informed(lambda, message_count, seed_key, t) ? 1 : 0;
    }
    return summarize(informed, trials);
}

}  // namespace serial

}  // namespace adtarget
