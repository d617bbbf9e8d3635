#pragma once

#include <cstdint>

namespace adtarget {

/// Message-exposure technology. A consumer reached with advertising intensity A
/// sees M(A) = sqrt(A) independent messages, each observed with probability
/// `lambda`, and is informed after observing at least one.
///
/// The informed fraction is phi(A) = 1 - (1 - lambda)^sqrt(A) and its
/// derivative is read as
///
///     phi'(A) = -ln(1 - lambda) * (1 - lambda)^sqrt(A) / (2 sqrt(A)),
///
/// the form that reproduces the base case A* = 4.06, Q* = 42.08.
class InfoTechnology {
public:
    /// Throws ValidationError("lambda", ...) unless 0 < lambda < 1.
    explicit InfoTechnology(double lambda);

    double lambda() const noexcept { return lambda_; }

    /// k = -ln(1 - lambda) > 0, the decay rate of the uninformed share in sqrt(A).
    double decay() const noexcept { return decay_; }

    friend bool operator==(const InfoTechnology&, const InfoTechnology&) = default;

private:
    double lambda_;
    double decay_;
};

/// Informed fraction phi(a). Throws DomainError for a < 0 or non-finite a.
double phi(const InfoTechnology& tech, double a);

/// phi'(a) for a > 0. phi' is unbounded at 0, so a <= 0 is a DomainError.
double phi_prime(const InfoTechnology& tech, double a);

/// The unique a > 0 with phi'(a) = y. Solved in s = sqrt(a), where phi' is
/// smooth and strictly decreasing. Throws DomainError unless y is finite and > 0.
double inverse_phi_prime(const InfoTechnology& tech, double y);

struct McEstimate {
    double estimate;
    double std_error;
};

/// Simulates `trials` consumers, each exposed to `message_count` Bernoulli(lambda)
/// messages. Randomness is counter-based on (seed, trial, message), so the result
/// does not depend on thread count or scheduling. Runs OpenMP-parallel over trials.
McEstimate informed_fraction_monte_carlo(double lambda, std::uint64_t message_count,
                                         std::uint64_t trials, std::uint64_t seed);

namespace serial {

/// Single-threaded reference for informed_fraction_monte_carlo; bit-identical output.
McEstimate informed_fraction_monte_carlo(double lambda, std::uint64_t message_count,
                                         std::uint64_t trials, std::uint64_t seed);

}  // namespace serial

}  // namespace adtarget
