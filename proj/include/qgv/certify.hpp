#pragma once

// Confidence bounds for verification outcomes, their inversion to a
// certified infidelity, minimum sample counts, and the log-log scaling fit.

#include <cstdint>
#include <optional>
#include <vector>

#include "qgv/errors.hpp"

namespace qgv {

struct VerificationResult {
    std::int64_t n_trials;   // N
    std::int64_t n_passed;   // M
    double delta;            // target failure probability
    double nu;               // spectral gap of the strategy
    double epsilon;          // certified infidelity bound (1 when not certifiable)
    bool certifiable;
};

struct ScalingFit {
    double slope;
    double intercept;
    double slope_stderr;
    double n_min;  // fit uses points with n_min <= N < n_max
    double n_max;
    int n_points;
};

/// KL divergence in nats: x ln(x/y) + (1-x) ln((1-x)/(1-y)), 0 ln 0 = 0.
/// Throws DomainError when y in {0,1} makes a nonzero term diverge.
double kl_divergence(double x, double y);

/// e^(-epsilon N nu), the all-pass bound.
double delta_bound_perfect(double epsilon, std::int64_t n, double nu);

/// e^(-D(M/N || 1 - epsilon nu) N).  Requires epsilon >= (1 - M/N)/nu
/// (throws EpsilonTooSmall).  Returns 0 when the divergence is infinite.
double delta_bound(std::int64_t m, std::int64_t n, double epsilon, double nu);

/// Smallest epsilon with delta_bound(m, n, epsilon, nu) <= delta, found by
/// bisection to 1e-9 absolute.  Empty when no nontrivial certificate exists
/// (bound above delta even at epsilon = 1/nu, or the certified epsilon
/// would exceed 1 and the fidelity statement becomes vacuous).
std::optional<double> try_epsilon_at_confidence(std::int64_t m, std::int64_t n,
                                                double delta, double nu);

/// Throwing wrapper around try_epsilon_at_confidence (NotCertifiable).
double epsilon_at_confidence(std::int64_t m, std::int64_t n, double delta, double nu);

/// ceil(ln(1/delta) / (epsilon nu)).
std::int64_t min_samples_perfect(double epsilon, double delta, double nu);

/// Ordinary least squares on (ln N, ln epsilon) over n_min <= N < n_max.
/// Throws InsufficientPoints when fewer than 3 usable points remain.
ScalingFit loglog_fit(const std::vector<std::pair<double, double>>& points,
                      double n_min, double n_max);

VerificationResult make_verification_result(std::int64_t m, std::int64_t n,
                                            double delta, double nu);

}  // namespace qgv
