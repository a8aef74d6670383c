#include "qgv/certify.hpp"

#include <cmath>

namespace qgv {

double kl_divergence(double x, double y) {
    if (x < 0.0 || x > 1.0) throw DomainError("kl_divergence: x must be in [0, 1]");
    if (y < 0.0 || y > 1.0) throw DomainError("kl_divergence: y must be in [0, 1]");
    double out = 0.0;
    if (x > 0.0) {
        if (y == 0.0) throw DomainError("kl_divergence: x ln(x/y) diverges at y = 0");
        out += x * std::log(x / y);
    }
    if (x < 1.0) {
        if (y == 1.0) throw DomainError("kl_divergence: (1-x) ln((1-x)/(1-y)) diverges at y = 1");
        out += (1.0 - x) * std::log((1.0 - x) / (1.0 - y));
    }
    return std::max(0.0, out);
}

double delta_bound_perfect(double epsilon, std::int64_t n, double nu) {
    if (nu <= 0.0 || nu > 1.0) throw OutOfRange("delta_bound_perfect: nu must be in (0, 1]");
    if (epsilon <= 0.0 || epsilon > 1.0 / nu)
        throw OutOfRange("delta_bound_perfect: epsilon must be in (0, 1/nu]");
    if (n < 1) throw OutOfRange("delta_bound_perfect: n must be >= 1");
    return std::exp(-epsilon * double(n) * nu);
}

double delta_bound(std::int64_t m, std::int64_t n, double epsilon, double nu) {
    if (n < 1 || m < 0 || m > n) throw OutOfRange("delta_bound: need 0 <= M <= N, N >= 1");
    if (nu <= 0.0 || nu > 1.0) throw OutOfRange("delta_bound: nu must be in (0, 1]");
    const double x = double(m) / double(n);
    if (epsilon < (1.0 - x) / nu - 1e-15)
        throw EpsilonTooSmall("delta_bound: requires epsilon >= (1 - M/N)/nu");
    const double y = std::max(0.0, 1.0 - epsilon * nu);
    if (y == 0.0) return x > 0.0 ? 0.0 : 1.0;
    if (y >= 1.0) return 1.0;
    return std::exp(-kl_divergence(std::max(x, y), y) * double(n));
}

std::optional<double> try_epsilon_at_confidence(std::int64_t m, std::int64_t n,
                                                double delta, double nu) {
    if (delta <= 0.0 || delta >= 1.0)
        throw OutOfRange("epsilon_at_confidence: delta must be in (0, 1)");
    if (n < 1 || m < 0 || m > n) throw OutOfRange("epsilon_at_confidence: need 0 <= M <= N");
    if (nu <= 0.0 || nu > 1.0) throw OutOfRange("epsilon_at_confidence: nu must be in (0, 1]");
    double lo = (1.0 - double(m) / double(n)) / nu;
    double hi = 1.0 / nu;
    if (delta_bound(m, n, hi, nu) > delta) return std::nullopt;
    while (hi - lo > 1e-9) {
        const double mid = (lo + hi) / 2.0;
        if (delta_bound(m, n, mid, nu) <= delta)
            hi = mid;
        else
            lo = mid;
    }
    // A certificate with epsilon > 1 says nothing about the fidelity.
    if (hi > 1.0) return std::nullopt;
    return hi;
}

double epsilon_at_confidence(std::int64_t m, std::int64_t n, double delta, double nu) {
    auto eps = try_epsilon_at_confidence(m, n, delta, nu);
    if (!eps) throw NotCertifiable("epsilon_at_confidence: no nontrivial certificate at this delta");
    return *eps;
}

std::int64_t min_samples_perfect(double epsilon, double delta, double nu) {
    if (epsilon <= 0.0 || epsilon > 1.0) throw OutOfRange("min_samples_perfect: epsilon in (0, 1]");
    if (delta <= 0.0 || delta >= 1.0) throw OutOfRange("min_samples_perfect: delta in (0, 1)");
    if (nu <= 0.0 || nu > 1.0) throw OutOfRange("min_samples_perfect: nu in (0, 1]");
    const double raw = std::log(1.0 / delta) / (epsilon * nu);
    auto n = std::int64_t(std::ceil(raw));
    // Guard against the ceiling landing one high on an exact integer.
    if (n > 1 && std::exp(-epsilon * double(n - 1) * nu) <= delta) --n;
    return n;
}

ScalingFit loglog_fit(const std::vector<std::pair<double, double>>& points,
                      double n_min, double n_max) {
    std::vector<std::pair<double, double>> logs;
    for (const auto& [n, eps] : points)
        if (n >= n_min && n < n_max && eps > 0.0)
            logs.emplace_back(std::log(n), std::log(eps));
    const int k = int(logs.size());
    if (k < 3) throw InsufficientPoints("loglog_fit: need at least 3 points in range");
    double sx = 0, sy = 0;
    for (const auto& [x, y] : logs) {
        sx += x;
        sy += y;
    }
    const double mx = sx / k, my = sy / k;
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : logs) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0) throw InsufficientPoints("loglog_fit: degenerate abscissa");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ssr = 0;
    for (const auto& [x, y] : logs) {
        const double r = y - (intercept + slope * x);
        ssr += r * r;
    }
    const double stderr_ = k > 2 ? std::sqrt(ssr / double(k - 2) / sxx) : 0.0;
    return ScalingFit{slope, intercept, stderr_, n_min, n_max, k};
}

VerificationResult make_verification_result(std::int64_t m, std::int64_t n,
                                            double delta, double nu) {
    auto eps = try_epsilon_at_confidence(m, n, delta, nu);
    return VerificationResult{n, m, delta, nu, eps.value_or(1.0), eps.has_value()};
}

}  // namespace qgv
