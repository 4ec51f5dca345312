#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"
#include "specfun.hpp"

namespace cfpp {

namespace detail {

inline void validate_stable_order(double beta) {
    require(beta > 0.0 && beta < 1.0,
            "beta: stable subordinator order must lie in (0,1), got " + std::to_string(beta));
}

}  // namespace detail

/// One increment D_beta(t) of a standard beta-stable subordinator
/// (Laplace functional E exp(-s D_beta(t)) = exp(-t s^beta)).
///
/// Uses Kanter's representation of a standard positive stable variable:
///   S = sin(beta w) / (sin w)^{1/beta} * (sin((1-beta) w) / E)^{(1-beta)/beta}
/// with w uniform on (0, pi) and E a unit exponential, then scales by
/// self-similarity, D_beta(t) = t^{1/beta} S.
inline double sample_stable(double beta, double t, Rng& rng) {
    detail::validate_stable_order(beta);
    detail::require(t > 0.0, "t: must be > 0");
    // keep w away from the endpoints where sin w underflows
    double u;
    do {
        u = rng.uniform();
    } while (u < 1e-12 || u > 1.0 - 1e-12);
    const double w = 3.14159265358979323846 * u;
    double e;
    do {
        e = rng.exponential();
    } while (e < 1e-300);
    const double s = std::sin(beta * w) / std::pow(std::sin(w), 1.0 / beta) *
                     std::pow(std::sin((1.0 - beta) * w) / e, (1.0 - beta) / beta);
    return std::pow(t, 1.0 / beta) * s;
}

/// One draw of the inverse stable subordinator Y_beta(t), using the
/// single-time identity Y_beta(t) =d (t / D_beta(1))^beta that follows
/// from {Y_beta(t) <= x} = {D_beta(x) >= t} and self-similarity.
inline double sample_inverse_at(double beta, double t, Rng& rng) {
    detail::validate_stable_order(beta);
    detail::require(t >= 0.0, "t: must be >= 0");
    if (t == 0.0) return 0.0;
    return std::pow(t / sample_stable(beta, 1.0, rng), beta);
}

/// Monotone path sampled on a fixed time grid.
struct PathGrid {
    std::vector<double> times;
    std::vector<double> values;
};

struct InversePathOptions {
    int target_steps = 2000;     ///< operational-time resolution of the D_beta walk
    long max_steps = 200000000;  ///< hard cap while extending past slow passages
};

/// One realization of Y_beta on a grid, as the right-continuous inverse
/// of a stable-subordinator walk on a fine operational-time grid. The
/// initial horizon comes from D_beta(tau) ~ tau^{1/beta}; the walk is
/// simply extended whenever D has not yet passed the largest requested
/// time.
inline PathGrid sample_inverse_path(double beta, std::span<const double> times, Rng& rng,
                                    const InversePathOptions& opt = InversePathOptions{}) {
    detail::validate_stable_order(beta);
    detail::require(!times.empty(), "times: must be non-empty");
    detail::require(times.front() >= 0.0, "times: must start >= 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        detail::require(times[i] > times[i - 1], "times: must be strictly increasing");

    PathGrid out;
    out.times.assign(times.begin(), times.end());
    out.values.reserve(times.size());

    const double t_max = times.back();
    const double dtau = std::max(std::pow(std::max(t_max, 1e-12), beta), 1e-12) /
                        std::max(opt.target_steps, 1);

    std::size_t next = 0;
    while (next < times.size() && times[next] == 0.0) {
        out.values.push_back(0.0);
        ++next;
    }

    double d = 0.0;  // D_beta at the current operational time step
    long step = 0;
    while (next < times.size()) {
        if (++step > opt.max_steps)
            throw convergence_error("sample_inverse_path: walk exceeded max_steps before passage");
        d += sample_stable(beta, dtau, rng);
        while (next < times.size() && d > times[next]) {
            out.values.push_back(step * dtau);
            ++next;
        }
    }
    return out;
}

/// E Y_beta(t) = t^beta / Gamma(beta+1); beta = 1 is the degenerate
/// deterministic clock.
inline double y_mean(double beta, double t) {
    detail::require(beta > 0.0 && beta <= 1.0, "beta: must lie in (0,1]");
    detail::require(t >= 0.0, "t: must be >= 0");
    return std::pow(t, beta) / std::exp(log_gamma(beta + 1.0));
}

/// Var Y_beta(t) = (2/Gamma(2 beta + 1) - 1/Gamma(beta+1)^2) t^{2 beta}.
inline double y_var(double beta, double t) {
    detail::require(beta > 0.0 && beta <= 1.0, "beta: must lie in (0,1]");
    detail::require(t >= 0.0, "t: must be >= 0");
    const double g1 = std::exp(log_gamma(beta + 1.0));
    const double coeff = 2.0 / std::exp(log_gamma(2.0 * beta + 1.0)) - 1.0 / (g1 * g1);
    return std::max(0.0, coeff) * std::pow(t, 2.0 * beta);
}

/// Large-t asymptotic covariance of the inverse subordinator at fixed s:
///   Cov(Y(s), Y(t)) ~ [beta s^{2 beta} B(beta, beta+1)
///                      - beta^2 s^{beta+1} / ((beta+1) t^{1-beta})] / Gamma(beta+1)^2.
/// Quality degrades unless t >> s.
inline double y_cov_asymptotic(double beta, double s, double t) {
    detail::require(beta > 0.0 && beta <= 1.0, "beta: must lie in (0,1]");
    detail::require(s >= 0.0, "s: must be >= 0");
    detail::require(t >= s, "t: asymptotic covariance requires t >= s");
    const double g1 = std::exp(log_gamma(beta + 1.0));
    const double lead = beta * std::pow(s, 2.0 * beta) * beta_fn(beta, beta + 1.0);
    const double corr = beta * beta * std::pow(s, beta + 1.0) /
                        ((beta + 1.0) * std::pow(t, 1.0 - beta));
    return (lead - corr) / (g1 * g1);
}

}  // namespace cfpp
