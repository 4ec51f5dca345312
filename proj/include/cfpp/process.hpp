#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "specfun.hpp"

namespace cfpp {

/// Bell-Touchard process: jump rates alpha * theta^j / j!.
struct BellTouchardParams {
    double alpha;
    double theta;
};

/// Poisson-logarithmic process: jump law c_j = -(1-p)^j / (j ln p).
struct PoissonLogParams {
    double lambda;
    double p;
};

/// Generalized Polya-Aeppli process: negative-binomial jump law
/// c_j = C(r+j-1, j) rho^j (1-rho)^r / (1 - (1-rho)^r), real r > 0.
struct PolyaAeppliParams {
    double lambda;
    double rho;
    double r;
};

/// Finite counting process with jumps of size 1..k at rates rates[j-1].
struct CountingRatesParams {
    std::vector<double> rates;
};

using ProcessParams =
    std::variant<BellTouchardParams, PoissonLogParams, PolyaAeppliParams, CountingRatesParams>;

inline void validate(const ProcessParams& params) {
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BellTouchardParams>) {
                detail::require(p.alpha > 0.0 && std::isfinite(p.alpha),
                                "alpha: must be > 0, got " + std::to_string(p.alpha));
                detail::require(p.theta > 0.0 && std::isfinite(p.theta),
                                "theta: must be > 0, got " + std::to_string(p.theta));
            } else if constexpr (std::is_same_v<T, PoissonLogParams>) {
                detail::require(p.lambda > 0.0 && std::isfinite(p.lambda),
                                "lambda: must be > 0, got " + std::to_string(p.lambda));
                detail::require(p.p > 0.0 && p.p < 1.0,
                                "p: must lie in (0,1), got " + std::to_string(p.p));
            } else if constexpr (std::is_same_v<T, PolyaAeppliParams>) {
                detail::require(p.lambda > 0.0 && std::isfinite(p.lambda),
                                "lambda: must be > 0, got " + std::to_string(p.lambda));
                detail::require(p.rho > 0.0 && p.rho < 1.0,
                                "rho: must lie in (0,1), got " + std::to_string(p.rho));
                detail::require(p.r > 0.0 && std::isfinite(p.r),
                                "r: must be > 0, got " + std::to_string(p.r));
            } else {
                detail::require(!p.rates.empty(), "rates: must contain at least one rate");
                double sum = 0.0;
                for (double r : p.rates) {
                    detail::require(r >= 0.0 && std::isfinite(r),
                                    "rates: entries must be finite and >= 0");
                    sum += r;
                }
                detail::require(sum > 0.0, "rates: at least one rate must be positive");
            }
        },
        params);
}

inline const char* process_name(const ProcessParams& params) {
    switch (params.index()) {
        case 0: return "btp";
        case 1: return "plp";
        case 2: return "gpap";
        default: return "gcp";
    }
}

/// Total event rate: the diagonal coefficient of the governing system.
inline double total_rate(const ProcessParams& params) {
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BellTouchardParams>)
                return p.alpha * std::expm1(p.theta);
            else if constexpr (std::is_same_v<T, PoissonLogParams>)
                return p.lambda;
            else if constexpr (std::is_same_v<T, PolyaAeppliParams>)
                return p.lambda;
            else {
                double s = 0.0;
                for (double r : p.rates) s += r;
                return s;
            }
        },
        params);
}

/// Rate of jumps of size j (the weight of the j-th Dirac mass of the
/// Levy measure).
inline double levy_weight(const ProcessParams& params, int j) {
    detail::require(j >= 1, "levy_weight: j must be >= 1");
    return std::visit(
        [j](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BellTouchardParams>) {
                return p.alpha * std::exp(j * std::log(p.theta) - log_gamma(j + 1.0));
            } else if constexpr (std::is_same_v<T, PoissonLogParams>) {
                return -p.lambda * std::exp(j * std::log1p(-p.p)) / (j * std::log(p.p));
            } else if constexpr (std::is_same_v<T, PolyaAeppliParams>) {
                const double one_minus_rho_r = std::exp(p.r * std::log1p(-p.rho));
                return p.lambda * std::exp(log_binom(p.r + j - 1.0, j) + j * std::log(p.rho)) *
                       one_minus_rho_r / (1.0 - one_minus_rho_r);
            } else {
                return j <= static_cast<int>(p.rates.size()) ? p.rates[j - 1] : 0.0;
            }
        },
        params);
}

/// Jump-size pmf c_j = levy_weight(j) / total_rate.
inline double jump_pmf(const ProcessParams& params, int j) {
    detail::require(j >= 1, "jump_pmf: j must be >= 1");
    return levy_weight(params, j) / total_rate(params);
}

struct LevyWeights {
    std::vector<double> weights;  ///< rates of jumps of size 1..j_max
    double tail;                  ///< total_rate minus the listed mass
};

inline LevyWeights levy_weights(const ProcessParams& params, int j_max) {
    detail::require(j_max >= 1, "levy_weights: j_max must be >= 1");
    validate(params);
    LevyWeights out;
    out.weights.reserve(j_max);
    double sum = 0.0;
    for (int j = 1; j <= j_max; ++j) {
        out.weights.push_back(levy_weight(params, j));
        sum += out.weights.back();
    }
    out.tail = std::max(0.0, total_rate(params) - sum);
    return out;
}

/// Per-unit-time mean and variance coefficients of the compound Poisson
/// law: E M(t) = mean_rate * t, Var M(t) = var_rate * t.
struct MomentCoeffs {
    double mean_rate;
    double var_rate;
};

inline MomentCoeffs moment_coeffs(const ProcessParams& params) {
    return std::visit(
        [](const auto& p) -> MomentCoeffs {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BellTouchardParams>) {
                const double base = p.alpha * p.theta * std::exp(p.theta);
                return {base, base * (p.theta + 1.0)};
            } else if constexpr (std::is_same_v<T, PoissonLogParams>) {
                const double m1 = p.lambda * (p.p - 1.0) / (p.p * std::log(p.p));
                return {m1, m1 / p.p};
            } else if constexpr (std::is_same_v<T, PolyaAeppliParams>) {
                const double omr = std::exp(p.r * std::log1p(-p.rho));
                const double m1 = p.r * p.rho * p.lambda / ((1.0 - p.rho) * (1.0 - omr));
                const double m2 = m1 * (1.0 + p.r * p.rho) / (1.0 - p.rho);
                return {m1, m2};
            } else {
                double m1 = 0.0, m2 = 0.0;
                for (std::size_t j = 0; j < p.rates.size(); ++j) {
                    m1 += (j + 1.0) * p.rates[j];
                    m2 += (j + 1.0) * (j + 1.0) * p.rates[j];
                }
                return {m1, m2};
            }
        },
        params);
}

struct Moments {
    double mean;
    double variance;
};

inline Moments classical_moments(const ProcessParams& params, double t) {
    validate(params);
    detail::require(t >= 0.0, "t: must be >= 0");
    const MomentCoeffs c = moment_coeffs(params);
    return {c.mean_rate * t, c.var_rate * t};
}

/// Exponent g(u) of the probability generating function,
/// G(u, t) = exp(-g(u) t). Nonnegative on |u| <= 1, negative for u > 1
/// inside the convergence domain (used for exponential tail bounds).
inline double pgf_exponent(const ProcessParams& params, double u) {
    return std::visit(
        [u](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BellTouchardParams>) {
                return p.alpha * (std::exp(p.theta) - std::exp(p.theta * u));
            } else if constexpr (std::is_same_v<T, PoissonLogParams>) {
                detail::require(u < 1.0 / (1.0 - p.p), "u: outside pgf domain");
                return p.lambda * (1.0 - std::log1p(-(1.0 - p.p) * u) / std::log(p.p));
            } else if constexpr (std::is_same_v<T, PolyaAeppliParams>) {
                detail::require(u < 1.0 / p.rho, "u: outside pgf domain");
                const double num = std::exp(-p.r * std::log1p(-p.rho * u)) - 1.0;
                const double den = std::exp(-p.r * std::log1p(-p.rho)) - 1.0;
                return p.lambda * (1.0 - num / den);
            } else {
                double s = 0.0;
                double upow = 1.0;
                for (double rate : p.rates) {
                    upow *= u;
                    s += rate * (1.0 - upow);
                }
                return s;
            }
        },
        params);
}

/// Supremum of the pgf's convergence domain in u (may be infinite).
inline double pgf_argument_sup(const ProcessParams& params) {
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PoissonLogParams>)
                return 1.0 / (1.0 - p.p);
            else if constexpr (std::is_same_v<T, PolyaAeppliParams>)
                return 1.0 / p.rho;
            else
                return std::numeric_limits<double>::infinity();
        },
        params);
}

/// Probability generating function E u^{M(t)} on u in [-1, 1].
inline double classical_pgf(const ProcessParams& params, double u, double t) {
    validate(params);
    detail::require(t >= 0.0, "t: must be >= 0");
    detail::require(u >= -1.0 && u <= 1.0, "u: must lie in [-1, 1]");
    return std::exp(-t * pgf_exponent(params, u));
}

/// Smallest N with certified jump-pmf tail sum_{j>N} c_j < tail_eps.
/// The certificate is a geometric bound on the jump-law term ratios.
inline int jump_support_bound(const ProcessParams& params, double tail_eps) {
    detail::require(tail_eps > 0.0 && tail_eps <= 1e-6,
                    "tail_eps: must lie in (0, 1e-6]");
    validate(params);
    if (const auto* gcp = std::get_if<CountingRatesParams>(&params))
        return static_cast<int>(gcp->rates.size());

    // ratio_bound(j) >= sup_{i >= j} c_{i+1}/c_i for each jump law
    const auto ratio_bound = [&](int j) -> double {
        if (const auto* b = std::get_if<BellTouchardParams>(&params)) return b->theta / (j + 1.0);
        if (const auto* l = std::get_if<PoissonLogParams>(&params)) return 1.0 - l->p;
        const auto& g = std::get<PolyaAeppliParams>(params);
        return g.r >= 1.0 ? g.rho * (g.r + j) / (j + 1.0) : g.rho;
    };

    double c_next = jump_pmf(params, 2);
    for (int n = 1; n < 10000000; ++n) {
        const double q = ratio_bound(n + 1);
        if (q < 1.0 && c_next / (1.0 - q) < tail_eps) return n;
        c_next *= levy_weight(params, n + 2) / levy_weight(params, n + 1);
    }
    throw convergence_error("jump_support_bound: no certified truncation found");
}

}  // namespace cfpp
