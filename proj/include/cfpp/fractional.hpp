#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "combinat.hpp"
#include "errors.hpp"
#include "pmf.hpp"
#include "process.hpp"
#include "specfun.hpp"
#include "stats.hpp"
#include "subordinator.hpp"

namespace cfpp {

/// A classical process driven through an inverse stable subordinator of
/// order beta; beta = 1 is the classical process itself.
struct FracProcess {
    ProcessParams params;
    double beta = 1.0;
};

inline FracProcess make_fractional(ProcessParams params, double beta) {
    validate(params);
    detail::require(!std::holds_alternative<CountingRatesParams>(params),
                    "process: fractional variants exist for btp, plp and gpap only");
    detail::require(beta > 0.0 && beta <= 1.0,
                    "beta: must lie in (0,1], got " + std::to_string(beta));
    return {std::move(params), beta};
}

namespace detail {

inline MlOptions kernel_options() {
    MlOptions opt;
    opt.tol = 1e-13;
    return opt;
}

}  // namespace detail

/// Memoized count-law weights Pr{N_beta(t) = k} of the fractional
/// Poisson process with the given intensity. One instance serves one
/// evaluation context (fixed beta, rate, t); instances are not shared
/// between threads.
class MlCountKernel {
public:
    MlCountKernel(double beta, double rate, double t, MlOptions opt = detail::kernel_options())
        : beta_(beta), x_(rate * std::pow(t, beta)),
          engine_(beta, x_, opt.tol, opt.max_terms) {
        detail::require(beta > 0.0 && beta <= 1.0, "beta: must lie in (0,1]");
        detail::require(rate > 0.0, "rate: must be > 0");
        detail::require(t >= 0.0, "t: must be >= 0");
        if (x_ > opt.x_switch)
            throw convergence_error("frac tables: rate*t^beta=" + std::to_string(x_) +
                                    " exceeds the series regime bound " +
                                    std::to_string(opt.x_switch));
    }

    /// Pr{N_beta(t) = k}.
    double weight(int k) const {
        while (static_cast<int>(cache_.size()) <= k)
            cache_.push_back(engine_.weight(static_cast<int>(cache_.size())));
        return cache_[k];
    }

    double x() const { return x_; }
    double beta() const { return beta_; }

private:
    double beta_;
    double x_;
    mutable detail::MlWeightEngine engine_;
    mutable std::vector<double> cache_;
};

/// Pmf of the time-fractional Poisson process with the given intensity:
/// Pr{N_beta(t) = n} = (rate t^beta)^n E^{n+1}_{beta, n beta + 1}(-rate t^beta).
inline double tfpp_pmf(double rate, double beta, int n, double t) {
    detail::require(rate > 0.0, "rate: must be > 0");
    detail::require(n >= 0, "n: must be >= 0");
    detail::require(t >= 0.0, "t: must be >= 0");
    detail::require(beta > 0.0 && beta <= 1.0, "beta: must lie in (0,1]");
    if (t == 0.0) return n == 0 ? 1.0 : 0.0;
    return ml_count_weight(beta, n, rate * std::pow(t, beta), detail::kernel_options());
}

namespace detail {

// Certified cap K and bound on Pr{N_beta > K}, via the exponential
// moment E u^{N_beta} = E_{beta,1}((u-1) x) evaluated at a few safe u.
inline CountTailCap fractional_count_tail_cap(double beta, double x, int at_least, double eps) {
    if (beta == 1.0) return poisson_tail_cap(x, at_least, eps);
    const double log_eps = std::log(eps);
    double best_ln_g = 0.0, best_ln_u = 0.0;
    long best_k = -1;
    for (double a : {0.5, 1.0, 2.0, 4.0, 8.0, 12.0}) {
        double ln_g;
        try {
            ln_g = std::log(ml3(MlArgs{beta, 1.0, 1.0, a}, kernel_options()));
        } catch (const convergence_error&) {
            continue;
        }
        if (!std::isfinite(ln_g)) continue;
        const double ln_u = std::log1p(a / x);
        const long k = static_cast<long>(std::ceil((ln_g - log_eps) / ln_u));
        if (best_k < 0 || k < best_k) {
            best_k = k;
            best_ln_g = ln_g;
            best_ln_u = ln_u;
        }
    }
    if (best_k < 0)
        throw convergence_error("frac tail: no usable exponential-moment bound in this regime");
    const int cap = static_cast<int>(std::max<long>(best_k, at_least));
    return {cap, std::exp(best_ln_g - (cap + 1) * best_ln_u)};
}

inline double fgpap_closed_form(const PolyaAeppliParams& g, int n,
                                const MlCountKernel& kernel) {
    if (n == 0) return kernel.weight(0);
    const double log_d = std::log(std::expm1(-g.r * std::log1p(-g.rho)));
    CompensatedSum<long double> acc;
    for (int j = 1; j <= n; ++j) {
        const double wj = kernel.weight(j);
        if (wj == 0.0) continue;
        // (lambda t^beta / D)^j E_j = weight(j) / D^j
        const double log_base = n * std::log(g.rho) - j * log_d;
        for (int m = 1; m <= j; ++m) {
            const double mag = std::exp(log_base + log_binom(j, m) +
                                        log_binom(g.r * m + n - 1.0, n)) * wj;
            acc.add(((m + j) % 2 == 0) ? mag : -mag);
        }
    }
    return static_cast<double>(acc.value());
}

}  // namespace detail

/// One-dimensional distribution of a fractional process at time t.
///
/// The convolution-over-counts route is the production default; the
/// enumeration forms exist as independent routes to the same numbers
/// and are capped at n_max <= pmf_enumeration_cap. closed_form is the
/// explicit double-sum expression available for gpap only.
inline PmfTable frac_pmf(const FracProcess& proc, double t, int n_max,
                         PmfMethod method = PmfMethod::convolution) {
    validate(proc.params);
    detail::require(proc.beta > 0.0 && proc.beta <= 1.0, "beta: must lie in (0,1]");
    detail::require(!std::holds_alternative<CountingRatesParams>(proc.params),
                    "process: fractional tables exist for btp, plp and gpap only");
    detail::require(t >= 0.0 && std::isfinite(t), "t: must be finite and >= 0");
    detail::require(n_max >= 0, "n_max: must be >= 0");
    detail::require(method != PmfMethod::recurrence,
                    "method: recurrence applies to classical tables only");
    if (method == PmfMethod::closed_form)
        detail::require(std::holds_alternative<PolyaAeppliParams>(proc.params),
                        "method: closed_form is available for gpap only");
    const bool enumerates = method == PmfMethod::partition || method == PmfMethod::composition ||
                            method == PmfMethod::theta || method == PmfMethod::lambda ||
                            method == PmfMethod::closed_form;
    if (enumerates && n_max > pmf_enumeration_cap)
        throw domain_error("n_max: enumeration methods are capped at n_max <= " +
                           std::to_string(pmf_enumeration_cap));

    PmfTable table;
    table.t = t;
    table.n_max = n_max;
    table.method = method;
    table.probs.assign(n_max + 1, 0.0);

    if (t == 0.0) {
        table.probs[0] = 1.0;
        table.tail_bound = 0.0;
        return table;
    }

    const double rate = total_rate(proc.params);
    MlCountKernel kernel(proc.beta, rate, t);
    const auto cj = [&](int j) { return jump_pmf(proc.params, j); };
    const auto wk = [&](int k) { return kernel.weight(k); };

    std::unique_ptr<ConvolutionTable> conv;
    if (n_max >= 1) {
        std::vector<double> c(n_max);
        for (int j = 1; j <= n_max; ++j) c[j - 1] = cj(j);
        conv = std::make_unique<ConvolutionTable>(c, n_max, n_max);
    }

    switch (method) {
        case PmfMethod::convolution:
            table.probs[0] = wk(0);
            for (int n = 1; n <= n_max; ++n)
                table.probs[n] = detail::pmf_convolution_form(n, *conv, wk);
            break;
        case PmfMethod::partition:
            for (int n = 0; n <= n_max; ++n) table.probs[n] = detail::pmf_partition_form(n, cj, wk);
            break;
        case PmfMethod::composition:
            for (int n = 0; n <= n_max; ++n)
                table.probs[n] = detail::pmf_composition_form(n, cj, wk);
            break;
        case PmfMethod::theta:
            for (int n = 0; n <= n_max; ++n) table.probs[n] = detail::pmf_theta_form(n, cj, wk);
            break;
        case PmfMethod::lambda:
            for (int n = 0; n <= n_max; ++n) table.probs[n] = detail::pmf_truncated_form(n, cj, wk);
            break;
        case PmfMethod::closed_form:
            for (int n = 0; n <= n_max; ++n)
                table.probs[n] = detail::fgpap_closed_form(
                    std::get<PolyaAeppliParams>(proc.params), n, kernel);
            break;
        default:
            break;
    }

    const auto cap = detail::fractional_count_tail_cap(proc.beta, kernel.x(), n_max, 1e-12);
    table.tail_bound = detail::compound_tail(n_max, cap.cap, cap.bound, conv.get(), wk);
    return table;
}

/// Probability generating function E u^{M_beta(t)} on u in [-1, 1].
inline double frac_pgf(const FracProcess& proc, double u, double t) {
    validate(proc.params);
    detail::require(proc.beta > 0.0 && proc.beta <= 1.0, "beta: must lie in (0,1]");
    detail::require(u >= -1.0 && u <= 1.0, "u: must lie in [-1, 1]");
    detail::require(t >= 0.0, "t: must be >= 0");
    const double g = pgf_exponent(proc.params, u);
    return ml3(MlArgs{proc.beta, 1.0, 1.0, -g * std::pow(t, proc.beta)}, detail::kernel_options());
}

/// Mean and variance through the subordinator moments:
/// mean = m1 E Y_beta(t), variance = m2 E Y_beta(t) + m1^2 Var Y_beta(t).
inline Moments frac_moments(const FracProcess& proc, double t) {
    validate(proc.params);
    detail::require(proc.beta > 0.0 && proc.beta <= 1.0, "beta: must lie in (0,1]");
    detail::require(t >= 0.0, "t: must be >= 0");
    const MomentCoeffs m = moment_coeffs(proc.params);
    const double ym = y_mean(proc.beta, t);
    const double yv = y_var(proc.beta, t);
    return {m.mean_rate * ym, m.var_rate * ym + m.mean_rate * m.mean_rate * yv};
}

/// Covariance Cov(M_beta(s), M_beta(t)) in the asymptotic regime
/// t >> s; the subordinator covariance is only available as a large-t
/// expansion, so a minimum t/s ratio is enforced.
inline double frac_cov(const FracProcess& proc, double s, double t, double min_ratio = 100.0) {
    validate(proc.params);
    detail::require(proc.beta > 0.0 && proc.beta <= 1.0, "beta: must lie in (0,1]");
    detail::require(s > 0.0, "s: must be > 0");
    detail::require(t >= s * min_ratio,
                    "t: asymptotic covariance requires t/s >= " + std::to_string(min_ratio));
    const MomentCoeffs m = moment_coeffs(proc.params);
    return m.var_rate * y_mean(proc.beta, s) +
           m.mean_rate * m.mean_rate * y_cov_asymptotic(proc.beta, s, t);
}

/// Correlation decay along a time grid, with the fitted log-log slope
/// and the asymptotic prefactor c0(s) of corr ~ c0(s) t^{-beta}.
struct CorrelationReport {
    double s = 0.0;
    std::vector<double> t_grid;
    std::vector<double> corr;
    double fitted_exponent = 0.0;
    double c0 = 0.0;
    bool slope_within_tol = false;
};

inline CorrelationReport correlation_decay(const FracProcess& proc, double s,
                                           std::span<const double> t_grid,
                                           double min_ratio = 100.0, double slope_tol = 0.02) {
    validate(proc.params);
    detail::require(proc.beta > 0.0 && proc.beta < 1.0,
                    "beta: correlation decay requires beta in (0,1)");
    detail::require(s > 0.0, "s: must be > 0");
    detail::require(t_grid.size() >= 2, "t_grid: need at least two points");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        detail::require(t_grid[i] > t_grid[i - 1], "t_grid: must be strictly increasing");
    detail::require(t_grid.front() >= s * min_ratio,
                    "t_grid: must start at or beyond s * " + std::to_string(min_ratio));

    const double beta = proc.beta;
    const MomentCoeffs m = moment_coeffs(proc.params);
    const double var_s = frac_moments(proc, s).variance;

    CorrelationReport rep;
    rep.s = s;
    rep.t_grid.assign(t_grid.begin(), t_grid.end());
    std::vector<double> log_t, log_corr;
    for (double t : t_grid) {
        const double c = frac_cov(proc, s, t, min_ratio) /
                         std::sqrt(var_s * frac_moments(proc, t).variance);
        rep.corr.push_back(c);
        log_t.push_back(std::log(t));
        log_corr.push_back(std::log(c));
    }
    rep.fitted_exponent = ls_slope(log_t, log_corr);
    rep.slope_within_tol = std::fabs(rep.fitted_exponent + beta) <= slope_tol;

    const double g1_sq = std::exp(2.0 * log_gamma(beta + 1.0));
    const double spread = 2.0 / std::exp(log_gamma(2.0 * beta + 1.0)) - 1.0 / g1_sq;
    rep.c0 = (m.var_rate * g1_sq * y_mean(beta, s) +
              m.mean_rate * m.mean_rate * beta * std::pow(s, 2.0 * beta) *
                  beta_fn(beta, beta + 1.0)) /
             (g1_sq * std::sqrt(var_s) * m.mean_rate * std::sqrt(spread));
    return rep;
}

/// r-th factorial moment of the fractional Bell-Touchard process:
/// r! sum_{n=1}^{r} (alpha e^theta t^beta)^n / Gamma(n beta + 1)
///    sum over compositions (m_1..m_n) of r of prod theta^{m_l}/m_l!.
inline double factorial_moment_fbtp(double alpha, double theta, double beta, int r, double t) {
    detail::require(alpha > 0.0, "alpha: must be > 0");
    detail::require(theta > 0.0, "theta: must be > 0");
    detail::require(beta > 0.0 && beta <= 1.0, "beta: must lie in (0,1]");
    detail::require(r >= 1, "r: must be >= 1");
    detail::require(t >= 0.0, "t: must be >= 0");
    if (t == 0.0) return 0.0;
    const double log_a = std::log(alpha) + theta + beta * std::log(t);
    detail::CompensatedSum<double> total;
    Composition comp;
    for (int n = 1; n <= r; ++n) {
        double inner = 0.0;
        CompositionEnumerator en(r, n);
        while (en.next(comp)) {
            double lp = 0.0;
            for (int ml : comp.parts) lp += ml * std::log(theta) - log_gamma(ml + 1.0);
            inner += std::exp(lp);
        }
        total.add(std::exp(n * log_a - log_gamma(n * beta + 1.0)) * inner);
    }
    return std::exp(log_gamma(r + 1.0)) * total.value();
}

/// Survival function of the first waiting time,
/// Pr{W_1 > t} = Pr{M_beta(t) = 0}.
inline double waiting_time_survival(const FracProcess& proc, double t) {
    validate(proc.params);
    detail::require(proc.beta > 0.0 && proc.beta <= 1.0, "beta: must lie in (0,1]");
    detail::require(t >= 0.0, "t: must be >= 0");
    const double rate = total_rate(proc.params);
    return ml3(MlArgs{proc.beta, 1.0, 1.0, -rate * std::pow(t, proc.beta)},
               detail::kernel_options());
}

}  // namespace cfpp
