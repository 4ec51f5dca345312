#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "combinat.hpp"
#include "errors.hpp"
#include "process.hpp"
#include "specfun.hpp"

namespace cfpp {

enum class PmfMethod {
    recurrence,   ///< O(n^2) rate recurrence (classical tables only)
    partition,    ///< sum over multiplicity vectors of partitions
    composition,  ///< sum over ordered compositions
    convolution,  ///< jump-law convolution powers mixed over the count law
    theta,        ///< partitions grouped by fixed part count
    lambda,       ///< truncated multiplicity vectors (fractional tables only)
    closed_form,  ///< explicit double sum (fractional Polya-Aeppli only)
};

inline std::string to_string(PmfMethod m) {
    switch (m) {
        case PmfMethod::recurrence: return "recurrence";
        case PmfMethod::partition: return "partition";
        case PmfMethod::composition: return "composition";
        case PmfMethod::convolution: return "convolution";
        case PmfMethod::theta: return "theta";
        case PmfMethod::lambda: return "lambda";
        case PmfMethod::closed_form: return "closed_form";
    }
    return "unknown";
}

inline PmfMethod parse_method(const std::string& s) {
    if (s == "recurrence") return PmfMethod::recurrence;
    if (s == "partition") return PmfMethod::partition;
    if (s == "composition") return PmfMethod::composition;
    if (s == "convolution") return PmfMethod::convolution;
    if (s == "theta") return PmfMethod::theta;
    if (s == "lambda") return PmfMethod::lambda;
    if (s == "closed_form") return PmfMethod::closed_form;
    throw domain_error("method: unknown pmf method '" + s + "'");
}

/// Enumeration-based methods materialize index sets whose size grows
/// like the partition numbers; they are validation tools, not the
/// production path, and are capped here.
inline constexpr int pmf_enumeration_cap = 22;

/// Probabilities q(0,t)..q(n_max,t) of one process at one time, plus a
/// certified upper bound on the mass beyond n_max.
struct PmfTable {
    double t = 0.0;
    int n_max = 0;
    std::vector<double> probs;
    PmfMethod method = PmfMethod::recurrence;
    double tail_bound = 0.0;
};

namespace detail {

// ---- generic pmf forms -------------------------------------------------
//
// Every evaluator below expresses the compound law through the
// normalized jump pmf c_j and the count-law weights w_k = Pr{count=k},
// so each summand is a product of quantities in [0, 1]; the large
// rate powers cancel inside w_k instead of amplifying its error.

template <class CJ, class WK>
double pmf_partition_form(int n, const CJ& cj, const WK& wk) {
    if (n == 0) return wk(0);
    CompensatedSum<double> acc;
    PartitionEnumerator en(n);
    MultiplicityVector mv;
    while (en.next(mv)) {
        double log_coef = log_gamma(mv.part_count() + 1.0);
        bool zero = false;
        for (int j = 1; j <= n && !zero; ++j) {
            const int xj = mv.x[j - 1];
            if (xj == 0) continue;
            const double c = cj(j);
            if (c <= 0.0) zero = true;
            else log_coef += xj * std::log(c) - log_gamma(xj + 1.0);
        }
        if (!zero) acc.add(std::exp(log_coef) * wk(mv.part_count()));
    }
    return acc.value();
}

template <class CJ, class WK>
double pmf_theta_form(int n, const CJ& cj, const WK& wk) {
    if (n == 0) return wk(0);
    CompensatedSum<double> acc;
    MultiplicityVector mv;
    for (int k = 1; k <= n; ++k) {
        const double w = wk(k);
        KPartitionEnumerator en(n, k);
        while (en.next(mv)) {
            double log_coef = log_gamma(k + 1.0);
            bool zero = false;
            for (int j = 1; j <= n && !zero; ++j) {
                const int xj = mv.x[j - 1];
                if (xj == 0) continue;
                const double c = cj(j);
                if (c <= 0.0) zero = true;
                else log_coef += xj * std::log(c) - log_gamma(xj + 1.0);
            }
            if (!zero) acc.add(std::exp(log_coef) * w);
        }
    }
    return acc.value();
}

template <class CJ, class WK>
double pmf_truncated_form(int n, const CJ& cj, const WK& wk) {
    if (n == 0) return wk(0);
    CompensatedSum<double> acc;
    MultiplicityVector mv;
    for (int k = 1; k <= n; ++k) {
        const double w = wk(k);
        TruncatedMultiplicityEnumerator en(n, k);
        while (en.next(mv)) {
            double log_coef = log_gamma(k + 1.0);
            bool zero = false;
            for (int j = 1; j <= n - k + 1 && !zero; ++j) {
                const int xj = mv.x[j - 1];
                if (xj == 0) continue;
                const double c = cj(j);
                if (c <= 0.0) zero = true;
                else log_coef += xj * std::log(c) - log_gamma(xj + 1.0);
            }
            if (!zero) acc.add(std::exp(log_coef) * w);
        }
    }
    return acc.value();
}

template <class CJ, class WK>
double pmf_composition_form(int n, const CJ& cj, const WK& wk) {
    if (n == 0) return wk(0);
    CompensatedSum<double> acc;
    Composition comp;
    for (int k = 1; k <= n; ++k) {
        const double w = wk(k);
        CompositionEnumerator en(n, k);
        while (en.next(comp)) {
            double log_coef = 0.0;
            bool zero = false;
            for (int m : comp.parts) {
                const double c = cj(m);
                if (c <= 0.0) {
                    zero = true;
                    break;
                }
                log_coef += std::log(c);
            }
            if (!zero) acc.add(std::exp(log_coef) * w);
        }
    }
    return acc.value();
}

template <class WK>
double pmf_convolution_form(int n, const ConvolutionTable& table, const WK& wk) {
    if (n == 0) return wk(0);
    CompensatedSum<double> acc;
    for (int k = 1; k <= n; ++k) acc.add(table.at(k, n) * wk(k));
    return acc.value();
}

// ---- certified tails ---------------------------------------------------

// Mass of the compound law beyond n_max, from the identity
// Pr{sum > n} = sum_k w_k Pr{S_k > n}: exact through count level K,
// plus the certified count tail beyond K.
template <class WK>
double compound_tail(int n_max, int count_cap, double count_tail_bound,
                     const ConvolutionTable* table, const WK& wk) {
    CompensatedSum<double> acc;
    for (int k = 1; k <= std::min(count_cap, n_max); ++k) {
        double cdf = 0.0;
        for (int m = k; m <= n_max; ++m) cdf += table->at(k, m);
        acc.add(wk(k) * std::max(0.0, 1.0 - cdf));
    }
    for (int k = n_max + 1; k <= count_cap; ++k) acc.add(wk(k));
    acc.add(count_tail_bound);
    return acc.value();
}

inline double poisson_log_pmf(double mean, int k) {
    return k * std::log(mean) - mean - log_gamma(k + 1.0);
}

// Smallest K >= floor(mean) with a geometric certificate that the
// Poisson tail beyond K is below eps; returns {K, bound}.
struct CountTailCap {
    int cap;
    double bound;
};

inline CountTailCap poisson_tail_cap(double mean, int at_least, double eps) {
    int k = std::max(at_least, static_cast<int>(mean) + 1);
    for (;; ++k) {
        const double ratio = mean / (k + 2.0);
        if (ratio < 1.0) {
            const double bound = std::exp(poisson_log_pmf(mean, k + 1)) / (1.0 - ratio);
            if (bound < eps) return {k, bound};
        }
        if (k > 20000000) throw convergence_error("poisson_tail_cap: no certified cap found");
    }
}

}  // namespace detail

namespace detail {

inline std::vector<double> classical_recurrence_row(const ProcessParams& params, double t, int n_max) {
    const double rate = total_rate(params);
    std::vector<double> q(n_max + 1, 0.0);
    q[0] = std::exp(-rate * t);
    std::vector<double> jl(n_max + 1, 0.0);  // jl[j] = j * lambda_j
    const int support = std::holds_alternative<CountingRatesParams>(params)
                            ? static_cast<int>(std::get<CountingRatesParams>(params).rates.size())
                            : n_max;
    for (int j = 1; j <= std::min(n_max, support); ++j) jl[j] = j * levy_weight(params, j);
    for (int n = 1; n <= n_max; ++n) {
        CompensatedSum<double> acc;
        for (int j = 1; j <= std::min(n, support); ++j) acc.add(jl[j] * q[n - j]);
        q[n] = t / n * acc.value();
    }
    return q;
}

}  // namespace detail

/// Exact distribution of a classical (integer-order) process at time t.
///
/// All methods agree up to roundoff; the recurrence is the production
/// default, the enumeration forms exist to validate it and are capped
/// at n_max <= pmf_enumeration_cap.
inline PmfTable classical_pmf(const ProcessParams& params, double t, int n_max,
                              PmfMethod method = PmfMethod::recurrence) {
    validate(params);
    detail::require(t >= 0.0 && std::isfinite(t), "t: must be finite and >= 0");
    detail::require(n_max >= 0, "n_max: must be >= 0");
    detail::require(method == PmfMethod::recurrence || method == PmfMethod::partition ||
                        method == PmfMethod::composition || method == PmfMethod::convolution,
                    "method: '" + to_string(method) + "' is not applicable to classical tables");
    if ((method == PmfMethod::partition || method == PmfMethod::composition) &&
        n_max > pmf_enumeration_cap)
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

    const double rate = total_rate(params);
    const double mean_count = rate * t;
    if (mean_count > 700.0)
        throw convergence_error(
            "classical_pmf: total_rate*t > 700 underflows double precision; reduce t");

    const auto cj = [&](int j) { return jump_pmf(params, j); };
    const auto wk = [&](int k) { return std::exp(detail::poisson_log_pmf(mean_count, k)); };

    std::unique_ptr<ConvolutionTable> conv;
    if (n_max >= 1) {
        std::vector<double> c(n_max);
        for (int j = 1; j <= n_max; ++j) c[j - 1] = cj(j);
        conv = std::make_unique<ConvolutionTable>(c, n_max, n_max);
    }

    switch (method) {
        case PmfMethod::recurrence:
            table.probs = detail::classical_recurrence_row(params, t, n_max);
            break;
        case PmfMethod::partition:
            for (int n = 0; n <= n_max; ++n) table.probs[n] = detail::pmf_partition_form(n, cj, wk);
            break;
        case PmfMethod::composition:
            for (int n = 0; n <= n_max; ++n)
                table.probs[n] = detail::pmf_composition_form(n, cj, wk);
            break;
        case PmfMethod::convolution:
            table.probs[0] = wk(0);
            for (int n = 1; n <= n_max; ++n)
                table.probs[n] = detail::pmf_convolution_form(n, *conv, wk);
            break;
        default:
            break;
    }

    const auto cap = detail::poisson_tail_cap(mean_count, n_max, 1e-12);
    table.tail_bound = detail::compound_tail(n_max, cap.cap, cap.bound, conv.get(), wk);
    return table;
}

}  // namespace cfpp
