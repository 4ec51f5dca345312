#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "fractional.hpp"
#include "pmf.hpp"
#include "process.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "subordinator.hpp"

namespace cfpp {

struct SimConfig {
    long n_samples = 100000;
    std::uint64_t seed = 0;
    double jump_truncation_tail = 1e-12;  ///< certified mass dropped from the jump law
    double horizon = 1.0;                 ///< default sampling time
    int n_streams = 8;   ///< logical RNG streams; results depend on these, not on threads
    int n_threads = 0;   ///< 0 = hardware concurrency
};

inline void validate(const SimConfig& cfg) {
    detail::require(cfg.n_samples >= 1, "n_samples: must be >= 1");
    detail::require(cfg.jump_truncation_tail > 0.0 && cfg.jump_truncation_tail <= 1e-6,
                    "jump_truncation_tail: must lie in (0, 1e-6]");
    detail::require(cfg.horizon > 0.0, "horizon: must be > 0");
    detail::require(cfg.n_streams >= 1, "n_streams: must be >= 1");
}

/// Inverse-CDF sampler for the jump-size law, over a precomputed
/// cumulative table truncated where the certified tail drops below
/// tail_eps.
class JumpSampler {
public:
    explicit JumpSampler(const ProcessParams& params, double tail_eps = 1e-12) {
        const int support = jump_support_bound(params, tail_eps);
        cum_.resize(support);
        double acc = 0.0;
        for (int j = 1; j <= support; ++j) {
            acc += jump_pmf(params, j);
            cum_[j - 1] = acc;
        }
    }

    int operator()(Rng& rng) const {
        const double u = rng.uniform() * cum_.back();
        const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
        return static_cast<int>(it - cum_.begin()) + 1;
    }

    int support() const { return static_cast<int>(cum_.size()); }

private:
    std::vector<double> cum_;
};

/// Exact simulation of a classical compound process at fixed times.
class ClassicalSampler {
public:
    explicit ClassicalSampler(ProcessParams params, double tail_eps = 1e-12)
        : params_(std::move(params)), jumps_(params_, tail_eps), rate_(total_rate(params_)) {
        validate(params_);
    }

    /// Compound route: Poisson(rate t) many iid jumps.
    long sample(double t, Rng& rng) const {
        detail::require(t >= 0.0, "t: must be >= 0");
        const long n = rng.poisson(rate_ * t);
        long s = 0;
        for (long i = 0; i < n; ++i) s += jumps_(rng);
        return s;
    }

    /// Superposition route: independent Poisson counts per jump size,
    /// weighted by size. Equal in law to sample(); kept as a second,
    /// structurally different sampler.
    long sample_superposed(double t, Rng& rng) const {
        detail::require(t >= 0.0, "t: must be >= 0");
        long s = 0;
        for (int j = 1; j <= jumps_.support(); ++j)
            s += j * rng.poisson(levy_weight(params_, j) * t);
        return s;
    }

    /// Stationary independent increment over a duration dt.
    long increment(double dt, Rng& rng) const { return sample(dt, rng); }

    const ProcessParams& params() const { return params_; }

private:
    ProcessParams params_;
    JumpSampler jumps_;
    double rate_;
};

/// One trajectory observed on a fixed time grid.
struct SamplePath {
    std::vector<double> times;
    std::vector<long> counts;
};

/// Exact simulation of a fractional process by the time-change
/// representation: M_beta(t) = M(Y_beta(t)) with Y the inverse stable
/// subordinator independent of M.
class FractionalSampler {
public:
    FractionalSampler(FracProcess proc, double tail_eps = 1e-12)
        : proc_(std::move(proc)), base_(proc_.params, tail_eps) {
        detail::require(proc_.beta > 0.0 && proc_.beta < 1.0,
                        "beta: fractional sampling requires beta in (0,1)");
    }

    long sample(double t, Rng& rng) const {
        detail::require(t >= 0.0, "t: must be >= 0");
        if (t == 0.0) return 0;
        return base_.sample(sample_inverse_at(proc_.beta, t, rng), rng);
    }

    /// Joint draw on a grid: one inverse-subordinator path, then one
    /// classical trajectory advanced by its increments.
    SamplePath sample_path(std::span<const double> times, Rng& rng,
                           const InversePathOptions& opt = InversePathOptions{}) const {
        const PathGrid y = sample_inverse_path(proc_.beta, times, rng, opt);
        SamplePath path;
        path.times = y.times;
        path.counts.reserve(times.size());
        long count = 0;
        double prev = 0.0;
        for (double yi : y.values) {
            count += base_.increment(yi - prev, rng);
            prev = yi;
            path.counts.push_back(count);
        }
        return path;
    }

    const FracProcess& process() const { return proc_; }
    const ClassicalSampler& base() const { return base_; }

private:
    FracProcess proc_;
    ClassicalSampler base_;
};

/// Histogram of n_samples draws over bins 0..n_max plus one overflow
/// bin. Work is split over cfg.n_streams independently seeded streams
/// (see Rng::worker_stream), so the result depends on the seed and the
/// stream count but not on the thread count.
template <class DrawFn>
std::vector<long> mc_histogram(const DrawFn& draw, int n_max, const SimConfig& cfg) {
    validate(cfg);
    detail::require(n_max >= 0, "n_max: must be >= 0");
    const int streams = cfg.n_streams;
    std::vector<std::vector<long>> local(streams, std::vector<long>(n_max + 2, 0));

    const auto run_stream = [&](int w) {
        Rng rng = Rng::worker_stream(cfg.seed, static_cast<std::uint64_t>(w));
        const long base = cfg.n_samples / streams;
        const long mine = base + (w < cfg.n_samples % streams ? 1 : 0);
        auto& counts = local[w];
        for (long i = 0; i < mine; ++i) {
            const long v = draw(rng);
            ++counts[v >= 0 && v <= n_max ? v : n_max + 1];
        }
    };

    int threads = cfg.n_threads > 0 ? cfg.n_threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, streams));
    if (threads == 1) {
        for (int w = 0; w < streams; ++w) run_stream(w);
    } else {
        std::vector<std::thread> pool;
        for (int tid = 0; tid < threads; ++tid)
            pool.emplace_back([&, tid] {
                for (int w = tid; w < streams; w += threads) run_stream(w);
            });
        for (auto& th : pool) th.join();
    }

    std::vector<long> merged(n_max + 2, 0);
    for (const auto& counts : local)
        for (std::size_t i = 0; i < merged.size(); ++i) merged[i] += counts[i];
    return merged;
}

/// Per-bin comparison of an empirical histogram against an analytic
/// table: binomial z-scores plus a chi-square over pooled bins.
struct ComparisonReport {
    std::vector<double> empirical_p;  ///< per n = 0..n_max
    std::vector<double> analytic_p;   ///< per n = 0..n_max
    std::vector<double> std_error;    ///< binomial standard error per n
    std::vector<double> z;            ///< z-score per unpooled n (NaN where pooled)
    double max_abs_z = 0.0;
    double chi_square = 0.0;
    int dof = 0;
    double p_value = 0.0;
    bool pass = false;
};

/// counts must cover 0..n_max plus a final overflow bin and sum to
/// n_samples. Bins whose analytic probability is below 10/n_samples are
/// pooled with the overflow/tail bin before the chi-square.
inline ComparisonReport compare_pmf(std::span<const long> counts, const PmfTable& analytic,
                                    long n_samples, double z_threshold = 4.0,
                                    double p_floor = 0.001) {
    detail::require(n_samples >= 1, "n_samples: must be >= 1");
    detail::require(static_cast<int>(counts.size()) == analytic.n_max + 2,
                    "counts: must cover 0..n_max plus an overflow bin");
    long total = 0;
    for (long c : counts) total += c;
    detail::require(total == n_samples, "counts: must sum to n_samples");

    const int n_max = analytic.n_max;
    const double pool_min = 10.0 / static_cast<double>(n_samples);
    ComparisonReport rep;
    rep.empirical_p.resize(n_max + 1);
    rep.analytic_p.resize(n_max + 1);
    rep.std_error.resize(n_max + 1);
    rep.z.assign(n_max + 1, std::numeric_limits<double>::quiet_NaN());

    const auto z_score = [&](double p, long observed) {
        const double se = std::sqrt(p * (1.0 - p) / n_samples);
        return (static_cast<double>(observed) / n_samples - p) / se;
    };

    double pooled_p = analytic.tail_bound;
    long pooled_obs = counts[n_max + 1];
    std::vector<std::pair<double, long>> bins;  // (expected probability, observed)
    for (int n = 0; n <= n_max; ++n) {
        const double p = analytic.probs[n];
        rep.analytic_p[n] = p;
        rep.empirical_p[n] = static_cast<double>(counts[n]) / n_samples;
        rep.std_error[n] = std::sqrt(p * (1.0 - p) / n_samples);
        if (p >= pool_min) {
            rep.z[n] = z_score(p, counts[n]);
            bins.emplace_back(p, counts[n]);
        } else {
            pooled_p += p;
            pooled_obs += counts[n];
        }
    }
    if (pooled_p > 0.0 || pooled_obs > 0) bins.emplace_back(pooled_p, pooled_obs);
    detail::require(bins.size() >= 2, "compare_pmf: degenerate single-bin comparison");

    rep.max_abs_z = 0.0;
    for (const auto& [p, obs] : bins)
        if (p > 0.0) rep.max_abs_z = std::max(rep.max_abs_z, std::fabs(z_score(p, obs)));

    double stat = 0.0;
    for (const auto& [p, obs] : bins) {
        const double expected = p * n_samples;
        if (expected > 0.0) {
            const double diff = obs - expected;
            stat += diff * diff / expected;
        }
    }
    rep.chi_square = stat;
    rep.dof = static_cast<int>(bins.size()) - 1;
    rep.p_value = chi_square_p_value(stat, rep.dof);
    rep.pass = rep.max_abs_z <= z_threshold && rep.p_value >= p_floor;
    return rep;
}

}  // namespace cfpp
