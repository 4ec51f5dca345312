#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "errors.hpp"
#include "specfun.hpp"

namespace cfpp {

/// Streaming mean/variance with third and fourth central moments
/// (Welford updates), enough to attach standard errors to both the mean
/// and the variance estimate.
class RunningMoments {
public:
    void add(double x) {
        const double n1 = static_cast<double>(n_);
        ++n_;
        const double n = static_cast<double>(n_);
        const double delta = x - mean_;
        const double delta_n = delta / n;
        const double delta_n2 = delta_n * delta_n;
        const double term1 = delta * delta_n * n1;
        m4_ += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2_ -
               4.0 * delta_n * m3_;
        m3_ += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2_;
        m2_ += term1;
        mean_ += delta_n;
    }

    long count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / (n_ - 1.0) : 0.0; }
    double se_mean() const { return std::sqrt(variance() / n_); }

    /// Standard error of the sample variance, sqrt((m4 - s^4)/n).
    double se_variance() const {
        const double s2 = variance();
        const double m4 = m4_ / n_;
        return std::sqrt(std::max(0.0, m4 - s2 * s2) / n_);
    }

private:
    long n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double m3_ = 0.0;
    double m4_ = 0.0;
};

/// Streaming Pearson correlation of paired samples.
class CorrAccumulator {
public:
    void add(double x, double y) {
        ++n_;
        const double dx = x - mx_;
        const double dy = y - my_;
        mx_ += dx / n_;
        my_ += dy / n_;
        sxx_ += dx * (x - mx_);
        syy_ += dy * (y - my_);
        sxy_ += dx * (y - my_);
    }
    long count() const { return n_; }
    double correlation() const {
        const double d = std::sqrt(sxx_ * syy_);
        return d > 0.0 ? sxy_ / d : 0.0;
    }

private:
    long n_ = 0;
    double mx_ = 0.0, my_ = 0.0;
    double sxx_ = 0.0, syy_ = 0.0, sxy_ = 0.0;
};

/// Least-squares slope of y against x.
inline double ls_slope(std::span<const double> x, std::span<const double> y) {
    detail::require(x.size() == y.size() && x.size() >= 2,
                    "ls_slope: need two equally sized samples of length >= 2");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    detail::require(sxx > 0.0, "ls_slope: x values are all equal");
    return sxy / sxx;
}

/// Upper tail of the chi-square distribution with dof degrees of freedom.
inline double chi_square_p_value(double statistic, int dof) {
    detail::require(dof >= 1, "chi_square_p_value: dof must be >= 1");
    detail::require(statistic >= 0.0, "chi_square_p_value: statistic must be >= 0");
    return gamma_q(dof / 2.0, statistic / 2.0);
}

struct KsTestResult {
    double statistic;
    double p_value;
};

namespace detail {

// Kolmogorov asymptotic survival function Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
inline double ks_q(double lambda) {
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-12) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace detail

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
inline KsTestResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    detail::require(a.size() >= 10 && b.size() >= 10, "ks_two_sample: samples too small");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(i / na - j / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    return {d, detail::ks_q(lambda)};
}

struct ChiSquareResult {
    double statistic;
    int dof;
    double p_value;
};

/// Two-sample chi-square homogeneity test over integer histograms.
/// Low-occupancy cells (pooled count below min_pooled) are merged into
/// the trailing cell.
inline ChiSquareResult chi_square_two_sample(std::span<const long> a, std::span<const long> b,
                                             long min_pooled = 20) {
    detail::require(a.size() == b.size() && a.size() >= 2,
                    "chi_square_two_sample: histograms must have equal size >= 2");
    double na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        na += a[i];
        nb += b[i];
    }
    detail::require(na > 0 && nb > 0, "chi_square_two_sample: empty histogram");

    // pool trailing/low cells so every compared cell is populated
    std::vector<std::pair<double, double>> cells;
    double pa = 0.0, pb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        pa += a[i];
        pb += b[i];
        if (pa + pb >= min_pooled) {
            cells.emplace_back(pa, pb);
            pa = pb = 0.0;
        }
    }
    if (pa + pb > 0) {
        if (cells.empty()) cells.emplace_back(pa, pb);
        else {
            cells.back().first += pa;
            cells.back().second += pb;
        }
    }
    detail::require(cells.size() >= 2, "chi_square_two_sample: degenerate single-cell input");

    // K. Pearson statistic with the usual sqrt(nb/na) weighting
    const double ka = std::sqrt(nb / na);
    const double kb = std::sqrt(na / nb);
    double stat = 0.0;
    for (const auto& [ca, cb] : cells) {
        const double diff = ka * ca - kb * cb;
        stat += diff * diff / (ca + cb);
    }
    const int dof = static_cast<int>(cells.size()) - 1;
    return {stat, dof, chi_square_p_value(stat, dof)};
}

}  // namespace cfpp
