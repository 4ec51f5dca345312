#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include <mpfr.h>
#include <quadmath.h>

#include "errors.hpp"

namespace cfpp {

namespace detail {

inline double abs_of(double v) { return std::fabs(v); }
inline long double abs_of(long double v) { return fabsl(v); }
inline __float128 abs_of(__float128 v) { return fabsq(v); }

/// Neumaier-compensated accumulator. Required for the alternating
/// Mittag-Leffler series where intermediate terms dwarf the result.
template <class T>
class CompensatedSum {
public:
    void add(T v) {
        const T t = sum_ + v;
        if (abs_of(sum_) >= abs_of(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_ = 0;
    T comp_ = 0;
};

}  // namespace detail

/// log Gamma(x) for strictly positive x.
inline double log_gamma(double x) {
    detail::require(x > 0.0, "log_gamma: argument must be positive, got " + std::to_string(x));
    return std::lgamma(x);
}

/// Euler beta function B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b), a, b > 0.
inline double beta_fn(double a, double b) {
    detail::require(a > 0.0 && b > 0.0,
                    "beta_fn: arguments must be positive, got a=" + std::to_string(a) +
                        ", b=" + std::to_string(b));
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

/// log of the generalized binomial coefficient C(a, k) = Gamma(a+1) /
/// (Gamma(k+1) Gamma(a-k+1)). Real a is allowed; all three gamma
/// arguments must be positive.
inline double log_binom(double a, double k) {
    detail::require(a + 1.0 > 0.0 && k + 1.0 > 0.0 && a - k + 1.0 > 0.0,
                    "log_binom: arguments outside the positive-gamma domain");
    return log_gamma(a + 1.0) - log_gamma(k + 1.0) - log_gamma(a - k + 1.0);
}

inline double binom_real(double a, double k) { return std::exp(log_binom(a, k)); }

/// Arguments of the three-parameter Mittag-Leffler function
///   E^gamma_{alpha,beta}(x) = sum_j Gamma(j+gamma) x^j / (j! Gamma(gamma) Gamma(j alpha + beta)).
struct MlArgs {
    double alpha;
    double beta;
    double gamma;
    double x;
};

struct MlOptions {
    double tol = 1e-12;     ///< absolute error target, must lie in (0, 1e-6]
    int max_terms = 10000;  ///< term budget before reporting non-convergence
    double x_switch = 15.0; ///< series regime bound on |x|
};

/// Three-parameter Mittag-Leffler function by direct Taylor summation.
///
/// Terms are generated by a multiplicative recurrence whose gamma-ratio
/// factor is taken in log space, and accumulated in binary128 with
/// compensated summation: for x as low as -30 the alternating partial
/// sums exceed the result by ~25 orders of magnitude, which double (and
/// even 80-bit extended) accumulation cannot absorb.
///
/// Only the series regime |x| <= x_switch is supported; beyond it a
/// convergence_error is raised instead of switching to an asymptotic
/// expansion. For x <= 0 the series alternates and the first omitted
/// term brackets the remainder; for x > 0 a geometric tail bound is
/// used once the term ratio decays below 1/2.
inline double ml3(const MlArgs& args, const MlOptions& opt = MlOptions{}) {
    detail::require(args.alpha > 0.0 && args.beta > 0.0 && args.gamma > 0.0,
                    "ml3: alpha, beta, gamma must be strictly positive");
    detail::require(std::isfinite(args.x), "ml3: x must be finite");
    detail::require(opt.tol > 0.0 && opt.tol <= 1e-6, "ml3: tol must lie in (0, 1e-6]");
    detail::require(opt.max_terms >= 1, "ml3: max_terms must be >= 1");
    if (std::fabs(args.x) > opt.x_switch)
        throw convergence_error("ml3: |x|=" + std::to_string(std::fabs(args.x)) +
                                " exceeds the series regime bound " +
                                std::to_string(opt.x_switch));

    if (args.x == 0.0) return std::exp(-log_gamma(args.beta));

    const __float128 x = args.x;
    const __float128 al = args.alpha;
    const __float128 be = args.beta;
    const __float128 ga = args.gamma;
    const __float128 tolq = static_cast<__float128>(opt.tol) * 0.5Q;

    __float128 lg_cur = lgammaq(be);   // log Gamma(j*alpha + beta) at j = 0
    __float128 term = expq(-lg_cur);   // j = 0 term: 1 / Gamma(beta)
    detail::CompensatedSum<__float128> acc;
    acc.add(term);

    int decreasing = 0;
    __float128 prev_ratio = HUGE_VALQ;
    for (int j = 0; j < opt.max_terms; ++j) {
        const __float128 lg_next = lgammaq((j + 1) * al + be);
        const __float128 next = term * x * (j + ga) / (j + 1) * expq(lg_cur - lg_next);
        lg_cur = lg_next;

        const __float128 ratio = fabsq(next) / fabsq(term);
        decreasing = (ratio < 1.0Q) ? decreasing + 1 : 0;
        term = next;
        acc.add(term);

        if (decreasing >= 2) {
            if (x < 0) {
                // alternating: remainder after adding t_{j+1} is bounded by |t_{j+2}| <= |t_{j+1}|
                if (fabsq(term) <= tolq) return static_cast<double>(acc.value());
            } else if (ratio < 0.5Q && ratio <= prev_ratio) {
                if (fabsq(term) * ratio / (1.0Q - ratio) <= tolq)
                    return static_cast<double>(acc.value());
            }
        }
        prev_ratio = ratio;
    }
    throw convergence_error("ml3: series did not converge within " +
                            std::to_string(opt.max_terms) + " terms (alpha=" +
                            std::to_string(args.alpha) + ", x=" + std::to_string(args.x) + ")");
}

inline double ml3(const MlArgs& args, double tol) {
    MlOptions opt;
    opt.tol = tol;
    return ml3(args, opt);
}

namespace detail {

// Natural log of the largest term magnitude of the scaled series
// sum_j (-1)^j C(j+k,k) x^{j+k} / Gamma((j+k) beta + 1), by a cheap
// double-precision scan. Decides how much working precision the
// cancellation will consume.
inline double ml_weight_log_max_term(double beta, int k, double x, int max_terms) {
    const double log_x = std::log(x);
    double lg = std::lgamma(k * beta + 1.0);
    double lt = k * log_x - lg;
    double best = lt;
    for (int j = 0; j < max_terms; ++j) {
        const double lg_next = std::lgamma((j + k + 1) * beta + 1.0);
        lt += log_x + std::log((j + k + 1.0) / (j + 1.0)) + (lg - lg_next);
        lg = lg_next;
        best = std::max(best, lt);
        if (lt < best - 80.0 && lt < -80.0) break;  // well past the peak
    }
    return best;
}

/// Light RAII wrapper over one mpfr number.
class MpReal {
public:
    explicit MpReal(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    MpReal(MpReal&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    MpReal(const MpReal&) = delete;
    MpReal& operator=(const MpReal&) = delete;
    MpReal& operator=(MpReal&&) = delete;
    ~MpReal() { mpfr_clear(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

/// Evaluation context for the scaled Mittag-Leffler count weights
/// x^k E^{k+1}_{beta, k beta + 1}(-x) at fixed (beta, x). The series
/// cancels down from terms of modulus exp(log_max_term); binary128
/// handles roughly 100 bits of cancellation and anything beyond is
/// summed in mpfr at an adaptively chosen precision, with the
/// Gamma((m+1) beta + 1)/Gamma(m beta + 1) step ratios shared across k.
class MlWeightEngine {
public:
    MlWeightEngine(double beta, double x, double tol, int max_terms)
        : beta_(beta), x_(x), tol_(tol), max_terms_(max_terms) {}

    MlWeightEngine(const MlWeightEngine&) = delete;
    MlWeightEngine& operator=(const MlWeightEngine&) = delete;

    double weight(int k) {
        if (x_ == 0.0) return k == 0 ? 1.0 : 0.0;
        const double log_max = ml_weight_log_max_term(beta_, k, x_, max_terms_);
        // bits consumed by cancellation plus the absolute target
        const double need = (log_max - std::log(tol_)) * 1.4426950408889634 + 24.0;
        if (need <= 100.0) return quad_path(k);
        const auto prec = static_cast<mpfr_prec_t>(64 * ((static_cast<long>(need) + 63) / 64));
        if (prec > 4096)
            throw convergence_error(
                "ml_count_weight: series cancellation exceeds supported precision (beta=" +
                std::to_string(beta_) + ", k=" + std::to_string(k) +
                ", x=" + std::to_string(x_) + ")");
        return mpfr_path(k, prec);
    }

private:
    double quad_path(int k) const {
        const __float128 xq = x_;
        const __float128 bq = beta_;
        const __float128 tolq = static_cast<__float128>(tol_) * 0.5Q;
        __float128 lg_cur = lgammaq(k * bq + 1.0Q);
        __float128 term = expq(k * logq(xq) - lg_cur);
        CompensatedSum<__float128> acc;
        acc.add(term);
        int decreasing = 0;
        for (int j = 0; j < max_terms_; ++j) {
            const __float128 lg_next = lgammaq((j + k + 1) * bq + 1.0Q);
            const __float128 next = term * (-xq) * (j + k + 1) / (j + 1) * expq(lg_cur - lg_next);
            lg_cur = lg_next;
            decreasing = (fabsq(next) < fabsq(term)) ? decreasing + 1 : 0;
            term = next;
            acc.add(term);
            // alternating signs: the first omitted term brackets the rest
            if (decreasing >= 2 && fabsq(term) <= tolq)
                return std::clamp(static_cast<double>(acc.value()), 0.0, 1.0);
        }
        throw convergence_error("ml_count_weight: series did not converge within " +
                                std::to_string(max_terms_) + " terms (beta=" +
                                std::to_string(beta_) + ", k=" + std::to_string(k) +
                                ", x=" + std::to_string(x_) + ")");
    }

    void ensure_ratios(mpfr_prec_t prec, int m_hi) {
        if (prec != ratio_prec_) {
            ratios_.clear();
            ratio_prec_ = prec;
        }
        if (static_cast<int>(ratios_.size()) > m_hi) return;
        MpReal lg_a(prec), lg_b(prec), arg(prec);
        const auto lngamma_at = [&](MpReal& dst, long m) {
            mpfr_set_d(arg.get(), beta_, MPFR_RNDN);
            mpfr_mul_si(arg.get(), arg.get(), m, MPFR_RNDN);
            mpfr_add_ui(arg.get(), arg.get(), 1, MPFR_RNDN);
            mpfr_lngamma(dst.get(), arg.get(), MPFR_RNDN);
        };
        long m = static_cast<long>(ratios_.size());
        lngamma_at(lg_a, m);
        while (static_cast<int>(ratios_.size()) <= m_hi) {
            lngamma_at(lg_b, m + 1);
            MpReal g(prec);
            mpfr_sub(g.get(), lg_a.get(), lg_b.get(), MPFR_RNDN);
            mpfr_exp(g.get(), g.get(), MPFR_RNDN);  // Gamma(m b + 1)/Gamma((m+1) b + 1)
            ratios_.push_back(std::move(g));
            mpfr_swap(lg_a.get(), lg_b.get());
            ++m;
        }
    }

    double mpfr_path(int k, mpfr_prec_t prec) {
        ensure_ratios(prec, k + 64);
        MpReal term(prec), sum(prec), tmp(prec), abs_term(prec);
        // u_0 = exp(k ln x - lnGamma(k beta + 1))
        mpfr_set_d(tmp.get(), x_, MPFR_RNDN);
        mpfr_log(tmp.get(), tmp.get(), MPFR_RNDN);
        mpfr_mul_si(tmp.get(), tmp.get(), k, MPFR_RNDN);
        {
            MpReal arg(prec), lg(prec);
            mpfr_set_d(arg.get(), beta_, MPFR_RNDN);
            mpfr_mul_si(arg.get(), arg.get(), k, MPFR_RNDN);
            mpfr_add_ui(arg.get(), arg.get(), 1, MPFR_RNDN);
            mpfr_lngamma(lg.get(), arg.get(), MPFR_RNDN);
            mpfr_sub(tmp.get(), tmp.get(), lg.get(), MPFR_RNDN);
        }
        mpfr_exp(term.get(), tmp.get(), MPFR_RNDN);
        mpfr_set(sum.get(), term.get(), MPFR_RNDN);

        int decreasing = 0;
        double prev_abs = std::numeric_limits<double>::infinity();
        for (int j = 0; j < max_terms_; ++j) {
            const int m = j + k;
            if (m + 1 >= static_cast<int>(ratios_.size())) ensure_ratios(prec, m + 64);
            // term *= -x (j+k+1)/(j+1) * Gamma(m b + 1)/Gamma((m+1) b + 1)
            mpfr_mul_d(term.get(), term.get(), -x_, MPFR_RNDN);
            mpfr_mul_si(term.get(), term.get(), m + 1, MPFR_RNDN);
            mpfr_div_si(term.get(), term.get(), j + 1, MPFR_RNDN);
            mpfr_mul(term.get(), term.get(), ratios_[m].get(), MPFR_RNDN);
            mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
            mpfr_abs(abs_term.get(), term.get(), MPFR_RNDN);
            const double a = mpfr_get_d(abs_term.get(), MPFR_RNDN);
            decreasing = (a < prev_abs) ? decreasing + 1 : 0;
            prev_abs = a;
            if (decreasing >= 2 && a <= tol_ * 0.5)
                return std::clamp(mpfr_get_d(sum.get(), MPFR_RNDN), 0.0, 1.0);
        }
        throw convergence_error("ml_count_weight: series did not converge within " +
                                std::to_string(max_terms_) + " terms (beta=" +
                                std::to_string(beta_) + ", k=" + std::to_string(k) +
                                ", x=" + std::to_string(x_) + ")");
    }

    double beta_;
    double x_;
    double tol_;
    int max_terms_;
    mpfr_prec_t ratio_prec_ = 0;
    std::vector<MpReal> ratios_;
};

}  // namespace detail

/// Scaled Mittag-Leffler weight x^k E^{k+1}_{beta, k beta + 1}(-x) for
/// x >= 0: the k-th probability of the fractional Poisson count law
/// (the Poisson pmf when beta = 1).
///
/// Evaluated as a single series rather than as x^k times ml3: the two
/// factors grow/shrink like x^{+-k}, so a separate evaluation would
/// turn ml3's absolute error into an error amplified by x^k. The
/// combined series still cancels heavily for large k, so the working
/// precision is chosen per call from the scanned term magnitudes.
inline double ml_count_weight(double beta, int k, double x, const MlOptions& opt = MlOptions{}) {
    detail::require(beta > 0.0 && beta <= 1.0, "ml_count_weight: beta must lie in (0,1]");
    detail::require(k >= 0, "ml_count_weight: k must be >= 0");
    detail::require(x >= 0.0 && std::isfinite(x), "ml_count_weight: x must be finite and >= 0");
    detail::require(opt.tol > 0.0 && opt.tol <= 1e-6, "ml_count_weight: tol must lie in (0, 1e-6]");
    if (x > opt.x_switch)
        throw convergence_error("ml_count_weight: x=" + std::to_string(x) +
                                " exceeds the series regime bound " +
                                std::to_string(opt.x_switch));
    detail::MlWeightEngine engine(beta, x, opt.tol, opt.max_terms);
    return engine.weight(k);
}

namespace detail {

// Regularized incomplete gamma by power series, x < a + 1.
inline double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16)
            return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
    }
    throw convergence_error("gamma_p: series did not converge");
}

// Regularized upper incomplete gamma by modified Lentz continued fraction, x >= a + 1.
inline double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16)
            return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
    }
    throw convergence_error("gamma_q: continued fraction did not converge");
}

}  // namespace detail

/// Regularized lower incomplete gamma P(a, x).
inline double gamma_p(double a, double x) {
    detail::require(a > 0.0 && x >= 0.0, "gamma_p: require a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? detail::gamma_p_series(a, x) : 1.0 - detail::gamma_q_cf(a, x);
}

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
inline double gamma_q(double a, double x) {
    detail::require(a > 0.0 && x >= 0.0, "gamma_q: require a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    return x < a + 1.0 ? 1.0 - detail::gamma_p_series(a, x) : detail::gamma_q_cf(a, x);
}

}  // namespace cfpp
