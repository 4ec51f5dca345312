#pragma once

// Test-only oracles, independent of the library's production paths.

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include <quadmath.h>

namespace oracle {

// Brute-force three-parameter Mittag-Leffler sum: straight term-by-term
// evaluation of Gamma(j+g) x^j / (j! Gamma(g) Gamma(j*a+b)) in binary128,
// no recurrences, no stopping heuristics.
inline double ml3_brute(double a, double b, double g, double x, int terms = 5000) {
    if (x == 0.0) return static_cast<double>(expq(-lgammaq((__float128)b)));
    __float128 sum = 0.0Q;
    const __float128 log_ax = logq(fabsq((__float128)x));
    for (int j = 0; j < terms; ++j) {
        const __float128 lg = lgammaq(j + (__float128)g) - lgammaq(j + 1.0Q) -
                              lgammaq((__float128)g) - lgammaq(j * (__float128)a + (__float128)b);
        const __float128 mag = expq(lg + j * log_ax);
        const bool negative = x < 0.0 && (j % 2 == 1);
        sum += negative ? -mag : mag;
    }
    return static_cast<double>(sum);
}

// Partition numbers by the classic two-dimensional recurrence.
inline long partition_count(int n) {
    static std::map<int, long> cache;
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    // p(n, k): partitions of n with parts <= k
    std::vector<std::vector<long>> p(n + 1, std::vector<long>(n + 1, 0));
    for (int k = 0; k <= n; ++k) p[0][k] = 1;
    for (int m = 1; m <= n; ++m)
        for (int k = 1; k <= n; ++k)
            p[m][k] = p[m][k - 1] + (m >= k ? p[m - k][k] : 0);
    return cache[n] = p[n][n];
}

// Partitions of n into exactly k parts.
inline long partition_count_k(int n, int k) {
    if (k <= 0 || k > n) return 0;
    // q(n, k) = q(n-1, k-1) + q(n-k, k)
    std::vector<std::vector<long>> q(n + 1, std::vector<long>(k + 1, 0));
    q[0][0] = 1;
    for (int m = 1; m <= n; ++m)
        for (int j = 1; j <= std::min(m, k); ++j)
            q[m][j] = q[m - 1][j - 1] + (m - j >= 0 ? q[m - j][j] : 0);
    return q[n][k];
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// integral_0^T t^{b-1} F(t) e^{-s t} dt with the weak t^{b-1} endpoint
// behaviour tamed by the substitution t = v^m on [0,1] (m b - 1 >= 4),
// and log-spaced panels on [1, T].
inline double laplace_weighted_integral(const std::function<double(double)>& f, double b,
                                        double s, double t_cap);

// Composite Gauss-Legendre quadrature; 16-point rule per panel.
inline double gauss_legendre(const std::function<double(double)>& f, double lo, double hi,
                             int panels) {
    static const double xs[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                                 0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                                 0.9445750230732326, 0.9894009349916499};
    static const double ws[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                                 0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                                 0.0622535239386479, 0.0271524594117541};
    double total = 0.0;
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * h;
        const double mid = a + 0.5 * h;
        const double half = 0.5 * h;
        double s = 0.0;
        for (int i = 0; i < 8; ++i)
            s += ws[i] * (f(mid - half * xs[i]) + f(mid + half * xs[i]));
        total += s * half;
    }
    return total;
}

inline double laplace_weighted_integral(const std::function<double(double)>& f, double b,
                                        double s, double t_cap) {
    const double t_max = std::min(t_cap, std::max(2.0, 60.0 / s));
    const int m = static_cast<int>(std::ceil(5.0 / b));
    // [0, 1]: t = v^m, integrand m v^{m b - 1} F(v^m)
    const double head = gauss_legendre(
        [&](double v) { return m * std::pow(v, m * b - 1.0) * f(std::pow(v, m)); }, 0.0, 1.0, 32);
    // [1, t_max]: log-spaced panels, plain t^{b-1} weight
    double tail = 0.0;
    const int segs = 24;
    for (int i = 0; i < segs; ++i) {
        const double lo = std::exp(std::log(t_max) * i / segs);
        const double hi = std::exp(std::log(t_max) * (i + 1) / segs);
        tail += gauss_legendre([&](double t) { return std::pow(t, b - 1.0) * f(t); }, lo, hi, 6);
    }
    return head + tail;
}

}  // namespace oracle
