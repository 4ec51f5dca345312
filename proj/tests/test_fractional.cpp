#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cfpp/fractional.hpp"
#include "cfpp/pmf.hpp"
#include "support.hpp"

using namespace cfpp;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const FracProcess fbtp{BellTouchardParams{1.0, 1.0}, 0.7};
const FracProcess fplp{PoissonLogParams{1.0, 0.5}, 0.5};
const FracProcess fgpap{PolyaAeppliParams{1.0, 0.4, 2.0}, 0.6};

std::vector<PmfMethod> frac_methods(const FracProcess& proc) {
    std::vector<PmfMethod> ms{PmfMethod::convolution, PmfMethod::partition,
                              PmfMethod::composition, PmfMethod::theta, PmfMethod::lambda};
    if (std::holds_alternative<PolyaAeppliParams>(proc.params))
        ms.push_back(PmfMethod::closed_form);
    return ms;
}
}  // namespace

TEST_CASE("fractional process construction") {
    CHECK_NOTHROW(make_fractional(BellTouchardParams{1.0, 1.0}, 1.0));
    CHECK_THROWS_AS(make_fractional(BellTouchardParams{1.0, 1.0}, 0.0), domain_error);
    CHECK_THROWS_AS(make_fractional(BellTouchardParams{1.0, 1.0}, 1.2), domain_error);
    CHECK_THROWS_AS(make_fractional(CountingRatesParams{{1.0}}, 0.5), domain_error);
}

TEST_CASE("tfpp pmf") {
    // n = 0 is the one-parameter Mittag-Leffler factor
    CHECK_THAT(tfpp_pmf(std::exp(1.0) - 1.0, 0.7, 0, 1.0),
               WithinAbs(0.2491986737114902, 1e-12));
    CHECK_THAT(tfpp_pmf(std::exp(1.0) - 1.0, 0.7, 0, 1.0),
               WithinAbs(ml3({0.7, 1.0, 1.0, -(std::exp(1.0) - 1.0)}, 1e-13), 1e-13));
    // integer order reduces to Poisson
    CHECK_THAT(tfpp_pmf(2.0, 1.0, 3, 1.0), WithinAbs(std::exp(-2.0) * 8.0 / 6.0, 1e-12));
    // normalization by summation
    double sum = 0.0;
    for (int n = 0; n <= 60; ++n) sum += tfpp_pmf(1.0, 0.5, n, 1.0);
    CHECK_THAT(sum, WithinAbs(1.0, 1e-8));
    CHECK(tfpp_pmf(1.0, 0.5, 0, 0.0) == 1.0);
    CHECK(tfpp_pmf(1.0, 0.5, 2, 0.0) == 0.0);
}

TEST_CASE("fractional pmf at n = 0 and t = 0") {
    const auto table = frac_pmf(fbtp, 1.0, 4);
    CHECK_THAT(table.probs[0], WithinAbs(0.2491986737114902, 1e-12));
    const auto zero = frac_pmf(fbtp, 0.0, 4);
    CHECK(zero.probs[0] == 1.0);
    CHECK(zero.tail_bound == 0.0);
}

TEST_CASE("all fractional pmf forms agree pairwise") {
    for (const FracProcess& proc : {fbtp, fplp, fgpap}) {
        for (double beta : {0.3, 0.6, 0.9}) {
            FracProcess p{proc.params, beta};
            for (double t : {0.5, 2.0}) {
                const auto base = frac_pmf(p, t, 8, PmfMethod::convolution);
                for (PmfMethod m : frac_methods(p)) {
                    const auto other = frac_pmf(p, t, 8, m);
                    for (int n = 0; n <= 8; ++n) {
                        INFO(process_name(p.params) << " beta=" << beta << " t=" << t
                                                    << " method=" << to_string(m) << " n=" << n);
                        CHECK_THAT(other.probs[n], WithinAbs(base.probs[n], 1e-9));
                    }
                }
            }
        }
    }
}

TEST_CASE("fgpap closed form matches the convolution route at n = 1") {
    // closed form at n=1: rho * r * lambda t^b / ((1-rho)^{-r} - 1) * E^2_{b,b+1}(-lambda t^b)
    const double t = 1.0;
    const auto closed = frac_pmf(fgpap, t, 1, PmfMethod::closed_form);
    const auto conv = frac_pmf(fgpap, t, 1, PmfMethod::convolution);
    CHECK_THAT(closed.probs[1], WithinAbs(conv.probs[1], 1e-12));
    const double direct = 0.4 * 2.0 * std::pow(t, 0.6) /
                          (std::pow(0.6, -2.0) - 1.0) *
                          ml3({0.6, 1.6, 2.0, -std::pow(t, 0.6)}, 1e-13);
    CHECK_THAT(closed.probs[1], WithinAbs(direct, 1e-12));
}

TEST_CASE("integer order reduces to the classical tables") {
    for (const FracProcess& proc : {fbtp, fplp, fgpap}) {
        const FracProcess p1{proc.params, 1.0};
        for (double t : {0.5, 1.0, 2.0}) {
            const auto classical = classical_pmf(p1.params, t, 20, PmfMethod::recurrence);
            const auto frac = frac_pmf(p1, t, 20, PmfMethod::convolution);
            for (int n = 0; n <= 20; ++n) {
                INFO(process_name(p1.params) << " t=" << t << " n=" << n);
                CHECK_THAT(frac.probs[n], WithinAbs(classical.probs[n], 1e-9));
            }
        }
    }
}

TEST_CASE("fractional pmf normalization with certified tail") {
    for (const FracProcess& proc : {fbtp, fplp, fgpap})
        for (double beta : {0.3, 0.6, 1.0})
            for (double t : {0.5, 2.0})
                for (int n_max : {0, 5, 30}) {
                    FracProcess p{proc.params, beta};
                    const auto table = frac_pmf(p, t, n_max);
                    double sum = 0.0;
                    for (double q : table.probs) {
                        CHECK(q >= 0.0);
                        CHECK(q <= 1.0);
                        sum += q;
                    }
                    INFO(process_name(p.params) << " beta=" << beta << " t=" << t
                                                << " n_max=" << n_max);
                    CHECK(table.tail_bound >= -1e-15);
                    CHECK_THAT(sum + table.tail_bound, WithinAbs(1.0, 1e-9));
                }
}

TEST_CASE("fractional pmf validation") {
    CHECK_THROWS_AS(frac_pmf(fbtp, 1.0, 30, PmfMethod::partition), domain_error);
    CHECK_THROWS_AS(frac_pmf(fbtp, 1.0, 5, PmfMethod::recurrence), domain_error);
    CHECK_THROWS_AS(frac_pmf(fbtp, 1.0, 5, PmfMethod::closed_form), domain_error);
    CHECK_THROWS_AS(frac_pmf(fbtp, -0.5, 5), domain_error);
    CHECK_THROWS_AS(frac_pmf(fbtp, 1e9, 5), convergence_error);  // series regime
}

TEST_CASE("fractional pgf") {
    for (const FracProcess& proc : {fbtp, fplp, fgpap}) {
        CHECK(frac_pgf(proc, 1.0, 1.3) == 1.0);
        CHECK_THAT(frac_pgf(proc, 0.0, 1.0),
                   WithinAbs(frac_pmf(proc, 1.0, 0).probs[0], 1e-12));
    }
    CHECK_THAT(frac_pgf(fplp, 0.5, 1.0), WithinAbs(0.5745950401731600, 1e-12));

    // pgf equals the probability series
    for (const FracProcess& proc : {fbtp, fplp, fgpap}) {
        const auto table = frac_pmf(proc, 1.0, 70);
        for (double u : {-0.5, 0.5}) {
            double series = 0.0;
            for (int n = 0; n < static_cast<int>(table.probs.size()); ++n)
                series += table.probs[n] * std::pow(u, n);
            INFO(process_name(proc.params) << " u=" << u);
            CHECK_THAT(frac_pgf(proc, u, 1.0), WithinAbs(series, 1e-7));
        }
    }
    CHECK_THROWS_AS(frac_pgf(fbtp, 1.0001, 1.0), domain_error);
}

TEST_CASE("fractional moments") {
    const FracProcess half{BellTouchardParams{1.0, 1.0}, 0.5};
    CHECK_THAT(frac_moments(half, 1.0).mean, WithinAbs(3.067252585527484, 1e-12));

    const FracProcess pa{PolyaAeppliParams{1.0, 0.4, 1.0}, 0.5};
    CHECK_THAT(frac_moments(pa, 1.0).mean, WithinAbs(1.8806319451591875, 1e-12));

    // integer order: the variance collapses to the classical one
    for (const FracProcess& proc : {fbtp, fplp, fgpap}) {
        const FracProcess p1{proc.params, 1.0};
        for (double t : {0.5, 2.0}) {
            const auto a = frac_moments(p1, t);
            const auto b = classical_moments(p1.params, t);
            CHECK_THAT(a.mean, WithinRel(b.mean, 1e-12));
            CHECK_THAT(a.variance, WithinRel(b.variance, 1e-9));
        }
    }

    for (const FracProcess& proc : {fbtp, fplp, fgpap})
        for (double beta : {0.3, 0.6, 0.9})
            for (double t : {0.5, 1.0, 4.0}) {
                const auto m = frac_moments(FracProcess{proc.params, beta}, t);
                INFO(process_name(proc.params) << " beta=" << beta << " t=" << t);
                CHECK(m.variance > m.mean);  // overdispersion
            }
}

TEST_CASE("fractional covariance requires the asymptotic regime") {
    CHECK_THROWS_AS(frac_cov(fbtp, 1.0, 50.0), domain_error);
    const double c = frac_cov(fbtp, 1.0, 500.0);
    CHECK(c > 0.0);
    // classical t >> s covariance is var_rate * s
    const FracProcess p1{fbtp.params, 1.0};
    CHECK_THAT(frac_cov(p1, 1.0, 500.0),
               WithinRel(moment_coeffs(p1.params).var_rate * 1.0, 1e-12));
}

TEST_CASE("correlation decay follows the t^{-beta} law") {
    const std::vector<std::pair<ProcessParams, const char*>> procs{
        {BellTouchardParams{1.0, 1.0}, "btp"},
        {PoissonLogParams{2.0, 0.5}, "plp"},
        {PolyaAeppliParams{2.0, 0.4, 2.0}, "gpap"}};
    std::vector<double> grid;
    for (int i = 0; i <= 6; ++i) grid.push_back(std::pow(10.0, 2.0 + 0.5 * i));

    for (const auto& [params, name] : procs)
        for (double beta : {0.3, 0.5, 0.7}) {
            const auto rep = correlation_decay(FracProcess{params, beta}, 1.0, grid);
            INFO(name << " beta=" << beta << " slope=" << rep.fitted_exponent);
            CHECK(rep.slope_within_tol);
            CHECK_THAT(rep.fitted_exponent, WithinAbs(-beta, 0.02));
            CHECK(rep.c0 > 0.0);
            for (std::size_t i = 0; i < rep.corr.size(); ++i) {
                CHECK(rep.corr[i] > 0.0);
                CHECK(rep.corr[i] <= 1.0);
                if (i > 0) CHECK(rep.corr[i] < rep.corr[i - 1]);
            }
        }

    // classical analogue: corr(s,t) = sqrt(s/t) from the linear moments
    const auto m = moment_coeffs(fbtp.params);
    const double s = 1.0, t = 4.0;
    const double corr = m.var_rate * s / std::sqrt(m.var_rate * s * m.var_rate * t);
    CHECK_THAT(corr, WithinRel(0.5, 1e-13));

    CHECK_THROWS_AS(correlation_decay(FracProcess{fbtp.params, 1.0}, 1.0, grid), domain_error);
    CHECK_THROWS_AS(correlation_decay(fbtp, 1.0, std::vector<double>{5.0, 500.0}), domain_error);
}

TEST_CASE("factorial moments of the fractional Bell-Touchard process") {
    // r = 1 collapses to the mean
    for (double beta : {0.5, 0.8, 1.0})
        for (double t : {0.5, 2.0}) {
            const FracProcess p{BellTouchardParams{1.2, 0.7}, beta};
            CHECK_THAT(factorial_moment_fbtp(1.2, 0.7, beta, 1, t),
                       WithinRel(frac_moments(p, t).mean, 1e-11));
        }

    // beta = 1, r = 2: E[M(M-1)] from the pmf table
    const auto table = classical_pmf(ProcessParams{BellTouchardParams{1.0, 1.0}}, 1.0, 80);
    double from_pmf = 0.0;
    for (int n = 2; n <= 80; ++n) from_pmf += static_cast<double>(n) * (n - 1) * table.probs[n];
    CHECK_THAT(factorial_moment_fbtp(1.0, 1.0, 1.0, 2, 1.0), WithinAbs(from_pmf, 1e-6));

    CHECK(factorial_moment_fbtp(1.0, 1.0, 0.6, 3, 0.0) == 0.0);
    CHECK_THROWS_AS(factorial_moment_fbtp(1.0, 1.0, 0.6, 0, 1.0), domain_error);
}

TEST_CASE("waiting time survival") {
    for (const FracProcess& proc : {fbtp, fplp, fgpap}) {
        CHECK(waiting_time_survival(proc, 0.0) == 1.0);
        CHECK_THAT(waiting_time_survival(proc, 1.0),
                   WithinAbs(frac_pmf(proc, 1.0, 0).probs[0], 1e-12));
        double prev = 1.0;
        for (double t = 0.2; t <= 3.0; t += 0.2) {
            const double v = waiting_time_survival(proc, t);
            CHECK(v <= prev + 1e-15);
            prev = v;
        }
    }
    CHECK_THAT(waiting_time_survival(fbtp, 1.0), WithinAbs(0.2491986737114902, 1e-12));
    // integer order: exponential waiting time
    const FracProcess p1{fbtp.params, 1.0};
    CHECK_THAT(waiting_time_survival(p1, 1.3),
               WithinRel(std::exp(-total_rate(p1.params) * 1.3), 1e-11));
}
