#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cfpp/montecarlo.hpp"

using namespace cfpp;
using Catch::Matchers::WithinAbs;

namespace {
SimConfig cfg(std::uint64_t seed, long n = 100000) {
    SimConfig c;
    c.seed = seed;
    c.n_samples = n;
    return c;
}
}  // namespace

TEST_CASE("histograms are deterministic in seed and thread count") {
    const ClassicalSampler sampler{ProcessParams{BellTouchardParams{1.0, 1.0}}};
    const auto draw = [&](Rng& rng) { return sampler.sample(1.0, rng); };

    auto c1 = cfg(42, 20000);
    c1.n_threads = 1;
    auto c2 = cfg(42, 20000);
    c2.n_threads = 2;
    const auto h1 = mc_histogram(draw, 15, c1);
    const auto h2 = mc_histogram(draw, 15, c2);
    CHECK(h1 == h2);

    const auto h3 = mc_histogram(draw, 15, cfg(43, 20000));
    CHECK(h1 != h3);
}

TEST_CASE("classical sampler matches the analytic mean") {
    const ClassicalSampler sampler{ProcessParams{BellTouchardParams{1.0, 1.0}}};
    Rng rng(7u);
    CHECK(sampler.sample(0.0, rng) == 0);

    RunningMoments m;
    for (int i = 0; i < 100000; ++i) m.add(static_cast<double>(sampler.sample(1.0, rng)));
    CHECK_THAT(m.mean(), WithinAbs(std::exp(1.0), 3.0 * m.se_mean()));
    const auto an = classical_moments(sampler.params(), 1.0);
    CHECK_THAT(m.variance(), WithinAbs(an.variance, 3.0 * m.se_variance()));
}

TEST_CASE("compound and superposition samplers agree in law") {
    const ClassicalSampler sampler{ProcessParams{PoissonLogParams{1.0, 0.5}}};
    const long n = 100000;
    const auto ha = mc_histogram([&](Rng& r) { return sampler.sample(1.0, r); }, 15, cfg(11, n));
    const auto hb = mc_histogram([&](Rng& r) { return sampler.sample_superposed(1.0, r); }, 15,
                                 cfg(12, n));
    const auto res = chi_square_two_sample(ha, hb);
    INFO("chi2=" << res.statistic << " dof=" << res.dof);
    CHECK(res.p_value >= 0.001);
}

TEST_CASE("fractional sampler matches the analytic law") {
    const FracProcess proc{BellTouchardParams{1.0, 1.0}, 0.7};
    const FractionalSampler sampler{proc};
    Rng rng(3u);
    CHECK(sampler.sample(0.0, rng) == 0);

    const int n_max = 25;
    const auto table = frac_pmf(proc, 1.0, n_max);
    const auto hist =
        mc_histogram([&](Rng& r) { return sampler.sample(1.0, r); }, n_max, cfg(2024));
    const auto rep = compare_pmf(hist, table, 100000);
    INFO("max |z| = " << rep.max_abs_z << ", chi2 p = " << rep.p_value);
    CHECK(rep.pass);
}

TEST_CASE("fractional sampler mean and variance match the moment formulas") {
    const std::vector<ProcessParams> procs{BellTouchardParams{1.0, 1.0},
                                           PoissonLogParams{1.0, 0.5},
                                           PolyaAeppliParams{1.0, 0.4, 2.0}};
    std::uint64_t seed = 90;
    for (const auto& params : procs)
        for (double beta : {0.5, 0.8}) {
            const FractionalSampler sampler{FracProcess{params, beta}};
            Rng rng(++seed);
            RunningMoments m;
            for (int i = 0; i < 100000; ++i)
                m.add(static_cast<double>(sampler.sample(1.0, rng)));
            const auto an = frac_moments(FracProcess{params, beta}, 1.0);
            INFO(process_name(params) << " beta=" << beta);
            CHECK_THAT(m.mean(), WithinAbs(an.mean, 3.0 * m.se_mean()));
            CHECK_THAT(m.variance(), WithinAbs(an.variance, 3.0 * m.se_variance()));
        }
}

TEST_CASE("fractional paths are monotone and marginally consistent") {
    const FracProcess proc{PoissonLogParams{1.0, 0.5}, 0.6};
    const FractionalSampler sampler{proc};
    const std::vector<double> grid{0.5, 1.0, 2.0};

    Rng rng(17u);
    for (int rep = 0; rep < 300; ++rep) {
        const auto path = sampler.sample_path(grid, rng);
        REQUIRE(path.counts.size() == grid.size());
        for (std::size_t i = 1; i < path.counts.size(); ++i)
            CHECK(path.counts[i] >= path.counts[i - 1]);
    }

    const int n_max = 20;
    const long n = 30000;
    const auto from_path = mc_histogram(
        [&](Rng& r) { return sampler.sample_path(grid, r).counts.back(); }, n_max, cfg(5, n));
    const auto direct =
        mc_histogram([&](Rng& r) { return sampler.sample(grid.back(), r); }, n_max, cfg(6, n));
    const auto res = chi_square_two_sample(from_path, direct);
    INFO("chi2=" << res.statistic << " dof=" << res.dof << " p=" << res.p_value);
    CHECK(res.p_value >= 0.001);
}

TEST_CASE("compare_pmf accepts its own expectation") {
    const auto table = frac_pmf(FracProcess{BellTouchardParams{1.0, 1.0}, 0.7}, 1.0, 20);
    const long n = 100000;
    std::vector<long> counts(table.probs.size() + 1, 0);
    long used = 0;
    for (std::size_t i = 0; i < table.probs.size(); ++i) {
        counts[i] = std::lround(table.probs[i] * n);
        used += counts[i];
    }
    counts.back() = n - used;  // remainder to the overflow bin
    const auto rep = compare_pmf(counts, table, n);
    CHECK(rep.pass);
    CHECK(rep.max_abs_z < 1.0);
}

TEST_CASE("compare_pmf rejects a mismatched order") {
    const FracProcess truth{BellTouchardParams{1.0, 1.0}, 0.6};
    const FracProcess wrong{BellTouchardParams{1.0, 1.0}, 0.9};
    const FractionalSampler sampler{truth};
    const int n_max = 25;
    const auto hist =
        mc_histogram([&](Rng& r) { return sampler.sample(1.0, r); }, n_max, cfg(77));
    const auto rep = compare_pmf(hist, frac_pmf(wrong, 1.0, n_max), 100000);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("compare_pmf pooling and degenerate input") {
    const auto table = frac_pmf(FracProcess{BellTouchardParams{1.0, 1.0}, 0.7}, 1.0, 30);
    const long n = 100000;
    std::vector<long> counts(32, 0);
    counts[0] = n;
    const auto rep = compare_pmf(counts, table, n);
    // bins with analytic mass below 10/n are pooled: their z entries are NaN
    for (int i = 0; i <= 30; ++i)
        if (table.probs[i] < 10.0 / n) CHECK(std::isnan(rep.z[i]));
    CHECK_FALSE(rep.pass);  // all mass at zero is wildly off

    PmfTable degenerate;
    degenerate.t = 0.0;
    degenerate.n_max = 0;
    degenerate.probs = {1.0};
    degenerate.tail_bound = 0.0;
    std::vector<long> c2{100, 0};
    CHECK_THROWS_AS(compare_pmf(c2, degenerate, 100), domain_error);

    std::vector<long> bad(32, 1);
    CHECK_THROWS_AS(compare_pmf(bad, table, n), domain_error);  // wrong total
}

TEST_CASE("sim config validation") {
    SimConfig c;
    c.n_samples = 0;
    CHECK_THROWS_AS(validate(c), domain_error);
    c = SimConfig{};
    c.jump_truncation_tail = 1e-3;
    CHECK_THROWS_AS(validate(c), domain_error);
    c = SimConfig{};
    CHECK_NOTHROW(validate(c));
}
