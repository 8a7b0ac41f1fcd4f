#include <doctest.h>

#include <cmath>
#include <numeric>

#include "scsim/deployment.hpp"
#include "oracles.hpp"

using namespace scsim;

TEST_CASE("pairwise distance") {
    CHECK(pairwise_distance({0, 0}, {0, 0}) == 0.0);
    CHECK(pairwise_distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
    CHECK(pairwise_distance({1, 1}, {4, 5}) == doctest::Approx(5.0));
    CHECK(pairwise_distance({3, 4}, {0, 0}) == pairwise_distance({0, 0}, {3, 4}));
}

TEST_CASE("ppp parameter validation") {
    const Region region({0, 0}, 100.0);
    CHECK_THROWS_AS(sample_ppp(0.0, region, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_ppp(-1.0, region, 1), std::invalid_argument);
    CHECK_THROWS_AS(Region({0, 0}, -5.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_realization(0.0, 1.0, region, 1), std::invalid_argument);
}

TEST_CASE("ppp count matches the analytic mean") {
    const Region region({0, 0}, 100.0);
    SUBCASE("lambda = 1/100") {
        double total = 0.0;
        for (int s = 0; s < 10000; ++s) total += sample_ppp(0.01, region, 1000 + s).size();
        CHECK(total / 10000.0 == doctest::Approx(314.1592653589793).epsilon(0.01));
    }
    SUBCASE("lambda = 1/200") {
        double total = 0.0;
        for (int s = 0; s < 10000; ++s) total += sample_ppp(0.005, region, 5000 + s).size();
        CHECK(total / 10000.0 == doctest::Approx(157.07963267948966).epsilon(0.01));
    }
}

TEST_CASE("ppp count passes a chi-square goodness-of-fit test") {
    const Region region({0, 0}, 30.0);
    const double lambda = 0.01; // mean 28.27
    const double mean = lambda * region.area();
    const int drops = 10000;
    std::vector<int> counts(200, 0);
    for (int s = 0; s < drops; ++s) {
        const std::size_t n = sample_ppp(lambda, region, 77000 + s).size();
        ++counts[std::min<std::size_t>(n, counts.size() - 1)];
    }
    // pool bins so each expected count is at least 5
    std::vector<double> observed, expected;
    double obs = 0.0, exp_acc = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        const double pk = k + 1 < counts.size()
                              ? poisson_pmf(static_cast<int>(k), mean)
                              : 1.0 - poisson_cdf(static_cast<double>(k) - 1.0, mean);
        obs += counts[k];
        exp_acc += drops * pk;
        if (exp_acc >= 5.0) {
            observed.push_back(obs);
            expected.push_back(exp_acc);
            obs = exp_acc = 0.0;
        }
    }
    if (exp_acc > 0.0 && !expected.empty()) {
        observed.back() += obs;
        expected.back() += exp_acc;
    }
    CHECK(oracles::chi_square_pvalue(observed, expected) > 0.01);
}

TEST_CASE("positions are uniform on the disc given the count") {
    const Region region({0, 0}, 50.0);
    std::mt19937_64 rng(42);
    const auto pts = sample_uniform_points(100000, region, rng);
    std::vector<double> r2(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = pairwise_distance(pts[i], region.center);
        r2[i] = d * d / (region.radius * region.radius);
        CHECK(region.contains(pts[i]));
    }
    // radius^2 / R^2 should be Uniform[0,1]; 1% critical value 1.628/sqrt(n)
    const double ks = oracles::ks_distance(r2, [](double x) { return x; });
    CHECK(ks < 1.628 / std::sqrt(static_cast<double>(r2.size())));
}

TEST_CASE("seed determinism is bit exact") {
    const Region region({0, 0}, 100.0);
    const auto a = sample_ppp(0.01, region, 99);
    const auto b = sample_ppp(0.01, region, 99);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].y == b[i].y);
    }
    const auto r1 = sample_realization(0.005, 0.015, region, 7);
    const auto r2 = sample_realization(0.005, 0.015, region, 7);
    REQUIRE(r1.users.size() == r2.users.size());
    for (std::size_t i = 0; i < r1.users.size(); ++i) CHECK(r1.users[i].x == r2.users[i].x);
}

TEST_CASE("empty drops are regenerated with the next seed") {
    const Region region({0, 0}, 100.0);
    // mean user count 0.31, so most seeds need at least one retry
    bool saw_retry = false;
    for (int s = 0; s < 20; ++s) {
        const auto real = sample_realization(0.01, 1e-5, region, 2000 + s);
        CHECK(real.aps.size() >= 1);
        CHECK(real.users.size() >= 1);
        if (real.regen_attempts > 0) saw_retry = true;
    }
    CHECK(saw_retry);
}

TEST_CASE("fixed-count mode places exactly the requested points") {
    const Region region({0, 0}, 100.0);
    const auto real = sample_realization_fixed(17, 53, region, 5);
    CHECK(real.aps.size() == 17);
    CHECK(real.users.size() == 53);
    for (const auto& p : real.aps) CHECK(region.contains(p));
    CHECK_THROWS_AS(sample_realization_fixed(0, 5, region, 1), std::invalid_argument);
}
