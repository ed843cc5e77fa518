#include <doctest.h>

#include "dampspec/convergence.hpp"
#include "dampspec/error.hpp"
#include "dampspec/oscillator.hpp"

#include <cmath>
#include <numbers>

using namespace dampspec;
using std::numbers::pi;

TEST_CASE("verify_exactness on bare error lists") {
    CHECK(verify_exactness(std::vector<double>{0.8, 0.5, 0.3, 0.2, 0.12}, 3).passed);
    CHECK_FALSE(verify_exactness(std::vector<double>{0.5, 0.5, 0.5}, 2).passed);
    CHECK_FALSE(verify_exactness(std::vector<double>{0.8, 0.3, 0.5}, 2).passed);
    const auto v = verify_exactness(std::vector<double>{0.8, 0.4, 0.2}, 2);
    REQUIRE(v.rates.size() == 2);
    CHECK(v.rates[0] == doctest::Approx(std::log(2.0)));
    CHECK_FALSE(v.report.empty());
}

TEST_CASE("k=1, a0=0: errors decrease toward i pi/2 and the gap follows the ray") {
    const auto table = lambda_branch({1, 2, 3, 4, 6, 8}, 1, 0.0, 0.0);
    CHECK(std::abs(table.limit.values[0] - cplx(0, pi / 2)) < 1e-14);
    REQUIRE(table.rows.size() == 6);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        CHECK_FALSE(r.branch_lost);
        if (i) CHECK(r.error < table.rows[i - 1].error);
        CHECK(std::abs(std::arg(r.lambda) - pi / 2 - pi / (2.0 * (2 * r.n + 1))) < 1e-6);
    }
    CHECK(verify_exactness(table, 3).passed);
}

TEST_CASE("k=1, a0=3: real-pair limit") {
    const auto table = lambda_branch({1, 2, 3, 4, 6, 8}, 1, 3.0, 0.0);
    REQUIRE(table.limit.is_real_pair());
    const double s = std::sqrt(9 - pi * pi / 4);
    CHECK(table.limit.values[0].real() == doctest::Approx(-3 - s));
    int usable = 0;
    for (const auto& r : table.rows) {
        if (r.branch_lost) continue;
        ++usable;
        CHECK(r.target.imag() == 0.0);
        CHECK(r.lambda.real() <= -3.0);
    }
    CHECK(usable >= 4);
    CHECK(verify_exactness(table, 3).passed);
}

TEST_CASE("convergence is not uniform in k") {
    const auto t1 = lambda_branch({1, 2, 3}, 1, 0.0, 0.0);
    const auto t4 = lambda_branch({1, 2, 3}, 4, 0.0, 0.0);
    const cplx limit4 = limit_lambda(4, 0.0, 0.0).values[0];
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& r4 = t4.rows[i];
        if (!r4.branch_lost) {
            CHECK(r4.error > t1.rows[i].error);
            continue;
        }
        // Lost: every physical root of modes 0..4 is farther from the limit than the k=1 error.
        const auto mu = anharmonic_eigenvalues(r4.n, 4, 1e-8).values;
        for (int j = 0; j <= 4; ++j)
            for (const auto& b : line_branches({r4.n, 0.0, 0.0}, mu[j], j))
                CHECK(std::abs(b.lambda - limit4) > t1.rows[i].error);
    }
}

TEST_CASE("lambda_branch preconditions") {
    CHECK_THROWS_AS(lambda_branch({1, 2}, 0, 0.0, 0.0), ParameterError);
    CHECK_THROWS_AS(lambda_branch({}, 1, 0.0, 0.0), ParameterError);
    CHECK_THROWS_AS(lambda_branch({3, 2}, 1, 0.0, 0.0), ParameterError);
}
