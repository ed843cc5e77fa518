#include <doctest.h>

#include "dampspec/dispersion.hpp"
#include "dampspec/error.hpp"
#include "dampspec/oscillator.hpp"

#include <cmath>
#include <numbers>

using namespace dampspec;
using std::numbers::pi;

namespace {

void check_same(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    REQUIRE(a.degree() == b.degree());
    for (int i = 0; i <= a.degree(); ++i)
        CHECK(std::abs(a.coefficients()[i] - b.coefficients()[i]) < 1e-12 * std::max(1.0, std::abs(b.coefficients()[i])));
}

ComplexPolynomial lam() { return ComplexPolynomial({0.0, 1.0}); }
ComplexPolynomial constant(double c) { return ComplexPolynomial({c}); }

cplx closed_form(int k) { return std::cbrt(2.0) * std::polar(std::pow(2.0 * k + 1.0, 2.0 / 3.0), 2 * pi / 3); }

} // namespace

TEST_CASE("line characteristic polynomials") {
    check_same(line_char_poly({1, 0, 0}, 1.0), ComplexPolynomial({0.0, -2.0, 0.0, 0.0, 1.0}));
    const auto base = lam() * lam() + constant(6.0) * lam();
    check_same(line_char_poly({1, 3, 0}, 1.0), base * base - constant(2.0) * lam());
    const auto q = lam() * lam() + constant(1.0);
    check_same(line_char_poly({2, 0, 1}, 2.0), q * q * q + constant(16.0) * lam());
    CHECK(line_char_poly({3, 1, 1}, 5.0).degree() == 8);
    CHECK_THROWS_AS(line_char_poly({1, 0, 0}, 0.0), ParameterError);
    CHECK_THROWS_AS(line_char_poly({0, 0, 0}, 1.0), ParameterError);
    CHECK_THROWS_AS(line_char_poly({1, -1, 0}, 1.0), ParameterError);
}

TEST_CASE("strip characteristic polynomials") {
    const auto q1 = lam() * lam() + constant(1.0);
    check_same(strip_char_poly({pi / 2, 0, 0}, 1, 0), q1 * q1 - constant(2.0) * lam());
    const auto q2 = lam() * lam() + constant(pi * pi) + constant(2.0) * lam();
    check_same(strip_char_poly({1, 1, 0}, 2, 0), q2 * q2 - constant(2.0) * lam());
    const auto q3 = lam() * lam() + constant(pi * pi / 4);
    check_same(strip_char_poly({1, 0, 0}, 1, 1), q3 * q3 - constant(18.0) * lam());
    CHECK_THROWS_AS(strip_char_poly({0.0, 0, 0}, 1, 0), ParameterError);
}

TEST_CASE("physical roots: filter semantics") {
    const auto rs = roots_all(line_char_poly({1, 0, 0}, 1.0));
    const auto b = physical_roots(rs, PencilParams{1, 0, 0});
    REQUIRE(b.size() == 1);
    CHECK(std::abs(b[0].lambda - cplx(-0.6299605249474366, 1.0911236359717214)) < 1e-12);

    RootSet manual;
    manual.roots = {cplx{0, 1}, cplx{0, -1}, cplx{1, 1}};
    manual.residuals = {0, 0, 0};
    manual.cluster = {false, false, false};
    const auto f = physical_roots(manual, PencilParams{1, 0, 0});
    REQUIRE(f.size() == 1);
    CHECK(f[0].lambda == cplx{0, 1});

    const auto strip = physical_roots(roots_all(strip_char_poly({1, 1, 0}, 5, 0)), StripParams{1, 1, 0});
    REQUIRE(!strip.empty());
    for (const auto& s : strip) CHECK(s.lambda.real() <= -1.0);
    CHECK(physical_roots(roots_all(ComplexPolynomial({1.0, 1.0})), PencilParams{1, 0, 0}).empty());
}

TEST_CASE("asymptotic seeds") {
    CHECK(std::abs(asymptotic_lambda(1, 0, 1) - closed_form(0)) < 1e-14);
    CHECK(std::abs(asymptotic_lambda(1, 3, 1) - (closed_form(0) - 4.0)) < 1e-14);
    CHECK(std::abs(asymptotic_lambda(1, 0, 9) - closed_form(4)) < 1e-13);
}

TEST_CASE("seed quality improves with mu") {
    for (int n : {2, 3}) {
        double previous = 1e300;
        for (double mu : {1.0, 10.0, 100.0, 1000.0}) {
            const auto b = line_branches({n, 1.0, 0.5}, mu, 0);
            REQUIRE(!b.empty());
            const cplx seed = asymptotic_lambda(n, 1.0, mu);
            double best = 1e300;
            for (const auto& x : b) best = std::min(best, std::abs(seed - x.lambda) / std::abs(x.lambda));
            CHECK(best < previous);
            previous = best;
        }
    }
}

TEST_CASE("limit eigenvalues") {
    const auto l1 = limit_lambda(1, 0, 0);
    CHECK_FALSE(l1.is_real_pair());
    CHECK(std::abs(l1.values[0] - cplx(0, pi / 2)) < 1e-14);
    CHECK(std::abs(limit_lambda(2, 0, 0).values[0] - cplx(0, pi)) < 1e-14);
    const auto real = limit_lambda(1, 3, 0);
    REQUIRE(real.is_real_pair());
    const double s = std::sqrt(9 - pi * pi / 4);
    CHECK(real.values[0].real() == doctest::Approx(-3 - s));
    CHECK(real.values[1].real() == doctest::Approx(-3 + s));
    for (cplx v : real.values) CHECK(std::abs(v * v + 6.0 * v + pi * pi / 4) < 1e-12);
    // mu_1 + q0 = a0^2 gives the double value -a0.
    const auto degenerate = limit_lambda(1, pi / 2, 0);
    CHECK(degenerate.is_real_pair());
    CHECK(degenerate.values[0] == degenerate.values[1]);
    CHECK(degenerate.values[0].real() == doctest::Approx(-pi / 2));
    CHECK(std::abs(limit_lambda(1, 0, 0, 2.0).values[0] - cplx(0, pi / 4)) < 1e-14);
}

TEST_CASE("limit real pairs are enumerated by a0") {
    // Number of k >= 1 with (k pi / 2)^2 <= a0^2, i.e. k <= 2 a0 / pi.
    for (double a0 : {0.5, 1.0, 3.0, 7.0}) {
        int pairs = 0;
        for (int k = 1; k < 50; ++k) pairs += limit_lambda(k, a0, 0).is_real_pair();
        CHECK(pairs == static_cast<int>(std::floor(2 * a0 / pi)));
    }
}

TEST_CASE("ray property and closed form for n=1, a0=q0=0") {
    for (int k = 0; k <= 10; ++k) {
        const auto b = line_branches({1, 0, 0}, 2.0 * k + 1, k);
        REQUIRE(b.size() == 1);
        CHECK(std::abs(std::arg(b[0].lambda) - 2 * pi / 3) < 1e-10);
        CHECK(std::abs(b[0].lambda - closed_form(k)) < 1e-8);
    }
}

TEST_CASE("branch invariants: enclosure and back-substitution") {
    for (int n : {1, 2, 3})
        for (double a0 : {0.0, 3.0})
            for (double q0 : {0.0, 1.0}) {
                const auto s = anharmonic_eigenvalues(n, 6, 1e-8);
                for (int k = 0; k <= 6; ++k) {
                    const PencilParams params{n, a0, q0};
                    for (const auto& b : line_branches(params, s.values[k], k)) {
                        CHECK(b.lambda.imag() > 0.0);
                        CHECK(b.lambda.real() <= -a0);
                        CHECK(std::norm(b.lambda) >= q0);
                        double scale = 0.0;
                        const double r = line_back_substitution(params, b.mu, b.lambda, &scale);
                        CHECK(r < 1e-8 * scale);
                    }
                }
            }
}

TEST_CASE("strip trend: Re lambda_{j0} increases toward -a0") {
    double previous = -1e300;
    for (int j = 1; j <= 20; ++j) {
        const auto b = strip_branches({1, 1, 0}, j, 0);
        REQUIRE(b.size() == 1);
        CHECK(b[0].lambda.real() > previous);
        CHECK(b[0].lambda.real() <= -1.0);
        CHECK(b[0].j == j);
        previous = b[0].lambda.real();
    }
    CHECK(previous > -1.1);
}
