#include <doctest.h>

#include "dampspec/error.hpp"
#include "dampspec/pencil.hpp"
#include "dampspec/quasimode.hpp"

#include <cmath>
#include <numbers>

using namespace dampspec;

namespace {

const Coefficient kZero = Coefficient::constant(0.0);

std::string error_code(const auto& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

} // namespace

TEST_CASE("amplitude examples") {
    const auto A = amplitude(-1.0, Coefficient::monomial_damping(1, 0.0), kZero);
    CHECK(A(2.0) == doctest::Approx(7.0));
    CHECK(A.derivative(2.0) == doctest::Approx(8.0));
    CHECK(A(0.7) < 0.0);
    CHECK(A(0.71) > 0.0);
    const auto shifted_a = amplitude(-1.0, Coefficient::monomial_damping(1, 3.0), kZero);
    CHECK(shifted_a(1.5) == doctest::Approx(2 * 1.5 * 1.5 + 5));
    const auto quartic = amplitude(-2.0, Coefficient::monomial_damping(2, 0.0), Coefficient::constant(1.0));
    CHECK(quartic(1.5) == doctest::Approx(4 * std::pow(1.5, 4) - 5));
    CHECK(quartic.derivative(1.5) == doctest::Approx(16 * std::pow(1.5, 3)));
    double previous = 1e300;
    for (double x : {2.0, 10.0, 100.0, 1000.0}) {
        const double r = std::abs(quartic.derivative(x)) / quartic(x);
        CHECK(r < previous);
        previous = r;
    }
    CHECK_THROWS_AS(amplitude(0.0, Coefficient::monomial_damping(1, 0), kZero), ParameterError);
}

TEST_CASE("probe: cutoff scale in closed form and by sampling") {
    const auto a = Coefficient::monomial_damping(1, 0.0);
    const auto probe = make_probe(-1.0, a, kZero, 10);
    CHECK(probe.rho_m == doctest::Approx(40.0 / 199.0).epsilon(1e-12));
    const auto sampled = Coefficient::custom([](double x) { return x * x; }, [](double x) { return 2 * x; });
    const auto probe2 = make_probe(-1.0, sampled, kZero, 10);
    CHECK(probe2.rho_m == doctest::Approx(probe.rho_m).epsilon(1e-9));
    CHECK(probe.support_left() == doctest::Approx(10.0 / std::sqrt(probe.rho_m)));
    CHECK(probe.support_right() == doctest::Approx(11.0 / std::sqrt(probe.rho_m)));
}

TEST_CASE("probe: window and hypothesis errors") {
    // A = -q - 2 lambda a - lambda^2 < 0 near the origin for a large constant potential.
    CHECK(error_code([] { make_probe(-1.0, Coefficient::monomial_damping(1, 0), Coefficient::constant(1e6), 1); }) ==
          "window_too_small");
    CHECK(error_code([] { make_probe(-1.0, Coefficient::constant(2.0), kZero, 5); }) == "hypothesis_violated");
}

TEST_CASE("cutoff bump: support, normalisation, derivatives") {
    CHECK(cutoff_bump(0.0).value == 0.0);
    CHECK(cutoff_bump(1.0).value == 0.0);
    CHECK(cutoff_bump(-0.5).value == 0.0);
    double norm = 0.0;
    const int n = 200000;
    for (int i = 1; i < n; ++i) norm += std::pow(cutoff_bump(static_cast<double>(i) / n).value, 2) / n;
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
    for (double t : {0.2, 0.5, 0.77}) {
        const double e = 1e-5;
        const auto b = cutoff_bump(t);
        CHECK(b.d1 == doctest::Approx((cutoff_bump(t + e).value - cutoff_bump(t - e).value) / (2 * e)).epsilon(1e-6));
        CHECK(b.d2 == doctest::Approx((cutoff_bump(t + e).d1 - cutoff_bump(t - e).d1) / (2 * e)).epsilon(1e-6));
    }
}

TEST_CASE("quasimode: support, normalisation, resolution") {
    const auto probe = make_probe(-1.0, Coefficient::monomial_damping(1, 0), kZero, 10);
    const auto qm = build_quasimode(probe);
    CHECK(gradient_norm(qm) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(qm.support_left == doctest::Approx(probe.support_left()));
    CHECK(qm.x_left >= qm.support_left - 1e-12);
    CHECK(qm.x_left + (qm.values.size() - 1) * qm.h <= qm.support_right * (1 + 1e-12));
    CHECK(std::abs(qm.values.front()) == 0.0);
    CHECK(std::abs(qm.values.back()) < 1e-300);
    const double k_max = std::sqrt(amplitude(-1.0, probe.a, probe.q)(qm.support_right));
    CHECK(2 * std::numbers::pi / (k_max * qm.h) >= 20.0 - 1e-9);
    CHECK(qm.values.size() >= 401);

    QuasimodeOptions tight;
    tight.max_points = 100;
    CHECK(error_code([&] { build_quasimode(probe, tight); }) == "under_resolved");
}

TEST_CASE("quasimode: discrete residual tracks the continuous one") {
    for (double lambda : {-0.1, -1.0, -5.0})
        for (int n : {1, 2}) {
            const auto probe = make_probe(lambda, Coefficient::monomial_damping(n, 0), kZero, 20);
            const auto qm = build_quasimode(probe);
            CHECK(qm.residual_ratio == doctest::Approx(analytic_residual_ratio(probe)).epsilon(0.05));
        }
}

TEST_CASE("quasimode: both phase rules agree as the grid is refined") {
    const auto probe = make_probe(-1.0, Coefficient::monomial_damping(1, 0), kZero, 10);
    QuasimodeOptions fine;
    fine.points_per_wavelength = 400;
    fine.phase = PhaseRule::wkb_integral;
    const double integral = build_quasimode(probe, fine).residual_ratio;
    fine.phase = PhaseRule::discrete_dispersion;
    const double dispersion = build_quasimode(probe, fine).residual_ratio;
    CHECK(integral == doctest::Approx(dispersion).epsilon(0.01));
}

TEST_CASE("quasimode: ratios decrease along the sequence") {
    for (double lambda : {-0.1, -1.0, -5.0})
        for (int n : {1, 2}) {
            double previous = 1e300;
            for (int m : {10, 20, 40, 80}) {
                const auto probe = make_probe(lambda, Coefficient::monomial_damping(n, 0), kZero, m);
                const double r = build_quasimode(probe).residual_ratio;
                CHECK(r < previous);
                previous = r;
            }
        }
}

TEST_CASE("quasimode: support drifts like m / sqrt(rho)") {
    for (int m : {10, 20, 40, 80}) {
        const auto probe = make_probe(-1.0, Coefficient::monomial_damping(1, 0), kZero, m);
        const auto qm = build_quasimode(probe);
        CHECK(qm.support_midpoint() == doctest::Approx((m + 0.5) / std::sqrt(probe.rho_m)));
    }
}

TEST_CASE("continuous ratio falls below 0.05 for large m") {
    const auto probe = make_probe(-0.1, Coefficient::monomial_damping(1, 0), kZero, 100000);
    CHECK(analytic_residual_ratio(probe) < 0.05);
}

TEST_CASE("plane wave on a periodic window has only O(h^2) residual") {
    const double k = 3.0;
    double previous = 0.0;
    for (int points : {64, 128, 256}) {
        Quasimode qm;
        qm.periodic = true;
        qm.x_left = 0.0;
        qm.h = 2 * std::numbers::pi / k / points;
        for (int i = 0; i < points; ++i) qm.values.push_back(std::polar(1.0, k * i * qm.h));
        // A = k^2 from a = (k^2 + 1) / 2, lambda = -1.
        const double r = residual_ratio(qm, -1.0, Coefficient::constant((k * k + 1) / 2), kZero);
        CHECK(r < std::pow(k * qm.h, 2));
        if (previous > 0.0) CHECK(previous / r == doctest::Approx(4.0).epsilon(0.02));
        previous = r;
    }
}

TEST_CASE("constant amplitude isolates the cutoff commutator") {
    EssentialProbe probe;
    probe.lambda = -1.0;
    probe.a = Coefficient::constant(50.0);
    probe.q = kZero;
    probe.m = 10;
    probe.rho_m = 0.04;
    const auto qm = build_quasimode(probe);
    // (-d^2 - A)(f e^{i sqrt(A) x}) = -(f'' + 2 i sqrt(A) f') e^{...}: only cutoff terms remain.
    CHECK(qm.residual_ratio == doctest::Approx(analytic_residual_ratio(probe)).epsilon(0.01));
    CHECK(qm.residual_ratio > 0.0);
}

TEST_CASE("residual dominance: the assembled pencil gives the same residual") {
    for (int n : {1, 2}) {
        const double lambda = -1.0;
        const auto probe = make_probe(lambda, Coefficient::monomial_damping(n, 0.5), Coefficient::constant(0.25), 10);
        const auto qm = build_quasimode(probe);
        const int N = static_cast<int>(qm.values.size());
        const auto p = assemble_window({n, 0.5, 0.25}, qm.x_left - qm.h, qm.x_left + N * qm.h, N);
        const auto tv = apply(p, lambda, qm.values);
        double s = 0.0;
        for (cplx v : tv) s += std::norm(v);
        const double pencil_ratio = std::sqrt(s * qm.h) / gradient_norm(qm);
        CHECK(pencil_ratio <= qm.residual_ratio * (1 + 1e-6) + qm.h * qm.h);
    }
}

TEST_CASE("cone sequence") {
    std::vector<double> ms, ratios;
    for (int m : {10, 20, 40, 80}) {
        const auto qm = cone_sequence(kZero, m, 1.0 / m);
        CHECK(gradient_norm(qm) == doctest::Approx(1.0).epsilon(1e-12));
        ms.push_back(std::log(m));
        ratios.push_back(std::log(qm.residual_ratio));
    }
    const double slope = (ratios.back() - ratios.front()) / (ms.back() - ms.front());
    CHECK(slope == doctest::Approx(-0.5).epsilon(0.3));

    const auto decaying = Coefficient::custom([](double x) { return 1.0 / (1 + x * x); },
                                              [](double x) { return -2 * x / ((1 + x * x) * (1 + x * x)); });
    CHECK(cone_sequence(decaying, 20).residual_ratio < cone_sequence(decaying, 5).residual_ratio);
    CHECK(error_code([] { cone_sequence(Coefficient::constant(1.0), 10); }) == "hypothesis_violated");
    CHECK_THROWS_AS(cone_sequence(kZero, 10), ParameterError);
}
