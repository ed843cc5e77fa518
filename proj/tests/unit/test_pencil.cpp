#include <doctest.h>

#include "dampspec/banded_lu.hpp"
#include "dampspec/dispersion.hpp"
#include "dampspec/error.hpp"
#include "dampspec/oscillator.hpp"
#include "dampspec/pencil.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

using namespace dampspec;

namespace {

const cplx kLambda0 = std::cbrt(2.0) * std::polar(1.0, 2 * std::numbers::pi / 3);
const cplx kLambda1 = std::cbrt(2.0) * std::polar(std::pow(3.0, 2.0 / 3.0), 2 * std::numbers::pi / 3);

double residual_tol(const GridPencil& p, cplx lambda) { return 1e-10 * norm_inf(p, lambda); }

} // namespace

TEST_CASE("tridiagonal LU against a dense solve") {
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int n : {1, 2, 3, 10, 57}) {
        std::vector<cplx> lo(n - 1), di(n), up(n - 1), rhs(n);
        Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            // Small diagonal forces row swaps.
            di[i] = cplx(0.01 * d(gen), 0.01 * d(gen));
            dense(i, i) = di[i];
            rhs[i] = cplx(d(gen), d(gen));
            if (i + 1 < n) {
                lo[i] = cplx(d(gen), d(gen));
                up[i] = cplx(d(gen), d(gen));
                dense(i + 1, i) = lo[i];
                dense(i, i + 1) = up[i];
            }
        }
        const Eigen::VectorXcd b = Eigen::Map<Eigen::VectorXcd>(rhs.data(), n);
        const Eigen::VectorXcd expected = dense.fullPivLu().solve(b);
        TridiagonalLU lu(lo, di, up);
        CHECK_FALSE(lu.singular());
        lu.solve(rhs);
        for (int i = 0; i < n; ++i) CHECK(std::abs(rhs[i] - expected[i]) < 1e-9 * (1.0 + std::abs(expected[i])));
    }
}

TEST_CASE("singular tridiagonal matrix is detected") {
    TridiagonalLU lu({1.0}, {1.0, 1.0}, {1.0});
    CHECK(lu.singular());
    std::vector<cplx> b{1.0, 1.0};
    CHECK_THROWS_AS(lu.solve(b), NumericalError);
}

TEST_CASE("assemble: stencil and damping") {
    const auto p = assemble({1, 0, 0}, 1.0, 3);
    CHECK(p.grid.h == doctest::Approx(0.5));
    CHECK(p.a1_diag[0] == doctest::Approx(0.5));
    CHECK(p.a1_diag[1] == doctest::Approx(0.0));
    CHECK(p.a1_diag[2] == doctest::Approx(0.5));
    CHECK(p.a0_diag[1] == doctest::Approx(8.0));
    CHECK(p.a0_off[0] == doctest::Approx(-4.0));
    const auto shifted_p = assemble({1, 3, 1}, 4.0, 101);
    for (double v : shifted_p.a1_diag) CHECK(v >= 6.0);
    const double h = shifted_p.grid.h;
    for (double v : shifted_p.a0_diag) CHECK(v == doctest::Approx(2.0 / (h * h) + 1.0));
    CHECK_THROWS_AS(assemble({1, 0, 0}, -1.0, 10), ParameterError);
}

TEST_CASE("sigma_min: right half-plane, conjugation, spectrum") {
    const auto p = assemble({1, 0, 0}, 10.0, 4000);
    CHECK(smallest_singular_value(p, 1.0).value > 1.0);
    const double s = smallest_singular_value(p, kLambda0).value;
    CHECK(s == doctest::Approx(smallest_singular_value(p, std::conj(kLambda0)).value).epsilon(1e-12));
    CHECK(s < 1e-4 * norm_inf(p, kLambda0));
    CHECK(smallest_singular_value(p, kLambda0 + 0.5).value > 10.0 * s);
}

TEST_CASE("sigma_min: quartic damping ground state is near-singular") {
    const auto mu = anharmonic_eigenvalues(2, 0, 1e-9).values[0];
    const auto b = line_branches({2, 0, 0}, mu, 0);
    REQUIRE(b.size() == 1);
    const auto p = assemble({2, 0, 0}, 8.0, 2000);
    const double s = smallest_singular_value(p, b[0].lambda).value;
    CHECK(s < 1e-4 * norm_inf(p, b[0].lambda));
    CHECK(smallest_singular_value(p, b[0].lambda + 0.5).value > 10.0 * s);
}

TEST_CASE("sigma_min is minimal at the refined eigenvalue along a segment") {
    const auto p = assemble({1, 0, 0}, 10.0, 2000);
    const auto r = refine_eig(p, kLambda1, residual_tol(p, kLambda1));
    REQUIRE(r.status == RefineResult::Status::converged);
    const cplx dir = std::polar(1.0, 0.4);
    double at_center = smallest_singular_value(p, r.lambda).value;
    for (double t : {-0.2, -0.1, 0.1, 0.2}) CHECK(smallest_singular_value(p, r.lambda + t * dir).value > at_center);
}

TEST_CASE("refine_eig: seeds and basins") {
    const auto p = assemble({1, 0, 0}, 10.0, 4000);
    const double tol = residual_tol(p, kLambda0);
    const auto from_seed = refine_eig(p, asymptotic_lambda(1, 0, 1), tol);
    CHECK(from_seed.status == RefineResult::Status::converged);
    CHECK(std::abs(from_seed.lambda - kLambda0) < 1e-5);
    const auto exact = refine_eig(p, kLambda0, tol);
    CHECK(exact.iterations <= 3);
    const auto again = refine_eig(p, exact.lambda, tol);
    CHECK(again.iterations <= 2);
    const auto right = refine_eig(p, cplx(1.0, 0.2), tol);
    CHECK(right.status != RefineResult::Status::converged);
    CHECK_THROWS_AS(refine_eig(p, cplx(-1.0, 0.0), tol), ParameterError);
}

TEST_CASE("refine_eig: grid convergence is second order") {
    double previous = 0.0;
    for (int N : {1000, 2000, 4000}) {
        const auto p = assemble({1, 0, 0}, 10.0, N);
        const double err = std::abs(refine_eig(p, kLambda0, residual_tol(p, kLambda0)).lambda - kLambda0);
        if (previous > 0.0) CHECK(previous / err == doctest::Approx(4.0).epsilon(0.05));
        previous = err;
    }
}

TEST_CASE("odd modes refine from their dispersion roots") {
    for (int k = 1; k <= 5; k += 2) {
        const auto b = line_branches({1, 0, 0}, 2.0 * k + 1, k);
        const auto check = verify_branch(b.at(0));
        CHECK(check.verified);
    }
}

TEST_CASE("trace: determinant recurrence matches the column route") {
    const auto p = assemble({1, 0.5, 0.2}, 6.0, 600);
    for (cplx z : {cplx(-0.3, 0.8), cplx(1.0, 1.0), cplx(-2.0, 3.0)}) {
        const cplx a = trace_log_derivative(p, z, TraceMethod::determinant_recurrence);
        const cplx b = trace_log_derivative(p, z, TraceMethod::columns);
        CHECK(std::abs(a - b) < 1e-8 * std::abs(b));
    }
}

TEST_CASE("contour counts") {
    const auto p = assemble({1, 0, 0}, 10.0, 4000);
    CHECK(count_eigs_contour(p, {0.5, 1.5, 0.5, 1.5, 64}).count == 0);
    const double m = 0.3;
    CHECK(count_eigs_contour(p, {kLambda0.real() - m, kLambda0.real() + m, kLambda0.imag() - m, kLambda0.imag() + m, 64})
              .count == 1);
    const auto both = count_eigs_contour(p, {-1.8, -0.2, 0.6, 2.7, 64});
    CHECK(both.count == 2);
    CHECK(std::abs(both.raw - 2.0) < 0.2);
    // The column route is quadratic in N; a coarser grid keeps it quick.
    const auto coarse = assemble({1, 0, 0}, 10.0, 800);
    CHECK(count_eigs_contour(coarse, {-1.8, -0.2, 0.6, 2.7, 64}, TraceMethod::columns).count == 2);
}

TEST_CASE("contour spec must avoid the closed negative axis") {
    CHECK_THROWS_AS((ContourSpec{-1.0, 1.0, -1.0, 1.0, 64}.validate()), ParameterError);
    CHECK_NOTHROW((ContourSpec{-1.0, 1.0, 0.1, 1.0, 64}.validate()));
    CHECK_NOTHROW((ContourSpec{0.1, 1.0, -1.0, 1.0, 64}.validate()));
}

TEST_CASE("equivalence oracle: contour counts equal dispersion root counts") {
    for (double a0 : {0.0, 3.0})
        for (double q0 : {0.0, 1.0}) {
            const PencilParams params{1, a0, q0};
            const auto p = assemble(params, 12.0, 4799);
            std::vector<cplx> roots;
            for (int k = 0; k <= 4; ++k)
                for (const auto& b : line_branches(params, 2.0 * k + 1, k)) roots.push_back(b.lambda);
            // Bands below the k = 5 root for every parameter pair.
            for (auto [lo, hi] : {std::pair{0.3, 1.0}, std::pair{1.0, 3.0}}) {
                int expected = 0;
                for (cplx r : roots) expected += r.imag() > lo && r.imag() < hi && r.real() > -9.0;
                const auto c = count_eigs_contour(p, {-9.0, -0.05, lo, hi, 64});
                INFO("a0=" << a0 << " q0=" << q0 << " band=" << lo << ".." << hi << " raw=" << c.raw);
                CHECK(c.count == expected);
            }
        }
}

TEST_CASE("strip branches verify on the shifted pencil") {
    for (int j : {1, 7}) {
        const auto b = strip_branches({1, 1, 0}, j, 0);
        REQUIRE(b.size() == 1);
        CHECK(verify_branch(b[0]).verified);
    }
}
