#include "dampspec/oscillator.hpp"

#include "dampspec/error.hpp"
#include "dampspec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace dampspec {

namespace {

double pow_int(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

std::vector<double> lowest_eigenvalues(const OscillatorSpec& spec) {
    const auto eig = eig_tridiagonal_lowest(build_oscillator_matrix(spec), spec.k_max + 1);
    if (eig.has_degenerate()) {
        throw NumericalError("degenerate_bracket",
                             "oscillator matrix produced a multiple eigenvalue; the 1-D spectrum "
                             "must be simple (grid too coarse or box too small)");
    }
    return eig.values;
}

} // namespace

SymTridiagonal build_oscillator_matrix(const OscillatorSpec& spec) {
    require(spec.n >= 1, "oscillator: n must be >= 1");
    require(spec.L > 0.0, "oscillator: L must be positive");
    require(spec.N >= 3, "oscillator: N must be >= 3");
    require(spec.k_max >= 0 && spec.k_max < spec.N, "oscillator: k_max must lie in [0, N)");

    const double h = spec.h();
    const double inv_h2 = 1.0 / (h * h);
    SymTridiagonal m;
    m.diag.resize(spec.N);
    m.off.assign(spec.N - 1, -inv_h2);
    for (int i = 1; i <= spec.N; ++i) {
        const double x = -spec.L + i * h;
        m.diag[i - 1] = 2.0 * inv_h2 + pow_int(x, 2 * spec.n);
    }
    return m;
}

double truncation_half_width(int n, int k_max) {
    const double mu_hat = weyl_mu(n, k_max);
    return std::max(2.0 * std::pow(mu_hat, 1.0 / (2.0 * n)), 6.0);
}

void validate_truncation(const OscillatorSpec& spec) {
    const double mu_hat = weyl_mu(spec.n, spec.k_max);
    const double needed = 2.0 * std::pow(mu_hat, 1.0 / (2.0 * spec.n));
    if (spec.L < needed) {
        throw ParameterError("oscillator: L = " + std::to_string(spec.L) +
                                 " is inside twice the turning point (" + std::to_string(needed) +
                                 ") of mode " + std::to_string(spec.k_max),
                             "truncation_too_small");
    }
}

SpectrumReal anharmonic_eigenvalues(int n, int k_max, double tol, const LadderOptions& options) {
    require(n >= 1, "anharmonic_eigenvalues: n must be >= 1");
    require(k_max >= 0, "anharmonic_eigenvalues: k_max must be >= 0");
    require(tol > 0.0, "anharmonic_eigenvalues: tol must be positive");
    require(options.length_scale >= 1.0, "anharmonic_eigenvalues: length_scale must be >= 1");
    require(options.max_levels >= 3, "anharmonic_eigenvalues: at least three grids are needed");

    const double L_rule = truncation_half_width(n, k_max) * options.length_scale;
    const double h0 = std::min(options.h_max, L_rule / 500.0);
    // Snap L so that (N + 1) h0 = 2 L exactly; halving h then keeps grids nested.
    long intervals = static_cast<long>(std::ceil(2.0 * L_rule / h0));
    OscillatorSpec spec{n, 0.5 * intervals * h0, static_cast<int>(intervals - 1), k_max};
    validate_truncation(spec);

    const std::size_t count = static_cast<std::size_t>(k_max) + 1;
    std::vector<double> raw_prev = lowest_eigenvalues(spec);
    std::vector<double> extrap_prev;
    SpectrumReal result;
    int extra_done = 0;
    bool converged = false;

    for (int level = 1; level < options.max_levels; ++level) {
        intervals *= 2;
        spec.N = static_cast<int>(intervals - 1);
        const std::vector<double> raw = lowest_eigenvalues(spec);

        std::vector<double> extrap(count);
        for (std::size_t k = 0; k < count; ++k) extrap[k] = (4.0 * raw[k] - raw_prev[k]) / 3.0;

        if (!extrap_prev.empty()) {
            result.values = extrap;
            result.error_bounds.resize(count);
            bool all_below = true;
            for (std::size_t k = 0; k < count; ++k) {
                const double floor = 1e-11 * std::max(1.0, std::abs(extrap[k]));
                result.error_bounds[k] = std::max(std::abs(extrap[k] - extrap_prev[k]), floor);
                all_below = all_below && result.error_bounds[k] < tol;
            }
            result.spec = spec;
            if (converged) {
                ++extra_done;
            } else if (all_below) {
                converged = true;
            }
            if (converged && extra_done >= options.extra_levels) break;
        }
        raw_prev = raw;
        extrap_prev = std::move(extrap);
    }
    result.converged = converged;
    return result;
}

SpectrumReal dirichlet_interval_eigenvalues(double ell, int k_max) {
    require(ell > 0.0, "dirichlet_interval_eigenvalues: ell must be positive");
    require(k_max >= 1, "dirichlet_interval_eigenvalues: k_max must be >= 1");
    SpectrumReal out;
    for (int k = 1; k <= k_max; ++k) {
        const double root = k * std::numbers::pi / (2.0 * ell);
        out.values.push_back(root * root);
        out.error_bounds.push_back(0.0);
    }
    // n = 0 marks the potential-free box; no grid is involved.
    out.spec = OscillatorSpec{0, ell, 0, k_max};
    return out;
}

double sigma_2n(int n) {
    require(n >= 1, "sigma_2n: n must be >= 1");
    const double two_n = 2.0 * n;
    // 1 - x^{2n} = -expm1(2n log1p(-c)) with c = 1 - |x|, accurate at the ends.
    return tanh_sinh(
        [two_n](double, double c) { return std::sqrt(-std::expm1(two_n * std::log1p(-c))); },
        1e-13);
}

double weyl_mu(int n, int k) {
    require(n >= 1, "weyl_mu: n must be >= 1");
    require(k >= 0, "weyl_mu: k must be >= 0");
    if (n == 1) return 2.0 * k + 1.0;
    const double p = 2.0 * n / (n + 1.0);
    return std::pow(std::numbers::pi / sigma_2n(n), p) * std::pow(static_cast<double>(k), p);
}

} // namespace dampspec
