#include "dampspec/dispersion.hpp"

#include "dampspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dampspec {

namespace {

constexpr double kRealAxisTol = 1e-10;

template <class Params>
std::vector<EigenvalueBranch> filter_roots(const RootSet& roots, const Params& params, double a0, double q0) {
    std::vector<EigenvalueBranch> out;
    for (std::size_t i = 0; i < roots.roots.size(); ++i) {
        const cplx z = roots.roots[i];
        if (!(z.imag() > kRealAxisTol * std::max(1.0, std::abs(z)))) continue;
        if (!(z.real() <= 0.0)) continue;
        if (!(z.real() <= -a0)) continue;
        if (!(std::norm(z) >= q0)) continue;
        EigenvalueBranch b;
        b.lambda = z;
        b.params = params;
        b.residual = roots.residuals[i];
        b.cluster = roots.cluster[i];
        out.push_back(b);
    }
    std::sort(out.begin(), out.end(),
              [](const EigenvalueBranch& x, const EigenvalueBranch& y) { return x.lambda.imag() < y.lambda.imag(); });
    return out;
}

} // namespace

void PencilParams::validate() const {
    require(n >= 1, "pencil: n must be >= 1");
    require(a0 >= 0.0 && std::isfinite(a0), "pencil: a0 must be a finite non-negative number");
    require(q0 >= 0.0 && std::isfinite(q0), "pencil: q0 must be a finite non-negative number");
}

void StripParams::validate() const {
    require(ell > 0.0 && std::isfinite(ell), "strip: ell must be positive");
    require(a0 >= 0.0 && std::isfinite(a0), "strip: a0 must be a finite non-negative number");
    require(q0 >= 0.0 && std::isfinite(q0), "strip: q0 must be a finite non-negative number");
}

ComplexPolynomial line_char_poly(const PencilParams& params, double mu) {
    params.validate();
    require(mu > 0.0, "line_char_poly: mu must be positive");
    const ComplexPolynomial quadratic({cplx{params.q0}, cplx{2.0 * params.a0}, cplx{1.0}});
    const double minus_mu_pow = std::pow(-mu, params.n + 1);
    const ComplexPolynomial linear({cplx{0.0}, cplx{2.0 * minus_mu_pow}});
    ComplexPolynomial p = quadratic.pow(params.n + 1) - linear;
    for (const auto& c : p.coefficients())
        if (!std::isfinite(c.real()))
            throw NumericalError("coefficient_overflow", "line_char_poly: coefficient overflow (n or mu too large)");
    return p;
}

ComplexPolynomial strip_char_poly(const StripParams& params, int j, int k) {
    params.validate();
    require(j >= 1, "strip_char_poly: j must be >= 1");
    require(k >= 0, "strip_char_poly: k must be >= 0");
    const double sigma = std::pow(j * std::numbers::pi / (2.0 * params.ell), 2);
    const double odd = 2.0 * k + 1.0;
    const ComplexPolynomial quadratic({cplx{sigma + params.q0}, cplx{2.0 * params.a0}, cplx{1.0}});
    const ComplexPolynomial linear({cplx{0.0}, cplx{2.0 * odd * odd}});
    return quadratic.pow(2) - linear;
}

std::vector<EigenvalueBranch> physical_roots(const RootSet& roots, const PencilParams& params) {
    return filter_roots(roots, params, params.a0, params.q0);
}

std::vector<EigenvalueBranch> physical_roots(const RootSet& roots, const StripParams& params) {
    return filter_roots(roots, params, params.a0, params.q0);
}

cplx asymptotic_lambda(int n, double a0, double mu) {
    require(n >= 1, "asymptotic_lambda: n must be >= 1");
    require(mu > 0.0, "asymptotic_lambda: mu must be positive");
    const double m = 2.0 * n + 1.0;
    const double modulus = std::pow(2.0, 1.0 / m) * std::pow(mu, (n + 1.0) / m);
    return std::polar(modulus, std::numbers::pi * (n + 1.0) / m) - cplx{2.0 * (n + 1.0) / m * a0};
}

LimitEigenvalue limit_lambda(int k, double a0, double q0, double ell) {
    require(k >= 1, "limit_lambda: k must be >= 1");
    require(a0 >= 0.0 && q0 >= 0.0, "limit_lambda: a0 and q0 must be non-negative");
    require(ell > 0.0, "limit_lambda: ell must be positive");
    LimitEigenvalue out;
    const double root = k * std::numbers::pi / (2.0 * ell);
    out.mu = root * root;
    // Roots of lambda^2 + 2 a0 lambda + (mu_k + q0) = 0.
    const double disc = out.mu + q0 - a0 * a0;
    if (disc > 0.0) {
        out.kind = LimitEigenvalue::Kind::complex_pair;
        out.values = {cplx{-a0, std::sqrt(disc)}, cplx{-a0, -std::sqrt(disc)}};
    } else {
        out.kind = LimitEigenvalue::Kind::real_pair;
        const double s = std::sqrt(-disc);
        out.values = {cplx{-a0 - s}, cplx{-a0 + s}};
    }
    return out;
}

double line_back_substitution(const PencilParams& params, double mu, cplx lambda, double* scale) {
    const cplx quad = lambda * lambda + 2.0 * params.a0 * lambda + params.q0;
    const double quad_scale = std::norm(lambda) + 2.0 * params.a0 * std::abs(lambda) + params.q0;
    const cplx lhs = std::pow(quad, params.n + 1);
    const cplx rhs = 2.0 * lambda * std::pow(-mu, params.n + 1);
    if (scale) *scale = std::pow(quad_scale, params.n + 1) + std::abs(rhs);
    return std::abs(lhs - rhs);
}

std::vector<EigenvalueBranch> line_branches(const PencilParams& params, double mu, int k) {
    auto branches = physical_roots(roots_all(line_char_poly(params, mu)), params);
    for (auto& b : branches) {
        b.k = k;
        b.mu = mu;
    }
    return branches;
}

std::vector<EigenvalueBranch> strip_branches(const StripParams& params, int j, int k) {
    auto branches = physical_roots(roots_all(strip_char_poly(params, j, k)), params);
    const double odd = 2.0 * k + 1.0;
    for (auto& b : branches) {
        b.k = k;
        b.j = j;
        b.mu = odd;
    }
    return branches;
}

} // namespace dampspec
