#include "dampspec/polynomial.hpp"

#include "dampspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace dampspec {

namespace {

constexpr int kMaxAberthSweeps = 1000;
constexpr double kClusterDistance = 1e-6;
constexpr double kResidualTol = 1e-10;
constexpr double kClusterResidualTol = 1e-6;

std::string describe(const ComplexPolynomial& p) {
    std::string s = "p(z) = ";
    const auto& c = p.coefficients();
    for (std::size_t i = c.size(); i-- > 0;) {
        s += "(" + std::to_string(c[i].real()) + "," + std::to_string(c[i].imag()) + ")z^" +
             std::to_string(i);
        if (i) s += " + ";
    }
    return s;
}

/// Positive root of |c_d| r^d = sum_{i<d} |c_i| r^i (the sharp Cauchy radius);
/// every root of the polynomial lies in |z| <= r.
double cauchy_radius(const std::vector<cplx>& c) {
    const int d = static_cast<int>(c.size()) - 1;
    const double lead = std::abs(c[d]);
    auto g = [&](double r, double& dg) {
        double v = lead;
        dg = 0.0;
        for (int i = d - 1; i >= 0; --i) {
            dg = dg * r + v;
            v = v * r - std::abs(c[i]);
        }
        return v;
    };
    // Start from the crude bound 1 + max|c_i/c_d|, which is >= the root; Newton
    // then decreases monotonically since g is convex beyond its root.
    double r = 1.0;
    for (int i = 0; i < d; ++i) r = std::max(r, 1.0 + std::abs(c[i]) / lead);
    for (int iter = 0; iter < 200; ++iter) {
        double dg = 0.0;
        const double v = g(r, dg);
        if (dg <= 0.0) break;
        const double next = r - v / dg;
        if (!(next < r) || next <= 0.0) break;
        if (r - next <= 1e-14 * r) {
            r = next;
            break;
        }
        r = next;
    }
    return r;
}

} // namespace

ComplexPolynomial::ComplexPolynomial(std::vector<cplx> coefficients) : coeffs_(std::move(coefficients)) {
    while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
    require(!coeffs_.empty(), "ComplexPolynomial: all coefficients are zero");
}

bool ComplexPolynomial::has_real_coefficients() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c.imag() == 0.0; });
}

cplx ComplexPolynomial::operator()(cplx z) const noexcept {
    cplx v{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * z + *it;
    return v;
}

void ComplexPolynomial::evaluate(cplx z, cplx& value, cplx& derivative) const noexcept {
    value = {};
    derivative = {};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        derivative = derivative * z + value;
        value = value * z + *it;
    }
}

void ComplexPolynomial::evaluate(cplx z, cplx& value, cplx& d1, cplx& d2) const noexcept {
    value = {};
    d1 = {};
    d2 = {};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        d2 = d2 * z + d1;
        d1 = d1 * z + value;
        value = value * z + *it;
    }
    d2 *= 2.0;
}

double ComplexPolynomial::magnitude_scale(cplx z) const noexcept {
    const double r = std::abs(z);
    double v = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * r + std::abs(*it);
    return v;
}

ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    std::vector<cplx> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return ComplexPolynomial(std::move(c));
}

ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    std::vector<cplx> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
    return ComplexPolynomial(std::move(c));
}

ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b) {
    std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return ComplexPolynomial(std::move(c));
}

ComplexPolynomial ComplexPolynomial::pow(int exponent) const {
    require(exponent >= 0, "ComplexPolynomial::pow: negative exponent");
    ComplexPolynomial result;
    for (int i = 0; i < exponent; ++i) result = result * *this;
    return result;
}

double normalized_residual(const ComplexPolynomial& p, cplx root) {
    // The coefficient-weighted size sum |c_i||z|^i joins the leading-term scale
    // so that polynomials dominated by middle coefficients are not penalised.
    const double lead_scale = std::abs(p.leading()) * std::pow(std::max(1.0, std::abs(root)), p.degree());
    const double denom = std::max(lead_scale, p.magnitude_scale(root));
    return std::abs(p(root)) / denom;
}

RootSet roots_all(const ComplexPolynomial& poly) {
    require(poly.degree() >= 1, "roots_all: degree must be >= 1");
    const auto& c = poly.coefficients();
    for (const auto& ci : c) {
        if (!std::isfinite(ci.real()) || !std::isfinite(ci.imag()))
            throw NumericalError("coefficient_overflow", "roots_all: non-finite coefficient in " + describe(poly));
    }

    RootSet out;
    // Exact zero roots are split off so the iteration works on p(0) != 0.
    std::size_t zeros = 0;
    while (c[zeros] == cplx{}) ++zeros;
    for (std::size_t i = 0; i < zeros; ++i) out.roots.emplace_back(0.0, 0.0);

    const ComplexPolynomial reduced(std::vector<cplx>(c.begin() + zeros, c.end()));
    const int d = reduced.degree();
    std::vector<cplx> z(d);
    if (d > 0) {
        const double radius = cauchy_radius(reduced.coefficients());
        for (int k = 0; k < d; ++k) {
            const double angle = 2.0 * std::numbers::pi * k / d + 0.3;
            z[k] = std::polar(radius, angle);
        }
        const double eps = std::numeric_limits<double>::epsilon();
        std::vector<bool> done(d, false);
        int sweep = 0;
        for (; sweep < kMaxAberthSweeps; ++sweep) {
            bool all_done = true;
            for (int k = 0; k < d; ++k) {
                if (done[k]) continue;
                cplx value, deriv;
                reduced.evaluate(z[k], value, deriv);
                if (std::abs(value) <= 4.0 * eps * reduced.magnitude_scale(z[k])) {
                    done[k] = true;
                    continue;
                }
                const cplx ratio = value / deriv;
                cplx repulsion{};
                for (int j = 0; j < d; ++j)
                    if (j != k) repulsion += 1.0 / (z[k] - z[j]);
                const cplx step = ratio / (1.0 - ratio * repulsion);
                z[k] -= step;
                if (std::abs(step) <= 4.0 * eps * std::abs(z[k])) {
                    done[k] = true;
                } else {
                    all_done = false;
                }
            }
            if (all_done) break;
        }
        if (sweep == kMaxAberthSweeps)
            throw NumericalError("roots_not_converged",
                                 "Aberth iteration exhausted its budget for " + describe(poly));
    }
    for (const auto& r : z) out.roots.push_back(r);

    const std::size_t total = out.roots.size();
    out.cluster.assign(total, false);
    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t j = i + 1; j < total; ++j)
            if (std::abs(out.roots[i] - out.roots[j]) < kClusterDistance) out.cluster[i] = out.cluster[j] = true;

    out.residuals.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        cplx& r = out.roots[i];
        if (r != cplx{} || c[0] != cplx{}) {
            cplx value, deriv;
            poly.evaluate(r, value, deriv);
            if (deriv != cplx{} && value != cplx{}) {
                const cplx candidate = r - (out.cluster[i] ? 2.0 : 1.0) * value / deriv;
                if (std::abs(poly(candidate)) <= std::abs(value)) r = candidate;
            }
        }
        out.residuals[i] = normalized_residual(poly, r);
        const double tol = out.cluster[i] ? kClusterResidualTol : kResidualTol;
        if (!(out.residuals[i] < tol))
            throw NumericalError("roots_not_converged", "root residual " + std::to_string(out.residuals[i]) +
                                                            " above tolerance for " + describe(poly));
    }
    return out;
}

} // namespace dampspec
