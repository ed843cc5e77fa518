#include "dampspec/quasimode.hpp"

#include "dampspec/error.hpp"
#include "dampspec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace dampspec {

namespace {

constexpr int kScanPoints = 4000;

double bump_raw(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return std::exp(-1.0 / (t * (1.0 - t)));
}

double bump_norm_constant() {
    static const double c = [] {
        const auto rule = gauss_legendre(20);
        const int panels = 200;
        double sum = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double lo = static_cast<double>(p) / panels;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double t = lo + 0.5 * (rule.nodes[i] + 1.0) / panels;
                const double f = bump_raw(t);
                sum += 0.5 * rule.weights[i] / panels * f * f;
            }
        }
        return 1.0 / std::sqrt(sum);
    }();
    return c;
}

/// max of f over [lo, hi] on a geometric grid, plus both ends.
template <class F>
double scan_max(F&& f, double lo, double hi) {
    double best = std::max(f(lo), f(hi));
    const double ratio = std::pow(hi / lo, 1.0 / kScanPoints);
    double x = lo;
    for (int i = 0; i < kScanPoints; ++i, x *= ratio) best = std::max(best, f(x));
    return best;
}

std::size_t grid_intervals(double width, double k_max, const QuasimodeOptions& opt) {
    double h = width / opt.min_support_points;
    if (k_max > 0.0) h = std::min(h, 2.0 * std::numbers::pi / (opt.points_per_wavelength * k_max));
    const double intervals = std::ceil(width / h);
    if (!(intervals + 1.0 <= static_cast<double>(opt.max_points)))
        throw NumericalError("under_resolved", "quasimode grid needs " + std::to_string(intervals + 1.0) +
                                                   " points, above the budget of " +
                                                   std::to_string(opt.max_points));
    return static_cast<std::size_t>(intervals);
}

void normalize_gradient(Quasimode& qm) {
    const double g = gradient_norm(qm);
    if (g > 0.0)
        for (auto& v : qm.values) v /= g;
}

} // namespace

Coefficient Coefficient::polynomial(std::vector<double> ascending) {
    require(!ascending.empty(), "Coefficient::polynomial: empty coefficient list");
    Coefficient c;
    c.zero_ = std::all_of(ascending.begin(), ascending.end(), [](double v) { return v == 0.0; });
    c.poly_ = ascending;
    c.value_ = [p = ascending](double x) {
        double v = 0.0;
        for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
        return v;
    };
    c.derivative_ = [p = ascending](double x) {
        double v = 0.0;
        for (std::size_t i = p.size(); i-- > 1;) v = v * x + static_cast<double>(i) * p[i];
        return v;
    };
    return c;
}

Coefficient Coefficient::monomial_damping(int n, double a0) {
    require(n >= 1, "monomial_damping: n must be >= 1");
    std::vector<double> p(2 * n + 1, 0.0);
    p[0] = a0;
    p[2 * n] = 1.0;
    return polynomial(std::move(p));
}

Coefficient Coefficient::constant(double c) { return polynomial({c}); }

Coefficient Coefficient::custom(Fn value, Fn derivative) {
    Coefficient c;
    c.value_ = std::move(value);
    c.derivative_ = std::move(derivative);
    return c;
}

Amplitude::Amplitude(double lambda, Coefficient a, Coefficient q)
    : lambda_(lambda), a_(std::move(a)), q_(std::move(q)) {}

Amplitude amplitude(double lambda, const Coefficient& a, const Coefficient& q) {
    require(lambda < 0.0, "amplitude: lambda must be negative (use cone_sequence for lambda = 0)");
    return Amplitude(lambda, a, q);
}

double EssentialProbe::support_left() const { return m / std::sqrt(rho_m); }
double EssentialProbe::support_right() const { return (m + 1.0) / std::sqrt(rho_m); }

EssentialProbe make_probe(double lambda, const Coefficient& a, const Coefficient& q, int m) {
    require(m >= 1, "make_probe: m must be >= 1");
    const Amplitude A = amplitude(lambda, a, q);
    const double t0 = static_cast<double>(m);
    const double t1 = 10.0 * t0;

    auto positive_on = [&](double lo, double hi) {
        const double ratio = std::pow(hi / lo, 1.0 / kScanPoints);
        double x = lo;
        for (int i = 0; i <= kScanPoints; ++i, x *= ratio)
            if (!(A(std::min(x, hi)) > 0.0)) return false;
        return true;
    };
    if (!positive_on(t0, t1))
        throw NumericalError("window_too_small", "A(x) <= 0 on [m, 10m]; increase m (move the window right)");

    auto ratio = [&](double t) { return std::abs(A.derivative(t)) / A(t); };
    double rho = 0.0;
    bool decreasing = A.polynomial();
    if (decreasing) {
        const double step = std::pow(t1 / t0, 1.0 / kScanPoints);
        double prev = ratio(t0);
        double x = t0 * step;
        for (int i = 1; i <= kScanPoints && decreasing; ++i, x *= step) {
            const double r = ratio(std::min(x, t1));
            decreasing = r <= prev * (1.0 + 1e-12);
            prev = r;
        }
    }
    rho = decreasing ? ratio(t0) : scan_max(ratio, t0, t1);
    if (!(rho > 0.0))
        throw NumericalError("hypothesis_violated", "|A'|/A vanishes beyond m; the cutoff scale is undefined");

    EssentialProbe probe{lambda, a, q, m, rho};
    if (!positive_on(probe.support_left(), probe.support_right()))
        throw NumericalError("window_too_small", "A(x) <= 0 on the cutoff support");
    return probe;
}

BumpValue cutoff_bump(double t) {
    if (t <= 0.0 || t >= 1.0) return {0.0, 0.0, 0.0};
    const double c = bump_norm_constant();
    const double g = t * (1.0 - t);
    const double dg = 1.0 - 2.0 * t;
    const double f = c * std::exp(-1.0 / g);
    const double g2 = g * g;
    const double d1 = f * dg / g2;
    const double d2 = f * (dg * dg / (g2 * g2) - 2.0 / g2 - 2.0 * dg * dg / (g2 * g));
    return {f, d1, d2};
}

double gradient_norm(const Quasimode& qm) {
    const std::size_t n = qm.values.size();
    double s = 0.0;
    if (qm.periodic) {
        for (std::size_t i = 0; i < n; ++i) s += std::norm(qm.values[(i + 1) % n] - qm.values[i]);
    } else {
        s += std::norm(qm.values.front()) + std::norm(qm.values.back());
        for (std::size_t i = 0; i + 1 < n; ++i) s += std::norm(qm.values[i + 1] - qm.values[i]);
    }
    return std::sqrt(s / qm.h);
}

double residual_ratio(const Quasimode& qm, const Amplitude& A) {
    const std::size_t n = qm.values.size();
    require(n >= 3, "residual_ratio: quasimode has too few samples");
    const double inv_h2 = 1.0 / (qm.h * qm.h);
    const auto& v = qm.values;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cplx left{}, right{};
        if (qm.periodic) {
            left = v[(i + n - 1) % n];
            right = v[(i + 1) % n];
        } else {
            if (i > 0) left = v[i - 1];
            if (i + 1 < n) right = v[i + 1];
        }
        const cplx r = -(left - 2.0 * v[i] + right) * inv_h2 - A(qm.x_left + i * qm.h) * v[i];
        s += std::norm(r);
    }
    return std::sqrt(s * qm.h) / gradient_norm(qm);
}

double residual_ratio(const Quasimode& qm, double lambda, const Coefficient& a, const Coefficient& q) {
    return residual_ratio(qm, Amplitude(lambda, a, q));
}

Quasimode build_quasimode(const EssentialProbe& probe, const QuasimodeOptions& options) {
    require(probe.rho_m > 0.0, "build_quasimode: rho_m must be positive");
    require(options.points_per_wavelength >= 2.0, "build_quasimode: need at least 2 points per wavelength");
    const Amplitude A(probe.lambda, probe.a, probe.q);
    const double xl = probe.support_left();
    const double xr = probe.support_right();

    double a_max = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double a = A(xl + (xr - xl) * i / 1000.0);
        if (!(a > 0.0)) throw NumericalError("window_too_small", "A(x) <= 0 on the cutoff support");
        a_max = std::max(a_max, a);
    }
    const std::size_t intervals = grid_intervals(xr - xl, std::sqrt(a_max), options);

    Quasimode qm;
    qm.lambda = probe.lambda;
    qm.m = probe.m;
    qm.rho = probe.rho_m;
    qm.support_left = xl;
    qm.support_right = xr;
    qm.x_left = xl;
    qm.h = (xr - xl) / static_cast<double>(intervals);
    qm.values.resize(intervals + 1);

    const double sqrt_rho = std::sqrt(probe.rho_m);
    const double amp = std::pow(probe.rho_m, 0.25);
    const auto gl = gauss_legendre(4);
    double phase = 0.0;
    for (std::size_t i = 0; i <= intervals; ++i) {
        const double x = xl + i * qm.h;
        const double env = amp * cutoff_bump(sqrt_rho * x - probe.m).value;
        qm.values[i] = std::polar(env, phase);
        // Advance the phase to x + h.
        if (options.phase == PhaseRule::discrete_dispersion) {
            const double half = 0.5 * qm.h * std::sqrt(A(x + 0.5 * qm.h));
            if (half > 1.0)
                throw NumericalError("under_resolved", "grid step exceeds the discrete dispersion limit");
            phase += 2.0 * std::asin(half);
        } else {
            double cell = 0.0;
            for (std::size_t g = 0; g < gl.nodes.size(); ++g)
                cell += gl.weights[g] * std::sqrt(A(x + 0.5 * qm.h * (gl.nodes[g] + 1.0)));
            phase += 0.5 * qm.h * cell;
        }
        phase = std::remainder(phase, 2.0 * std::numbers::pi);
    }
    normalize_gradient(qm);
    qm.residual_ratio = residual_ratio(qm, A);
    return qm;
}

double analytic_residual_ratio(const EssentialProbe& probe) {
    require(probe.rho_m > 0.0, "analytic_residual_ratio: rho_m must be positive");
    const Amplitude A(probe.lambda, probe.a, probe.q);
    const double sr = std::sqrt(probe.rho_m);
    const double amp = std::pow(probe.rho_m, 0.25);
    const auto rule = gauss_legendre(16);
    const int panels = 400;
    double residual2 = 0.0;
    double gradient2 = 0.0;
    for (int p = 0; p < panels; ++p) {
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double t = (p + 0.5 * (rule.nodes[i] + 1.0)) / panels;
            const double w = 0.5 * rule.weights[i] / panels / sr; // dx = dt / sqrt(rho)
            const double x = (t + probe.m) / sr;
            const auto b = cutoff_bump(t);
            const double f = amp * b.value;
            const double f1 = amp * sr * b.d1;
            const double f2 = amp * probe.rho_m * b.d2;
            const double a = A(x);
            const double root = std::sqrt(a);
            // (-d^2 - A)(f e^{i S}) = e^{iS} [-f'' - i (2 sqrt(A) f' + A'/(2 sqrt A) f)].
            const double imag = 2.0 * root * f1 + 0.5 * A.derivative(x) / root * f;
            residual2 += w * (f2 * f2 + imag * imag);
            gradient2 += w * (f1 * f1 + a * f * f);
        }
    }
    return std::sqrt(residual2 / gradient2);
}

Quasimode cone_sequence(const Coefficient& q, int m, std::optional<double> scale, const QuasimodeOptions& options) {
    require(m >= 1, "cone_sequence: m must be >= 1");
    const double t0 = static_cast<double>(m);
    auto absq = [&](double x) { return std::abs(q(x)); };
    const double near_sup = scan_max(absq, t0, 10.0 * t0);
    const double far_sup = scan_max(absq, 10.0 * t0, 100.0 * t0);
    if (!(near_sup == 0.0 && far_sup == 0.0) && !(far_sup <= 0.9 * near_sup))
        throw NumericalError("hypothesis_violated", "cone_sequence: q does not decay at +infinity");

    const double rho = scale ? *scale : scan_max([&](double x) { return q(x); }, t0, 10.0 * t0);
    if (!(rho > 0.0))
        throw ParameterError("cone_sequence: rho_m vanishes (q == 0 beyond m); pass an explicit scale");

    Quasimode qm;
    qm.lambda = 0.0;
    qm.m = m;
    qm.rho = rho;
    const double sr = std::sqrt(rho);
    qm.support_left = m / sr;
    qm.support_right = (m + 1.0) / sr;
    const std::size_t intervals = grid_intervals(qm.support_right - qm.support_left, 0.0, options);
    qm.x_left = qm.support_left;
    qm.h = (qm.support_right - qm.support_left) / static_cast<double>(intervals);
    qm.values.resize(intervals + 1);
    const double amp = std::pow(rho, 0.25);
    for (std::size_t i = 0; i <= intervals; ++i)
        qm.values[i] = amp * cutoff_bump(sr * (qm.x_left + i * qm.h) - m).value;
    normalize_gradient(qm);

    // ||(Delta_h - q) phi|| is the residual of -Delta + q with lambda = 0,
    // i.e. A = -q in the amplitude convention.
    const double inv_h2 = 1.0 / (qm.h * qm.h);
    double s = 0.0;
    const auto& v = qm.values;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const cplx left = i > 0 ? v[i - 1] : cplx{};
        const cplx right = i + 1 < v.size() ? v[i + 1] : cplx{};
        const cplx r = (left - 2.0 * v[i] + right) * inv_h2 - q(qm.x_left + i * qm.h) * v[i];
        s += std::norm(r);
    }
    qm.residual_ratio = std::sqrt(s * qm.h) / gradient_norm(qm);
    return qm;
}

} // namespace dampspec
