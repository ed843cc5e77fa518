#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace dampspec {

/// Gauss–Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// `order`-point Gauss–Legendre nodes and weights (Newton on P_order).
GaussLegendreRule gauss_legendre(int order);

/// Double-exponential (tanh-sinh) quadrature of f over (-1, 1).
///
/// `f(x, c)` receives the abscissa x and its complement c = 1 - |x|, which
/// is computed without cancellation; integrands with endpoint singularities
/// in their derivatives should use `c` near the ends. Levels are refined by
/// halving the step until two successive estimates agree to `rel_tol`.
template <class F>
double tanh_sinh(F&& f, double rel_tol = 1e-12, int max_levels = 12) {
    using std::numbers::pi;
    const double half_pi = 0.5 * pi;
    // Past t ~ 6 the complement c underflows; nodes stop earlier once it does.
    const double t_max = 6.0;

    auto node = [&](double t, double& x, double& c, double& w) {
        const double s = half_pi * std::sinh(t);
        const double ch = std::cosh(s);
        // 1 - tanh(s) = 2 / (1 + exp(2s)), free of cancellation.
        c = 1.0 / (std::exp(s) * ch);
        x = std::tanh(s);
        w = half_pi * std::cosh(t) / (ch * ch);
    };

    double h = 0.5;
    double sum = 0.0;
    {
        double x, c, w;
        node(0.0, x, c, w);
        sum += w * f(x, c);
        for (double t = h; t <= t_max; t += h) {
            node(t, x, c, w);
            if (c == 0.0 || w == 0.0) break;
            sum += w * (f(x, c) + f(-x, c));
        }
    }
    double estimate = h * sum;
    for (int level = 1; level < max_levels; ++level) {
        h *= 0.5;
        for (double t = h; t <= t_max; t += 2.0 * h) {
            double x, c, w;
            node(t, x, c, w);
            if (c == 0.0 || w == 0.0) break;
            sum += w * (f(x, c) + f(-x, c));
        }
        const double next = h * sum;
        if (std::abs(next - estimate) <= rel_tol * std::abs(next)) return next;
        estimate = next;
    }
    return estimate;
}

} // namespace dampspec
