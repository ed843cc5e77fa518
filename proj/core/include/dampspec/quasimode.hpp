#pragma once

#include "dampspec/polynomial.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace dampspec {

/// A real coefficient function on the half-line together with its derivative.
/// Polynomial coefficients keep their ascending coefficient list so that the
/// cutoff scale can be evaluated in closed form.
class Coefficient {
public:
    using Fn = std::function<double(double)>;

    static Coefficient polynomial(std::vector<double> ascending);
    /// x^{2n} + a0.
    static Coefficient monomial_damping(int n, double a0);
    static Coefficient constant(double c);
    static Coefficient custom(Fn value, Fn derivative);

    double operator()(double x) const { return value_(x); }
    double derivative(double x) const { return derivative_(x); }
    bool is_polynomial() const noexcept { return !poly_.empty(); }
    bool is_zero() const noexcept { return zero_; }

private:
    Fn value_;
    Fn derivative_;
    std::vector<double> poly_;
    bool zero_ = false;
};

/// A(x) = -q(x) - 2 lambda a(x) - lambda^2, the local wave number squared of
/// T(lambda) = -d^2/dx^2 - A(x) for lambda < 0 (B = 0 decomposition).
class Amplitude {
public:
    Amplitude(double lambda, Coefficient a, Coefficient q);

    double operator()(double x) const { return -q_(x) - 2.0 * lambda_ * a_(x) - lambda_ * lambda_; }
    double derivative(double x) const { return -q_.derivative(x) - 2.0 * lambda_ * a_.derivative(x); }
    double lambda() const noexcept { return lambda_; }
    bool polynomial() const noexcept { return a_.is_polynomial() && q_.is_polynomial(); }

private:
    double lambda_;
    Coefficient a_;
    Coefficient q_;
};

/// Throws ParameterError unless lambda < 0 (lambda = 0 is the cone case).
Amplitude amplitude(double lambda, const Coefficient& a, const Coefficient& q);

/// One element of the singular sequence for a fixed lambda <= 0.
struct EssentialProbe {
    double lambda = -1.0;
    Coefficient a = Coefficient::monomial_damping(1, 0.0);
    Coefficient q = Coefficient::constant(0.0);
    /// Sequence index (distinct from the damping exponent).
    int m = 10;
    /// Cutoff scale rho_m = sup_{t > m} |A'(t)| / A(t).
    double rho_m = 0.0;

    double support_left() const;
    double support_right() const;
};

/// Builds a probe and evaluates rho_m: in closed form at t = m for polynomial
/// coefficients (after confirming |A'|/A decreases on [m, 10m]), otherwise as
/// the maximum over a fine grid on [m, 10m]. Throws "window_too_small" if A
/// is not positive from m through the cutoff support.
EssentialProbe make_probe(double lambda, const Coefficient& a, const Coefficient& q, int m);

/// Smooth bump exp(-1/(t(1-t))) on (0, 1), scaled to unit L2 norm; value and
/// first two derivatives.
struct BumpValue {
    double value, d1, d2;
};
BumpValue cutoff_bump(double t);

enum class PhaseRule {
    /// Increments 2 asin(h sqrt(A) / 2) between grid points: the phase for
    /// which a plane wave is an exact null vector of the discrete operator
    /// when A is locally constant.
    discrete_dispersion,
    /// integral of sqrt(A) by composite 4-point Gauss–Legendre per cell.
    wkb_integral,
};

struct QuasimodeOptions {
    double points_per_wavelength = 20.0;
    int min_support_points = 400;
    std::size_t max_points = 20'000'000;
    PhaseRule phase = PhaseRule::discrete_dispersion;
};

/// Sampled quasimode on a uniform grid x_i = x_left + i h. Outside the grid
/// the function is zero unless `periodic` is set.
struct Quasimode {
    double x_left = 0.0;
    double h = 0.0;
    std::vector<cplx> values;
    bool periodic = false;
    double lambda = 0.0;
    int m = 0;
    double rho = 0.0;
    double support_left = 0.0;
    double support_right = 0.0;
    double residual_ratio = 0.0;

    double support_midpoint() const noexcept { return 0.5 * (support_left + support_right); }
};

/// phi_m(x) = rho^{1/4} bump(rho^{1/2} x - m) exp(i phase(x)), scaled so that
/// the discrete gradient has unit norm; residual_ratio is filled in.
/// Throws "under_resolved" if the grid would exceed options.max_points.
Quasimode build_quasimode(const EssentialProbe& probe, const QuasimodeOptions& options = {});

/// ||(-Delta_h - A) phi|| / ||grad_h phi|| with second-order differences.
double residual_ratio(const Quasimode& qm, const Amplitude& amplitude);
double residual_ratio(const Quasimode& qm, double lambda, const Coefficient& a, const Coefficient& q);

/// Discrete L2 norm of the forward-difference gradient.
double gradient_norm(const Quasimode& qm);

/// Continuous residual ratio of the same construction, evaluated from the
/// exact derivatives of the ansatz: the modulus of the residual does not
/// depend on the phase, so only the envelope has to be resolved.
double analytic_residual_ratio(const EssentialProbe& probe);

/// lambda = 0 sequence phi_m(x) = rho^{1/4} bump(rho^{1/2} x - m) with
/// rho_m = sup_{x > m} q. `scale` overrides rho_m (required when q == 0).
/// Throws "hypothesis_violated" if q does not decay. residual_ratio holds
/// ||(Delta_h - q) phi|| / ||grad_h phi||.
Quasimode cone_sequence(const Coefficient& q, int m, std::optional<double> scale = std::nullopt,
                        const QuasimodeOptions& options = {});

} // namespace dampspec
