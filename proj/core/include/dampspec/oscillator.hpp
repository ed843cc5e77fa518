#pragma once

#include "dampspec/tridiagonal.hpp"

#include <vector>

namespace dampspec {

/// Truncated finite-difference realisation of -d^2/dx^2 + x^{2n} on (-L, L)
/// with Dirichlet ends and N interior points.
struct OscillatorSpec {
    int n = 1;
    double L = 6.0;
    int N = 1000;
    int k_max = 0;

    double h() const noexcept { return 2.0 * L / (N + 1); }
};

/// Sorted real eigenvalue estimates with one error bound per value.
struct SpectrumReal {
    std::vector<double> values;
    std::vector<double> error_bounds;
    OscillatorSpec spec;
    bool converged = true;
};

/// Central-difference matrix: diagonal 2/h^2 + x_i^{2n}, off-diagonal -1/h^2
/// with x_i = -L + i h, i = 1..N. Rejects N < 3, L <= 0 or k_max >= N.
SymTridiagonal build_oscillator_matrix(const OscillatorSpec& spec);

/// Throws unless L clears twice the classical turning point of the highest
/// requested mode, using the Weyl estimate of mu_{k_max + 1}.
void validate_truncation(const OscillatorSpec& spec);

/// Smallest admissible half-width for modes 0..k_max: max(2 mu^{1/(2n)}, 6).
double truncation_half_width(int n, int k_max);

/// Knobs for the refinement ladder; defaults follow the documented rule.
struct LadderOptions {
    /// Multiplies the truncation half-width (1.25 gives a 25% wider box).
    double length_scale = 1.0;
    /// Upper bound on the coarsest step; the effective step is min(h_max, L/500).
    double h_max = 0.01;
    /// Maximum number of grids; each halves h.
    int max_levels = 6;
    /// Grids computed beyond the first converged one (used by refinement checks).
    int extra_levels = 0;
};

/// Eigenvalues mu_0(n)..mu_{k_max}(n) of -d^2/dx^2 + x^{2n} on the real line.
///
/// Runs a ladder of grids with h halved each time and Richardson-extrapolates
/// consecutive pairs in h^2. The error bound of each value is the change
/// between the last two extrapolated estimates (floored by the bisection
/// tolerance). Returns when every bound is below `tol`; if the ladder is
/// exhausted first the partial result carries `converged = false`.
SpectrumReal anharmonic_eigenvalues(int n, int k_max, double tol, const LadderOptions& options = {});

/// Exact Dirichlet eigenvalues (k pi / (2 ell))^2 of -d^2/dx^2 on (-ell, ell),
/// k = 1..k_max.
SpectrumReal dirichlet_interval_eigenvalues(double ell, int k_max);

/// Sigma_{2n} = integral over (-1, 1) of sqrt(1 - x^{2n}), by tanh-sinh.
double sigma_2n(int n);

/// Leading-order Weyl estimate of mu_k(n); exact 2k+1 for n = 1.
/// For n >= 2 this is only an estimate and carries no error bound.
double weyl_mu(int n, int k);

} // namespace dampspec
