#pragma once

#include "dampspec/banded_lu.hpp"
#include "dampspec/dispersion.hpp"

#include <span>
#include <vector>

namespace dampspec {

/// Uniform 1-D grid: x_i = x_left + i h, i = 1..N, Dirichlet at x_0 and x_{N+1}.
struct GridDescriptor {
    double x_left = 0.0;
    double h = 0.0;
    int N = 0;

    double x(int i) const noexcept { return x_left + i * h; }
    double x_right() const noexcept { return x_left + (N + 1) * h; }
};

/// Finite-difference realisation of T(lambda) = A0 + lambda A1 + lambda^2 I.
/// A0 is the central-difference -d^2/dx^2 plus the potential; A1 is the
/// diagonal 2 a(x_i). A0 is symmetric, so T(lambda) is complex symmetric
/// and T(lambda)^H = conj(T(lambda)).
struct GridPencil {
    std::vector<double> a0_diag;
    std::vector<double> a0_off;
    std::vector<double> a1_diag;
    GridDescriptor grid;

    int dim() const noexcept { return grid.N; }
};

/// A0 = -Laplacian_h + q0 I and A1 = diag(2 (x_i^{2n} + a0)) on (-L, L).
GridPencil assemble(const PencilParams& params, double L, int N);

/// Same operator on an arbitrary window (x_left, x_right) with N interior points.
GridPencil assemble_window(const PencilParams& params, double x_left, double x_right, int N);

/// Adds a constant to the potential (transverse Dirichlet mode of the strip).
GridPencil shifted(GridPencil p, double shift);

TridiagonalLU factor(const GridPencil& p, cplx lambda);
std::vector<cplx> apply(const GridPencil& p, cplx lambda, std::span<const cplx> v);
/// Infinity norm of T(lambda); used as the scale for singular-value tests.
double norm_inf(const GridPencil& p, cplx lambda);

struct SingularValueEstimate {
    double value = 0.0;
    bool converged = false;
    bool exact_singular = false;
    int iterations = 0;
};

/// sigma_min(T(lambda)) by inverse iteration on T^H T using the banded LU.
/// Requires lambda outside (-inf, 0].
SingularValueEstimate smallest_singular_value(const GridPencil& p, cplx lambda, int max_iterations = 500,
                                              double rel_tol = 1e-10);

/// Rectangle in the complex plane with `quad_points` trapezoid panels per side.
struct ContourSpec {
    double re_min = 0.0;
    double re_max = 0.0;
    double im_min = 0.0;
    double im_max = 0.0;
    int quad_points = 64;

    void validate() const;
};

enum class TraceMethod {
    /// Log-derivative of the leading-minor recurrence; O(N) per node, with
    /// the pivoted column route as fallback when a minor ratio nearly vanishes.
    determinant_recurrence,
    /// diag(T^{-1}) column by column through the pivoted LU; O(N^2) per node.
    columns,
};

/// tr(T(lambda)^{-1} T'(lambda)) with T' = A1 + 2 lambda I.
cplx trace_log_derivative(const GridPencil& p, cplx lambda, TraceMethod method = TraceMethod::determinant_recurrence);

struct ContourCount {
    int count = 0;
    /// Value of (1/2 pi i) times the contour integral before rounding.
    cplx raw{};
    int quad_points = 0;
};

/// Argument-principle eigenvalue count inside the rectangle. The quadrature
/// is doubled (at most twice) while the raw value sits more than 0.2 from an
/// integer; after that NumericalError("contour_inaccurate") is thrown. A node
/// where T is exactly singular raises "contour_hits_spectrum".
ContourCount count_eigs_contour(const GridPencil& p, const ContourSpec& c,
                                TraceMethod method = TraceMethod::determinant_recurrence);

struct RefineResult {
    enum class Status { converged, out_of_basin, not_converged };
    cplx lambda{};
    double residual = 0.0;
    int iterations = 0;
    Status status = Status::not_converged;
    std::vector<cplx> eigenvector;
};

struct RefineOptions {
    int max_iterations = 60;
    /// Iterates farther than this from the seed are reported out of basin;
    /// a non-positive value selects 0.5 max(1, |seed|).
    double basin_radius = 0.0;
};

/// Nonlinear inverse iteration with the two-sided Rayleigh functional
/// v^T T(lambda) v = 0 (T is complex symmetric, so v^T is the left
/// eigenvector's adjoint). Stops when ||T(lambda) v|| / ||v|| < tol.
RefineResult refine_eig(const GridPencil& p, cplx lambda0, double tol, const RefineOptions& options = {});

const char* to_string(RefineResult::Status status) noexcept;

} // namespace dampspec

namespace dampspec {

/// Outcome of checking one dispersion root against the direct grid pencil.
struct BranchCheck {
    bool verified = false;
    cplx refined{};
    double distance = 0.0;
    RefineResult::Status status = RefineResult::Status::not_converged;
    GridDescriptor grid;
};

/// Grid on which a branch is checked: the half-width is chosen from the
/// Gaussian-type decay exp(-Re sqrt(2 lambda) x^{n+1} / (n+1)) of the
/// eigenfunction (clamped to [6, 40]) and the step resolves the largest local
/// wave number on the box (h <= 0.005, N <= 40000). Strip branches use
/// n = 1 with the transverse Dirichlet eigenvalue added to the potential.
GridPencil grid_for_branch(const EigenvalueBranch& branch);

/// Refines the branch on its grid and accepts it when refinement converges
/// within `rel_tol * max(1, |lambda|)` of the algebraic value.
BranchCheck verify_branch(const EigenvalueBranch& branch, double rel_tol = 1e-3);

} // namespace dampspec
