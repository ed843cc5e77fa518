#include "dampspec/pencil.hpp"

#include "dampspec/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace dampspec {

namespace {

// Fixed-seed start vector with weight on every mode, smooth or odd.
std::vector<cplx> start_vector(int n) {
    std::mt19937 gen(20240611u);
    std::vector<cplx> v(n);
    for (auto& x : v) x = static_cast<double>(gen()) / 4294967295.0 - 0.5;
    return v;
}

double pow_int(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

double norm2(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

void scale(std::span<cplx> v, double factor) {
    for (auto& z : v) z *= factor;
}

void require_off_axis(cplx lambda, const char* where) {
    if (lambda.imag() == 0.0 && lambda.real() <= 0.0)
        throw ParameterError(std::string(where) + ": lambda must not lie on (-inf, 0]");
}

std::vector<cplx> diagonal_of(const GridPencil& p, cplx lambda) {
    std::vector<cplx> d(p.dim());
    const cplx l2 = lambda * lambda;
    for (int i = 0; i < p.dim(); ++i) d[i] = p.a0_diag[i] + lambda * p.a1_diag[i] + l2;
    return d;
}

cplx trace_by_columns(const GridPencil& p, cplx lambda, const TridiagonalLU& lu) {
    const int n = p.dim();
    std::vector<cplx> col(n);
    cplx trace{};
    for (int j = 0; j < n; ++j) {
        std::fill(col.begin(), col.end(), cplx{});
        col[j] = 1.0;
        lu.solve(col);
        trace += col[j] * (p.a1_diag[j] + 2.0 * lambda);
    }
    return trace;
}

} // namespace

GridPencil assemble_window(const PencilParams& params, double x_left, double x_right, int N) {
    params.validate();
    require(N >= 3, "assemble: N must be >= 3");
    require(x_right > x_left, "assemble: empty window");
    GridPencil p;
    p.grid = GridDescriptor{x_left, (x_right - x_left) / (N + 1), N};
    const double inv_h2 = 1.0 / (p.grid.h * p.grid.h);
    p.a0_diag.assign(N, 2.0 * inv_h2 + params.q0);
    p.a0_off.assign(N - 1, -inv_h2);
    p.a1_diag.resize(N);
    for (int i = 1; i <= N; ++i) p.a1_diag[i - 1] = 2.0 * (pow_int(p.grid.x(i), 2 * params.n) + params.a0);
    return p;
}

GridPencil assemble(const PencilParams& params, double L, int N) {
    require(L > 0.0, "assemble: L must be positive");
    return assemble_window(params, -L, L, N);
}

GridPencil shifted(GridPencil p, double shift) {
    for (auto& d : p.a0_diag) d += shift;
    return p;
}

TridiagonalLU factor(const GridPencil& p, cplx lambda) {
    std::vector<cplx> off(p.a0_off.begin(), p.a0_off.end());
    return TridiagonalLU(off, diagonal_of(p, lambda), off);
}

std::vector<cplx> apply(const GridPencil& p, cplx lambda, std::span<const cplx> v) {
    const int n = p.dim();
    require(static_cast<int>(v.size()) == n, "apply: size mismatch");
    const auto d = diagonal_of(p, lambda);
    std::vector<cplx> out(n);
    for (int i = 0; i < n; ++i) {
        cplx s = d[i] * v[i];
        if (i > 0) s += p.a0_off[i - 1] * v[i - 1];
        if (i + 1 < n) s += p.a0_off[i] * v[i + 1];
        out[i] = s;
    }
    return out;
}

double norm_inf(const GridPencil& p, cplx lambda) {
    const auto d = diagonal_of(p, lambda);
    double best = 0.0;
    for (int i = 0; i < p.dim(); ++i) {
        double row = std::abs(d[i]);
        if (i > 0) row += std::abs(p.a0_off[i - 1]);
        if (i + 1 < p.dim()) row += std::abs(p.a0_off[i]);
        best = std::max(best, row);
    }
    return best;
}

SingularValueEstimate smallest_singular_value(const GridPencil& p, cplx lambda, int max_iterations, double rel_tol) {
    require_off_axis(lambda, "smallest_singular_value");
    SingularValueEstimate est;
    const TridiagonalLU lu = factor(p, lambda);
    if (lu.singular()) {
        est.exact_singular = true;
        est.converged = true;
        return est;
    }
    const int n = p.dim();
    std::vector<cplx> v = start_vector(n);
    scale(v, 1.0 / norm2(v));

    double previous = 0.0;
    for (int it = 1; it <= max_iterations; ++it) {
        // w = T^{-H} v = conj(T^{-1} conj(v)), then v <- T^{-1} w.
        for (auto& z : v) z = std::conj(z);
        lu.solve(v);
        for (auto& z : v) z = std::conj(z);
        const double wnorm = norm2(v);
        lu.solve(v);
        scale(v, 1.0 / norm2(v));
        est.value = 1.0 / wnorm;
        est.iterations = it;
        if (it > 1 && std::abs(est.value - previous) <= rel_tol * est.value) {
            est.converged = true;
            break;
        }
        previous = est.value;
    }
    return est;
}

void ContourSpec::validate() const {
    require(re_max > re_min && im_max > im_min, "contour: rectangle must have positive extent");
    require(quad_points >= 4, "contour: need at least 4 panels per side");
    const bool clear = im_min > 0.0 || im_max < 0.0 || re_min > 0.0;
    require(clear, "contour: rectangle must not intersect (-inf, 0]");
}

cplx trace_log_derivative(const GridPencil& p, cplx lambda, TraceMethod method) {
    const int n = p.dim();
    if (method == TraceMethod::determinant_recurrence) {
        // Ratios r_i = D_i / D_{i-1} of leading principal minors and their
        // lambda-derivatives; d/dlambda log det T = sum r_i' / r_i.
        const double guard = 1e-8 * norm_inf(p, lambda);
        const auto d = diagonal_of(p, lambda);
        cplx r = d[0];
        cplx dr = p.a1_diag[0] + 2.0 * lambda;
        cplx sum{};
        bool stable = std::abs(r) > guard;
        for (int i = 1; i < n && stable; ++i) {
            sum += dr / r;
            const double e2 = p.a0_off[i - 1] * p.a0_off[i - 1];
            const cplx next = d[i] - e2 / r;
            dr = p.a1_diag[i] + 2.0 * lambda + e2 * dr / (r * r);
            r = next;
            stable = std::abs(r) > guard;
        }
        if (stable) return sum + dr / r;
    }
    const TridiagonalLU lu = factor(p, lambda);
    if (lu.singular())
        throw NumericalError("contour_hits_spectrum", "T(lambda) is singular at a quadrature node");
    return trace_by_columns(p, lambda, lu);
}

ContourCount count_eigs_contour(const GridPencil& p, const ContourSpec& c, TraceMethod method) {
    c.validate();
    const std::array<cplx, 5> corners = {cplx{c.re_min, c.im_min}, cplx{c.re_max, c.im_min},
                                         cplx{c.re_max, c.im_max}, cplx{c.re_min, c.im_max},
                                         cplx{c.re_min, c.im_min}};
    int panels = c.quad_points;
    ContourCount result;
    for (int attempt = 0; attempt < 3; ++attempt, panels *= 2) {
        // Composite trapezoid on each side; sides are summed in a fixed order.
        cplx integral{};
        for (int side = 0; side < 4; ++side) {
            const cplx a = corners[side];
            const cplx step = (corners[side + 1] - a) / static_cast<double>(panels);
            cplx side_sum{};
            for (int j = 0; j <= panels; ++j) {
                const double w = (j == 0 || j == panels) ? 0.5 : 1.0;
                side_sum += w * trace_log_derivative(p, a + static_cast<double>(j) * step, method);
            }
            integral += side_sum * step;
        }
        result.raw = integral / cplx{0.0, 2.0 * std::numbers::pi};
        result.quad_points = panels;
        const double nearest = std::round(result.raw.real());
        if (std::abs(result.raw - cplx{nearest}) <= 0.2) {
            result.count = static_cast<int>(nearest);
            return result;
        }
    }
    throw NumericalError("contour_inaccurate",
                         "contour count " + std::to_string(result.raw.real()) + "+" +
                             std::to_string(result.raw.imag()) + "i is not within 0.2 of an integer after " +
                             std::to_string(result.quad_points) +
                             " panels per side; move the contour or add quadrature points");
}

const char* to_string(RefineResult::Status status) noexcept {
    switch (status) {
    case RefineResult::Status::converged: return "converged";
    case RefineResult::Status::out_of_basin: return "out_of_basin";
    case RefineResult::Status::not_converged: return "not_converged";
    }
    return "unknown";
}

RefineResult refine_eig(const GridPencil& p, cplx lambda0, double tol, const RefineOptions& options) {
    require(tol > 0.0, "refine_eig: tol must be positive");
    require_off_axis(lambda0, "refine_eig");
    const double radius = options.basin_radius > 0.0 ? options.basin_radius : 0.5 * std::max(1.0, std::abs(lambda0));
    const int n = p.dim();

    RefineResult out;
    out.lambda = lambda0;
    std::vector<cplx> v = start_vector(n);
    for (int it = 1; it <= options.max_iterations; ++it) {
        out.iterations = it;
        const TridiagonalLU lu = factor(p, out.lambda);
        if (lu.singular()) {
            out.residual = 0.0;
            out.status = RefineResult::Status::converged;
            break;
        }
        lu.solve(v);
        scale(v, 1.0 / norm2(v));

        // v^T T(lambda) v = a lambda^2 + b lambda + c.
        cplx a{}, b{}, cc{};
        for (int i = 0; i < n; ++i) {
            const cplx vi2 = v[i] * v[i];
            a += vi2;
            b += p.a1_diag[i] * vi2;
            cc += p.a0_diag[i] * vi2;
            if (i + 1 < n) cc += 2.0 * p.a0_off[i] * v[i] * v[i + 1];
        }
        const cplx disc = std::sqrt(b * b - 4.0 * a * cc);
        const cplx r1 = (-b + disc) / (2.0 * a);
        const cplx r2 = (-b - disc) / (2.0 * a);
        const double d1 = std::abs(r1 - out.lambda);
        const double d2 = std::abs(r2 - out.lambda);
        cplx next = d1 < d2 ? r1 : r2;
        if (d1 == d2) next = r1.imag() > r2.imag() ? r1 : r2;
        out.lambda = next;

        const auto tv = apply(p, out.lambda, v);
        out.residual = norm2(tv);
        if (std::abs(out.lambda - lambda0) > radius) {
            out.status = RefineResult::Status::out_of_basin;
            break;
        }
        if (out.residual < tol) {
            out.status = RefineResult::Status::converged;
            break;
        }
    }
    out.eigenvector = std::move(v);
    return out;
}

} // namespace dampspec

namespace dampspec {

GridPencil grid_for_branch(const EigenvalueBranch& branch) {
    PencilParams params;
    double shift = 0.0;
    if (const auto* line = std::get_if<PencilParams>(&branch.params)) {
        params = *line;
    } else {
        const auto& strip = std::get<StripParams>(branch.params);
        params = PencilParams{1, strip.a0, strip.q0};
        shift = std::pow(branch.j * std::numbers::pi / (2.0 * strip.ell), 2);
    }
    const cplx lambda = branch.lambda;
    const double decay = std::max(std::sqrt(2.0 * lambda).real(), 1e-3);
    const double np1 = params.n + 1.0;
    const double L = std::clamp(std::pow(30.0 * np1 / decay, 1.0 / np1), 6.0, 40.0);
    // Largest |local wave number|^2 on the box: |2 lambda a(L) + lambda^2 + q|.
    const double a_edge = std::pow(L, 2 * params.n) + params.a0;
    const double k_edge = std::sqrt(std::abs(2.0 * lambda * a_edge + lambda * lambda + params.q0 + shift));
    const double h = std::min(0.005, 0.3 / std::max(k_edge, 1.0));
    const int N = static_cast<int>(std::min(40000.0, std::ceil(2.0 * L / h)));
    return shifted(assemble(params, L, N), shift);
}

BranchCheck verify_branch(const EigenvalueBranch& branch, double rel_tol) {
    BranchCheck check;
    const GridPencil p = grid_for_branch(branch);
    check.grid = p.grid;
    const double tol = 1e-10 * norm_inf(p, branch.lambda);
    const RefineResult r = refine_eig(p, branch.lambda, tol);
    check.refined = r.lambda;
    check.status = r.status;
    check.distance = std::abs(r.lambda - branch.lambda);
    check.verified = r.status == RefineResult::Status::converged &&
                     check.distance <= rel_tol * std::max(1.0, std::abs(branch.lambda));
    return check;
}

} // namespace dampspec
