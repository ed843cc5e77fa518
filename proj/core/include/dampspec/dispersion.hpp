#pragma once

#include "dampspec/polynomial.hpp"

#include <array>
#include <variant>
#include <vector>

namespace dampspec {

/// Damping a(x) = x^{2n} + a0 and constant potential q0 on the real line.
struct PencilParams {
    int n = 1;
    double a0 = 0.0;
    double q0 = 0.0;

    void validate() const;
};

/// Strip (-inf, inf) x (-ell, ell) with damping x^2 + a0 and potential q0.
struct StripParams {
    double ell = 1.0;
    double a0 = 0.0;
    double q0 = 0.0;

    void validate() const;
};

/// One non-real eigenvalue (the Im > 0 member of a conjugate pair).
struct EigenvalueBranch {
    int k = 0;
    /// Transverse Dirichlet index for the strip; 0 on the line.
    int j = 0;
    cplx lambda{};
    std::variant<PencilParams, StripParams> params;
    /// Oscillator eigenvalue the branch was computed from.
    double mu = 0.0;
    /// Normalised polynomial residual of lambda.
    double residual = 0.0;
    bool cluster = false;
    /// Set once the direct grid pencil has confirmed the root.
    bool verified = false;
};

/// (lambda^2 + 2 a0 lambda + q0)^{n+1} - 2 lambda (-mu)^{n+1}, degree 2(n+1).
/// Throws NumericalError("coefficient_overflow") if the expansion overflows.
ComplexPolynomial line_char_poly(const PencilParams& params, double mu);

/// [lambda^2 + (j pi / (2 ell))^2 + 2 a0 lambda + q0]^2 - 2 lambda (2k+1)^2.
ComplexPolynomial strip_char_poly(const StripParams& params, int j, int k);

/// Keeps roots with Im > 0 and Re <= 0 that also satisfy the enclosure
/// Re <= -a0 and |lambda|^2 >= q0. Results are ordered by Im ascending.
/// Roots whose imaginary part is below 1e-10 max(1,|lambda|) are treated as
/// real and dropped.
std::vector<EigenvalueBranch> physical_roots(const RootSet& roots, const PencilParams& params);
std::vector<EigenvalueBranch> physical_roots(const RootSet& roots, const StripParams& params);

/// Leading-order asymptotic seed
/// 2^{1/(2n+1)} e^{i pi (n+1)/(2n+1)} mu^{(n+1)/(2n+1)} - 2(n+1)/(2n+1) a0.
cplx asymptotic_lambda(int n, double a0, double mu);

/// Eigenvalue of -d^2/dx^2 + q0 + 2 lambda a0 + lambda^2 on (-ell, ell) with
/// Dirichlet ends, for mode k >= 1.
struct LimitEigenvalue {
    enum class Kind { complex_pair, real_pair };
    Kind kind = Kind::complex_pair;
    /// complex_pair: values[0] is the Im > 0 member, values[1] its conjugate.
    /// real_pair: the two real roots -a0 -+ sqrt(a0^2 - mu_k - q0), ascending;
    /// equal when the discriminant vanishes.
    std::array<cplx, 2> values{};
    double mu = 0.0;

    bool is_real_pair() const noexcept { return kind == Kind::real_pair; }
};

LimitEigenvalue limit_lambda(int k, double a0, double q0, double ell = 1.0);

/// Polynomial value and its scale at a branch, for back-substitution checks.
double line_back_substitution(const PencilParams& params, double mu, cplx lambda, double* scale = nullptr);

/// Convenience: roots_all + physical_roots for the line relation at a given mu.
std::vector<EigenvalueBranch> line_branches(const PencilParams& params, double mu, int k);

/// Convenience: roots_all + physical_roots for the strip relation.
std::vector<EigenvalueBranch> strip_branches(const StripParams& params, int j, int k);

} // namespace dampspec
