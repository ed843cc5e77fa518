#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace dampspec {

/// Real symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal (`off.size() == diag.size() - 1`).
struct SymTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const noexcept { return diag.size(); }
};

/// Number of eigenvalues strictly below `t`, from the sign pattern of the
/// LDL^T pivots of (M - t I).
std::size_t sturm_count(const SymTridiagonal& m, double t);

/// Union of the Gershgorin intervals, as (lower, upper).
std::pair<double, double> gershgorin_bounds(const SymTridiagonal& m);

struct TridiagonalEigenvalues {
    std::vector<double> values;
    /// Number of eigenvalues the final bracket of each value enclosed. A
    /// value above 1 marks a (numerically) multiple eigenvalue; each member
    /// of the cluster is still reported separately.
    std::vector<std::size_t> multiplicity;

    bool has_degenerate() const noexcept;
};

/// The `count` smallest eigenvalues of `m` by Sturm-sequence bisection.
/// Each bracket is shrunk below 1e-12 * max(1, |t|). Throws NumericalError
/// naming the index that failed to converge within the iteration budget.
TridiagonalEigenvalues eig_tridiagonal_lowest(const SymTridiagonal& m, std::size_t count);

} // namespace dampspec
