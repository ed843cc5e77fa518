#pragma once

#include <complex>
#include <span>
#include <vector>

namespace dampspec {

/// LU factorisation with partial pivoting of a complex tridiagonal matrix.
/// Row interchanges widen U to two super-diagonals; L stays unit
/// lower-bidiagonal. Same layout as LAPACK's ?gttrf.
class TridiagonalLU {
public:
    using value_type = std::complex<double>;

    TridiagonalLU() = default;
    /// `lower` and `upper` have size n-1, `diag` size n.
    TridiagonalLU(std::vector<value_type> lower, std::vector<value_type> diag, std::vector<value_type> upper);

    std::size_t size() const noexcept { return d_.size(); }
    /// True if some pivot of U is exactly zero.
    bool singular() const noexcept { return singular_; }
    /// Smallest |U_ii|.
    double min_pivot() const noexcept { return min_pivot_; }

    /// Overwrites `rhs` with A^{-1} rhs. Requires !singular().
    void solve(std::span<value_type> rhs) const;

private:
    std::vector<value_type> dl_, d_, du_, du2_;
    std::vector<unsigned char> swapped_;
    bool singular_ = false;
    double min_pivot_ = 0.0;
};

} // namespace dampspec
