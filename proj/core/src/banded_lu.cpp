#include "dampspec/banded_lu.hpp"

#include "dampspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dampspec {

TridiagonalLU::TridiagonalLU(std::vector<value_type> lower, std::vector<value_type> diag,
                             std::vector<value_type> upper)
    : dl_(std::move(lower)), d_(std::move(diag)), du_(std::move(upper)) {
    const std::size_t n = d_.size();
    require(n >= 1, "TridiagonalLU: empty matrix");
    require(dl_.size() + 1 == n && du_.size() + 1 == n, "TridiagonalLU: band sizes must be n-1");
    du2_.assign(n >= 2 ? n - 2 : 0, value_type{});
    swapped_.assign(n, 0);

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d_[i]) >= std::abs(dl_[i])) {
            if (d_[i] != value_type{}) {
                const value_type fact = dl_[i] / d_[i];
                dl_[i] = fact;
                d_[i + 1] -= fact * du_[i];
            }
        } else {
            // Interchange rows i and i+1.
            const value_type fact = d_[i] / dl_[i];
            d_[i] = dl_[i];
            dl_[i] = fact;
            const value_type temp = du_[i];
            du_[i] = d_[i + 1];
            d_[i + 1] = temp - fact * d_[i + 1];
            if (i + 2 < n) {
                du2_[i] = du_[i + 1];
                du_[i + 1] = -fact * du_[i + 1];
            }
            swapped_[i] = 1;
        }
    }
    min_pivot_ = std::numeric_limits<double>::infinity();
    for (const auto& p : d_) min_pivot_ = std::min(min_pivot_, std::abs(p));
    singular_ = (min_pivot_ == 0.0);
}

void TridiagonalLU::solve(std::span<value_type> b) const {
    const std::size_t n = d_.size();
    require(b.size() == n, "TridiagonalLU::solve: size mismatch");
    if (singular_) throw NumericalError("exact_singular", "TridiagonalLU::solve: matrix is singular");

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (swapped_[i]) {
            const value_type temp = b[i];
            b[i] = b[i + 1];
            b[i + 1] = temp - dl_[i] * b[i];
        } else {
            b[i + 1] -= dl_[i] * b[i];
        }
    }
    b[n - 1] /= d_[n - 1];
    if (n >= 2) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
    for (std::size_t i = n >= 3 ? n - 3 : 0; n >= 3; --i) {
        b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
        if (i == 0) break;
    }
}

} // namespace dampspec
