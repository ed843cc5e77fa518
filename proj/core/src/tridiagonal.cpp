#include "dampspec/tridiagonal.hpp"

#include "dampspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dampspec {

namespace {

constexpr int kMaxBisectionSteps = 400;

double bracket_tolerance(double t) { return 1e-12 * std::max(1.0, std::abs(t)); }

} // namespace

bool TridiagonalEigenvalues::has_degenerate() const noexcept {
    return std::any_of(multiplicity.begin(), multiplicity.end(),
                       [](std::size_t m) { return m > 1; });
}

std::size_t sturm_count(const SymTridiagonal& m, double t) {
    const std::size_t n = m.size();
    if (n == 0) return 0;
    // A zero pivot is nudged to a tiny negative value; the count then
    // corresponds to t approached from above, which matches "strictly below".
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    std::size_t count = 0;
    double pivot = m.diag[0] - t;
    if (pivot == 0.0) pivot = -tiny;
    if (pivot < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        const double e = m.off[i - 1];
        pivot = m.diag[i] - t - (e * e) / pivot;
        if (pivot == 0.0) pivot = -tiny;
        if (pivot < 0.0) ++count;
    }
    return count;
}

std::pair<double, double> gershgorin_bounds(const SymTridiagonal& m) {
    const std::size_t n = m.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(m.off[i - 1]);
        if (i + 1 < n) radius += std::abs(m.off[i]);
        lo = std::min(lo, m.diag[i] - radius);
        hi = std::max(hi, m.diag[i] + radius);
    }
    return {lo, hi};
}

TridiagonalEigenvalues eig_tridiagonal_lowest(const SymTridiagonal& m, std::size_t count) {
    const std::size_t n = m.size();
    require(n > 0, "eig_tridiagonal_lowest: empty matrix");
    require(m.off.size() + 1 == n, "eig_tridiagonal_lowest: off-diagonal length must be size-1");
    require(count >= 1 && count <= n, "eig_tridiagonal_lowest: count must lie in [1, dimension]");

    auto [glo, ghi] = gershgorin_bounds(m);
    // Widen slightly so the Gershgorin endpoints themselves are strictly enclosed.
    const double pad = 1e-12 * std::max({1.0, std::abs(glo), std::abs(ghi)});
    glo -= pad;
    ghi += pad;

    TridiagonalEigenvalues out;
    out.values.reserve(count);
    out.multiplicity.reserve(count);

    double lower_hint = glo;
    for (std::size_t k = 0; k < count; ++k) {
        // Invariant: sturm_count(lo) <= k < sturm_count(hi).
        double lo = lower_hint;
        double hi = ghi;
        int steps = 0;
        while (hi - lo > bracket_tolerance(0.5 * (lo + hi))) {
            if (++steps > kMaxBisectionSteps) {
                throw NumericalError("bisection_not_converged",
                                     "Sturm bisection did not converge for eigenvalue index " +
                                         std::to_string(k));
            }
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break; // bracket at floating-point resolution
            if (sturm_count(m, mid) > k) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.values.push_back(0.5 * (lo + hi));
        out.multiplicity.push_back(sturm_count(m, hi) - sturm_count(m, lo));
        lower_hint = lo;
    }
    return out;
}

} // namespace dampspec
