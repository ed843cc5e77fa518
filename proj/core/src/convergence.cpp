#include "dampspec/convergence.hpp"

#include "dampspec/error.hpp"
#include "dampspec/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dampspec {

namespace {

/// Distance from z to a limit eigenvalue; real pairs use the nearer member.
double distance_to(const LimitEigenvalue& limit, cplx z, cplx* member = nullptr) {
    if (!limit.is_real_pair()) {
        if (member) *member = limit.values[0];
        return std::abs(z - limit.values[0]);
    }
    const double d0 = std::abs(z - limit.values[0]);
    const double d1 = std::abs(z - limit.values[1]);
    if (member) *member = d0 <= d1 ? limit.values[0] : limit.values[1];
    return std::min(d0, d1);
}

} // namespace

ConvergenceTable lambda_branch(const std::vector<int>& n_list, int k, double a0, double q0, double tol) {
    require(k >= 1, "lambda_branch: k must be >= 1");
    require(!n_list.empty(), "lambda_branch: empty n list");
    require(std::is_sorted(n_list.begin(), n_list.end()) && n_list.front() >= 1,
            "lambda_branch: n list must be ascending and positive");
    require(a0 >= 0.0 && q0 >= 0.0, "lambda_branch: a0 and q0 must be non-negative");

    ConvergenceTable table;
    table.k = k;
    table.a0 = a0;
    table.q0 = q0;
    table.limit = limit_lambda(k, a0, q0, 1.0);
    std::vector<LimitEigenvalue> neighbours;
    if (k > 1) neighbours.push_back(limit_lambda(k - 1, a0, q0, 1.0));
    neighbours.push_back(limit_lambda(k + 1, a0, q0, 1.0));

    for (const int n : n_list) {
        ConvergenceRow row;
        row.n = n;
        const PencilParams params{n, a0, q0};
        // The interval mode k pairs with oscillator mode k-1; neighbours are
        // scanned as well since the matching is by proximity only.
        const SpectrumReal mu = anharmonic_eigenvalues(n, k, tol);
        double best = std::numeric_limits<double>::infinity();
        for (int j = 0; j <= k; ++j) {
            for (const auto& b : line_branches(params, mu.values[j], j)) {
                cplx member{};
                const double d = distance_to(table.limit, b.lambda, &member);
                if (d < best) {
                    best = d;
                    row.oscillator_index = j;
                    row.mu = mu.values[j];
                    row.lambda = b.lambda;
                    row.target = member;
                }
            }
        }
        bool accepted = std::isfinite(best);
        for (const auto& nb : neighbours)
            if (accepted && distance_to(nb, row.lambda) <= best) accepted = false;
        row.branch_lost = !accepted;
        row.error = accepted ? best : std::numeric_limits<double>::quiet_NaN();
        table.rows.push_back(row);
    }
    return table;
}

ExactnessVerdict verify_exactness(const std::vector<double>& all_errors, int window) {
    ExactnessVerdict v;
    std::vector<double> e;
    for (double x : all_errors)
        if (std::isfinite(x)) e.push_back(x);
    std::ostringstream os;
    if (window < 1 || static_cast<int>(e.size()) < window + 1) {
        os << "need at least " << window + 1 << " usable rows, have " << e.size();
        v.report = os.str();
        return v;
    }
    for (std::size_t i = 0; i + 1 < e.size(); ++i) v.rates.push_back(std::log(e[i] / e[i + 1]));
    bool trailing_below_first = true;
    for (std::size_t i = e.size() - window; i < e.size(); ++i) trailing_below_first &= e[i] < e.front();
    const bool last_is_min = e.back() <= *std::min_element(e.begin(), e.end());
    v.passed = trailing_below_first && last_is_min;
    os << "first error " << e.front() << ", last error " << e.back()
       << (trailing_below_first ? "; trailing errors below the first" : "; trailing errors NOT below the first")
       << (last_is_min ? "; last error is the minimum" : "; last error is NOT the minimum") << "; rates:";
    for (double r : v.rates) os << ' ' << r;
    v.report = os.str();
    return v;
}

ExactnessVerdict verify_exactness(const ConvergenceTable& table, int window) {
    std::vector<double> errors;
    for (const auto& r : table.rows) errors.push_back(r.error);
    return verify_exactness(errors, window);
}

} // namespace dampspec
