#pragma once

#include "dampspec/dispersion.hpp"

#include <string>
#include <vector>

namespace dampspec {

struct ConvergenceRow {
    int n = 0;
    /// Oscillator index whose eigenvalue produced the matched branch.
    int oscillator_index = -1;
    double mu = 0.0;
    cplx lambda{};
    /// |lambda - target|; NaN when the branch was lost.
    double error = 0.0;
    /// Limit value the branch was matched against (member of a real pair, or
    /// the Im > 0 member of a complex pair).
    cplx target{};
    bool branch_lost = false;
};

/// Eigenvalue branch lambda_k(n, a0, q0) against its interval limit.
struct ConvergenceTable {
    int k = 1;
    double a0 = 0.0;
    double q0 = 0.0;
    std::vector<ConvergenceRow> rows;
    LimitEigenvalue limit;
};

/// For each n: oscillator eigenvalues mu_0..mu_k(n), their line
/// characteristic roots, and the physical root nearest lambda_k(infinity)
/// (ell = 1). A candidate is accepted only if it is closer to lambda_k than
/// to the neighbouring limit eigenvalues lambda_{k-1} and lambda_{k+1};
/// otherwise the row is marked branch_lost. Real-pair limits are matched by
/// distance to the nearer member of the pair.
ConvergenceTable lambda_branch(const std::vector<int>& n_list, int k, double a0, double q0, double tol = 1e-7);

struct ExactnessVerdict {
    bool passed = false;
    /// log(e_i / e_{i+1}) between consecutive usable rows.
    std::vector<double> rates;
    std::string report;
};

/// True iff each of the trailing `window` errors is below the first error
/// and the last error is the table minimum. Lost branches are skipped.
ExactnessVerdict verify_exactness(const ConvergenceTable& table, int window);

/// Same check on a bare list of errors.
ExactnessVerdict verify_exactness(const std::vector<double>& errors, int window);

} // namespace dampspec
