#include "dampspec/cli/app.hpp"
#include "dampspec/cli/export.hpp"

#include "dampspec/convergence.hpp"
#include "dampspec/dispersion.hpp"
#include "dampspec/oscillator.hpp"
#include "dampspec/pencil.hpp"
#include "dampspec/quasimode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace dampspec::cli {

namespace {

std::string complex_text(cplx z) {
    std::string out = format_double(z.real());
    const std::string im = format_double(z.imag());
    out += im.front() == '-' ? im : "+" + im;
    return out + "i";
}

std::string short_double(double v) {
    std::ostringstream ss;
    ss.precision(3);
    ss << std::scientific << v;
    return ss.str();
}

ordered_json grid_json(const GridDescriptor& g) {
    return {{"x_left", g.x_left}, {"x_right", g.x_right()}, {"h", g.h}, {"N", g.N}};
}

std::vector<double> oscillator_levels(int n, int k_max, double tol) {
    const SpectrumReal s = anharmonic_eigenvalues(n, k_max, tol);
    if (!s.converged) {
        throw NumericalError("oscillator_not_converged",
                             "oscillator eigenvalues for n = " + std::to_string(n) + " did not reach tol " +
                                 short_double(tol) + " on the grid ladder");
    }
    return s.values;
}

void add_branch(SpectrumExport& spectrum, RunResult& result, const EigenvalueBranch& b, bool verify,
                const std::string& series) {
    bool verified = false;
    std::optional<ordered_json> detail;
    if (verify) {
        const BranchCheck check = verify_branch(b);
        verified = check.verified;
        detail = ordered_json{{"refined_re", check.refined.real()},
                              {"refined_im", check.refined.imag()},
                              {"distance", check.distance},
                              {"status", to_string(check.status)},
                              {"grid", grid_json(check.grid)}};
    }
    spectrum.add(b, verified, series, std::move(detail));

    std::string line;
    if (!series.empty()) line += "series=" + series + " ";
    if (std::holds_alternative<StripParams>(b.params)) line += "j=" + std::to_string(b.j) + " ";
    line += "k=" + std::to_string(b.k) + " lambda=" + complex_text(b.lambda) + " residual=" + short_double(b.residual);
    if (verify) line += std::string(" verified=") + (verified ? "true" : "false");
    result.summary.push_back(line);
}

void emit_spectrum(const RunConfig& c, const SpectrumExport& spectrum, RunResult& result) {
    if (c.format == OutputFormat::json) {
        result.files.push_back({c.output, dump(to_json(spectrum))});
    } else {
        result.files.push_back({c.output, to_csv(spectrum)});
        result.files.push_back({sidecar_path(c.output, "essential"), essential_segment_csv(spectrum)});
    }
}

RunResult spectrum_line(const RunConfig& c) {
    RunResult result;
    const PencilParams params{c.integer("n"), c.real("a0"), c.real("q0")};
    const int k_max = c.integer("k-max");
    std::vector<double> mu(k_max + 1);
    if (c.text("mu-source") == "exact") {
        for (int k = 0; k <= k_max; ++k) mu[k] = 2.0 * k + 1.0;
    } else {
        mu = oscillator_levels(params.n, k_max, c.real("tol"));
    }
    SpectrumExport spectrum;
    spectrum.re_cut = c.real("re-cut");
    spectrum.metadata = metadata_for(c);
    for (int k = 0; k <= k_max; ++k)
        for (const auto& b : line_branches(params, mu[k], k)) add_branch(spectrum, result, b, c.flag("verify"), {});
    emit_spectrum(c, spectrum, result);
    return result;
}

RunResult spectrum_strip(const RunConfig& c) {
    RunResult result;
    const StripParams params{c.real("ell"), c.real("a0"), c.real("q0")};
    SpectrumExport spectrum;
    spectrum.re_cut = c.real("re-cut");
    spectrum.metadata = metadata_for(c);
    for (int j = 1; j <= c.integer("j-max"); ++j)
        for (int k = 0; k <= c.integer("k-max"); ++k)
            for (const auto& b : strip_branches(params, j, k)) add_branch(spectrum, result, b, c.flag("verify"), {});
    emit_spectrum(c, spectrum, result);
    return result;
}

RunResult figure(const RunConfig& c) {
    RunResult result;
    SpectrumExport spectrum;
    spectrum.re_cut = c.real("re-cut");
    spectrum.metadata = metadata_for(c);
    const int k_max = c.integer("k-max");
    const bool verify = c.flag("verify");
    if (c.text("which") == "fig-x2") {
        spectrum.metadata["fixed"] = {{"n", 1}, {"q0", 0.0}, {"a0", {0.0, 3.0}}};
        const std::vector<double> mu = oscillator_levels(1, k_max, 1e-9);
        for (double a0 : {0.0, 3.0}) {
            const std::string series = a0 == 0.0 ? "a0=0" : "a0=3";
            for (int k = 0; k <= k_max; ++k)
                for (const auto& b : line_branches(PencilParams{1, a0, 0.0}, mu[k], k))
                    add_branch(spectrum, result, b, verify, series);
        }
    } else {
        spectrum.metadata["fixed"] = {{"a0", 1.0}, {"q0", 0.0}};
        const StripParams params{c.real("ell"), 1.0, 0.0};
        for (int k = 0; k <= k_max; ++k)
            for (int j = 1; j <= c.integer("j-max"); ++j)
                for (const auto& b : strip_branches(params, j, k))
                    add_branch(spectrum, result, b, verify, "k=" + std::to_string(k));
    }
    emit_spectrum(c, spectrum, result);
    return result;
}

RunResult oscillator(const RunConfig& c) {
    RunResult result;
    const int k_max = c.integer("k-max");
    const bool box = c.has("ell");
    SpectrumReal s;
    if (box) {
        s = dirichlet_interval_eigenvalues(c.real("ell"), k_max);
    } else {
        s = anharmonic_eigenvalues(c.integer("n"), k_max, c.real("tol"));
        if (!s.converged) {
            throw NumericalError("oscillator_not_converged",
                                 "grid ladder exhausted before reaching tol " + short_double(c.real("tol")));
        }
    }
    const int n = c.integer("n");
    ordered_json doc;
    doc["metadata"] = metadata_for(c);
    doc["converged"] = s.converged;
    if (!box) {
        doc["grid"] = {{"L", s.spec.L}, {"N", s.spec.N}, {"h", s.spec.h()}};
        doc["sigma_2n"] = sigma_2n(n);
    }
    ordered_json levels = ordered_json::array();
    std::string csv = box ? csv_row({"k", "mu", "error_bound"}) : csv_row({"k", "mu", "error_bound", "weyl"});
    for (int k = 0; k <= k_max; ++k) {
        ordered_json item{{"k", k}, {"mu", s.values[k]}, {"error_bound", s.error_bounds[k]}};
        std::vector<std::string> row{std::to_string(k), format_double(s.values[k]), format_double(s.error_bounds[k])};
        if (!box) {
            item["weyl"] = weyl_mu(n, k);
            row.push_back(format_double(weyl_mu(n, k)));
        }
        levels.push_back(std::move(item));
        csv += csv_row(row);
        result.summary.push_back("k=" + std::to_string(k) + " mu=" + format_double(s.values[k]) +
                                 " error_bound=" + short_double(s.error_bounds[k]));
    }
    doc["eigenvalues"] = std::move(levels);
    result.files.push_back({c.output, c.format == OutputFormat::json ? dump(doc) : csv});
    return result;
}

RunResult converge(const RunConfig& c) {
    RunResult result;
    const ConvergenceTable table = lambda_branch(c.integers("n-list"), c.integer("k"), c.real("a0"), c.real("q0"),
                                                 c.real("tol"));
    const ExactnessVerdict verdict = verify_exactness(table, c.integer("window"));
    const bool on_ray = table.a0 == 0.0 && table.q0 == 0.0;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    ordered_json doc;
    doc["metadata"] = metadata_for(c);
    ordered_json values = ordered_json::array();
    for (cplx v : table.limit.values) values.push_back({v.real(), v.imag()});
    doc["limit"] = {{"kind", table.limit.is_real_pair() ? "real_pair" : "complex_pair"},
                    {"mu", table.limit.mu},
                    {"values", std::move(values)}};
    ordered_json rows = ordered_json::array();
    std::string csv = csv_row({"n", "oscillator_index", "mu", "re_lambda", "im_lambda", "error", "branch_lost",
                               "angular_gap", "predicted_gap"});
    for (const auto& r : table.rows) {
        const double gap = r.branch_lost ? nan : std::arg(r.lambda) - std::numbers::pi / 2;
        const double predicted = on_ray ? std::numbers::pi / (2.0 * (2 * r.n + 1)) : nan;
        ordered_json item{{"n", r.n},
                          {"oscillator_index", r.oscillator_index},
                          {"mu", r.mu},
                          {"re_lambda", r.lambda.real()},
                          {"im_lambda", r.lambda.imag()},
                          {"error", r.error},
                          {"branch_lost", r.branch_lost},
                          {"angular_gap", gap},
                          {"predicted_gap", predicted}};
        if (r.branch_lost) {
            for (const char* key : {"re_lambda", "im_lambda", "error", "angular_gap"}) item[key] = nullptr;
        }
        if (!on_ray) item["predicted_gap"] = nullptr;
        rows.push_back(std::move(item));
        csv += csv_row({std::to_string(r.n), std::to_string(r.oscillator_index), format_double(r.mu),
                        format_double(r.branch_lost ? nan : r.lambda.real()),
                        format_double(r.branch_lost ? nan : r.lambda.imag()), format_double(r.error),
                        r.branch_lost ? "true" : "false", format_double(gap), format_double(predicted)});
        result.summary.push_back("n=" + std::to_string(r.n) +
                                 (r.branch_lost ? std::string(" branch lost")
                                                : " lambda=" + complex_text(r.lambda) + " error=" + short_double(r.error)));
    }
    doc["rows"] = std::move(rows);
    doc["verdict"] = {{"passed", verdict.passed}, {"rates", verdict.rates}, {"report", verdict.report}};
    result.summary.push_back(std::string("verdict=") + (verdict.passed ? "pass" : "fail") + " " + verdict.report);
    result.files.push_back({c.output, c.format == OutputFormat::json ? dump(doc) : csv});
    return result;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

RunResult essential(const RunConfig& c) {
    RunResult result;
    const std::string& damping = c.text("damping");
    const int n = std::stoi(damping.substr(1)) / 2;
    const Coefficient a = Coefficient::monomial_damping(n, c.real("a0"));
    const Coefficient q = Coefficient::constant(c.real("q0"));
    const double lambda = c.real("lambda");
    QuasimodeOptions options;
    options.points_per_wavelength = c.real("points-per-wavelength");
    const double nan = std::numeric_limits<double>::quiet_NaN();

    ordered_json doc;
    doc["metadata"] = metadata_for(c);
    std::string csv = csv_row({"sequence", "m", "rho", "support_left", "support_right", "points", "residual_ratio",
                               "analytic_ratio"});
    ordered_json probes = ordered_json::array();
    std::vector<double> ratios;
    for (int m : c.integers("m")) {
        const EssentialProbe probe = make_probe(lambda, a, q, m);
        const Quasimode qm = build_quasimode(probe, options);
        const double analytic = analytic_residual_ratio(probe);
        ratios.push_back(qm.residual_ratio);
        probes.push_back({{"m", m},
                          {"rho", qm.rho},
                          {"support_left", qm.support_left},
                          {"support_right", qm.support_right},
                          {"points", qm.values.size()},
                          {"residual_ratio", qm.residual_ratio},
                          {"analytic_ratio", analytic}});
        csv += csv_row({"quasimode", std::to_string(m), format_double(qm.rho), format_double(qm.support_left),
                        format_double(qm.support_right), std::to_string(qm.values.size()),
                        format_double(qm.residual_ratio), format_double(analytic)});
        result.summary.push_back("m=" + std::to_string(m) + " rho=" + short_double(qm.rho) + " residual_ratio=" +
                                 format_double(qm.residual_ratio));
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < ratios.size(); ++i) decreasing = decreasing && ratios[i] < ratios[i - 1];
    doc["lambda"] = lambda;
    doc["probes"] = std::move(probes);
    doc["strictly_decreasing"] = decreasing;

    if (c.flag("cone")) {
        ordered_json cone = ordered_json::array();
        std::vector<double> ms, cone_ratios;
        for (int m : c.integers("m")) {
            std::optional<double> scale;
            if (q.is_zero()) scale = 1.0 / m;
            const Quasimode qm = cone_sequence(q, m, scale, options);
            ms.push_back(m);
            cone_ratios.push_back(qm.residual_ratio);
            cone.push_back({{"m", m},
                            {"rho", qm.rho},
                            {"support_left", qm.support_left},
                            {"support_right", qm.support_right},
                            {"points", qm.values.size()},
                            {"residual_ratio", qm.residual_ratio}});
            csv += csv_row({"cone", std::to_string(m), format_double(qm.rho), format_double(qm.support_left),
                            format_double(qm.support_right), std::to_string(qm.values.size()),
                            format_double(qm.residual_ratio), format_double(nan)});
            result.summary.push_back("cone m=" + std::to_string(m) + " residual_ratio=" + format_double(qm.residual_ratio));
        }
        doc["cone"] = std::move(cone);
        doc["cone_slope"] = ms.size() >= 2 ? ordered_json(loglog_slope(ms, cone_ratios)) : ordered_json(nullptr);
    }
    result.files.push_back({c.output, c.format == OutputFormat::json ? dump(doc) : csv});
    return result;
}

RunResult verify(const RunConfig& c) {
    RunResult result;
    const PencilParams params{c.integer("n"), c.real("a0"), c.real("q0")};
    const int k_max = c.integer("k-max");
    const GridPencil p = assemble(params, c.real("L"), c.integer("N"));
    const std::vector<double> mu = oscillator_levels(params.n, k_max + 1, 1e-9);

    std::vector<EigenvalueBranch> inside, beyond;
    for (int k = 0; k <= k_max + 1; ++k)
        for (const auto& b : line_branches(params, mu[k], k)) (k <= k_max ? inside : beyond).push_back(b);
    if (inside.empty()) throw NumericalError("no_branches", "no physical roots for k <= k-max");

    ordered_json doc;
    doc["metadata"] = metadata_for(c);
    doc["grid"] = grid_json(p.grid);
    ordered_json points = ordered_json::array();
    std::string csv = csv_row({"branch_index", "re_lambda", "im_lambda", "scale", "sigma_min", "sigma_min_offset",
                               "refined_re", "refined_im", "refine_status", "verified"});
    const double offset = c.real("offset");
    for (const auto& b : inside) {
        const double scale = norm_inf(p, b.lambda);
        const SingularValueEstimate s = smallest_singular_value(p, b.lambda);
        const SingularValueEstimate s_off = smallest_singular_value(p, b.lambda + offset);
        const RefineResult r = refine_eig(p, b.lambda, 1e-10 * scale);
        const bool ok = r.status == RefineResult::Status::converged &&
                        std::abs(r.lambda - b.lambda) <= 1e-3 * std::max(1.0, std::abs(b.lambda));
        points.push_back({{"branch_index", b.k},
                          {"re_lambda", b.lambda.real()},
                          {"im_lambda", b.lambda.imag()},
                          {"scale", scale},
                          {"sigma_min", s.value},
                          {"sigma_min_offset", s_off.value},
                          {"refined_re", r.lambda.real()},
                          {"refined_im", r.lambda.imag()},
                          {"refine_status", to_string(r.status)},
                          {"verified", ok}});
        csv += csv_row({std::to_string(b.k), format_double(b.lambda.real()), format_double(b.lambda.imag()),
                        format_double(scale), format_double(s.value), format_double(s_off.value),
                        format_double(r.lambda.real()), format_double(r.lambda.imag()), to_string(r.status),
                        ok ? "true" : "false"});
        result.summary.push_back("k=" + std::to_string(b.k) + " lambda=" + complex_text(b.lambda) + " sigma_min/scale=" +
                                 short_double(s.value / scale) + " refine=" + to_string(r.status));
    }
    doc["points"] = std::move(points);

    ContourSpec box;
    box.quad_points = c.integer("quad-points");
    if (c.has("rect")) {
        const auto rect = c.reals("rect");
        box.re_min = rect[0];
        box.re_max = rect[1];
        box.im_min = rect[2];
        box.im_max = rect[3];
    } else {
        // Bounding box of the branches, padded by less than half the gap to
        // the next level so that level stays outside.
        double pad = std::numeric_limits<double>::infinity();
        double min_im = pad;
        box.re_min = box.im_min = pad;
        box.re_max = box.im_max = -pad;
        for (const auto& b : inside) {
            box.re_min = std::min(box.re_min, b.lambda.real());
            box.re_max = std::max(box.re_max, b.lambda.real());
            box.im_min = std::min(box.im_min, b.lambda.imag());
            box.im_max = std::max(box.im_max, b.lambda.imag());
            min_im = std::min(min_im, b.lambda.imag());
            for (const auto& o : beyond) pad = std::min(pad, 0.45 * std::abs(o.lambda - b.lambda));
        }
        pad = std::min({pad, 0.5 * min_im, 0.5});
        box.re_min -= pad;
        box.re_max += pad;
        box.im_min -= pad;
        box.im_max += pad;
    }
    box.validate();
    const ContourCount count = count_eigs_contour(p, box);
    int roots_inside = 0;
    for (const auto* set : {&inside, &beyond})
        for (const auto& b : *set)
            if (b.lambda.real() > box.re_min && b.lambda.real() < box.re_max && b.lambda.imag() > box.im_min &&
                b.lambda.imag() < box.im_max)
                ++roots_inside;
    doc["contour"] = {{"re_min", box.re_min},
                      {"re_max", box.re_max},
                      {"im_min", box.im_min},
                      {"im_max", box.im_max},
                      {"quad_points", count.quad_points},
                      {"count", count.count},
                      {"raw_re", count.raw.real()},
                      {"raw_im", count.raw.imag()},
                      {"dispersion_roots_inside", roots_inside}};
    result.summary.push_back("contour count=" + std::to_string(count.count) +
                             " dispersion_roots_inside=" + std::to_string(roots_inside));
    if (c.format == OutputFormat::json) {
        result.files.push_back({c.output, dump(doc)});
    } else {
        result.files.push_back({c.output, csv});
        std::string contour = csv_row({"re_min", "re_max", "im_min", "im_max", "quad_points", "count", "raw_re",
                                       "raw_im", "dispersion_roots_inside"});
        contour += csv_row({format_double(box.re_min), format_double(box.re_max), format_double(box.im_min),
                            format_double(box.im_max), std::to_string(count.quad_points), std::to_string(count.count),
                            format_double(count.raw.real()), format_double(count.raw.imag()),
                            std::to_string(roots_inside)});
        result.files.push_back({sidecar_path(c.output, "contour"), contour});
    }
    return result;
}

} // namespace

RunResult execute(const RunConfig& config) {
    validate(config);
    switch (config.command) {
    case Command::spectrum_line: return spectrum_line(config);
    case Command::spectrum_strip: return spectrum_strip(config);
    case Command::oscillator: return oscillator(config);
    case Command::converge: return converge(config);
    case Command::essential: return essential(config);
    case Command::verify: return verify(config);
    case Command::figure: return figure(config);
    }
    throw ParameterError("unhandled command");
}

} // namespace dampspec::cli
