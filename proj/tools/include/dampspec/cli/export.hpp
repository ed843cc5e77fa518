#pragma once

#include "dampspec/dispersion.hpp"
#include "dampspec/cli/run_config.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dampspec::cli {

using ordered_json = nlohmann::ordered_json;

struct ExportedEigenvalue {
    std::string series;
    std::optional<int> j;
    int branch_index = 0;
    cplx lambda{};
    double mu = 0.0;
    double residual = 0.0;
    bool verified = false;
    /// Present when the root went through pencil verification.
    std::optional<ordered_json> verification;
};

struct SpectrumExport {
    std::vector<ExportedEigenvalue> eigenvalues;
    double re_cut = -10.0;
    ordered_json metadata;

    /// Appends the branch and, for non-real roots, its conjugate.
    void add(const EigenvalueBranch& branch, bool verified, const std::string& series = {},
             std::optional<ordered_json> verification = std::nullopt);
};

/// %.17g, with nan/inf spelled as in most CSV readers.
std::string format_double(double value);

/// RFC 4180 field: quoted when it contains a comma, quote or line break.
std::string csv_field(const std::string& text);

/// Joins fields with commas and terminates the row with CRLF.
std::string csv_row(const std::vector<std::string>& fields);

/// generated_by, command, format and every parameter, in declaration order.
ordered_json metadata_for(const RunConfig& config);

std::string to_csv(const SpectrumExport& spectrum);
/// Two-point polyline (re_cut, 0) -> (0, 0).
std::string essential_segment_csv(const SpectrumExport& spectrum);
ordered_json to_json(const SpectrumExport& spectrum);

/// Serializes with two-space indentation and a trailing newline.
std::string dump(const ordered_json& document);

/// Writes `content` to a sibling temp file and renames it over `path`.
/// Parent directories are created. Failures raise IoError.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// `out.csv` -> `out.<suffix>.csv`
std::filesystem::path sidecar_path(const std::filesystem::path& path, const std::string& suffix);

} // namespace dampspec::cli
