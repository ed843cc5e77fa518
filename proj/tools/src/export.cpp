#include "dampspec/cli/export.hpp"

#include "dampspec/error.hpp"
#include "dampspec/version.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

namespace dampspec::cli {

void SpectrumExport::add(const EigenvalueBranch& branch, bool verified, const std::string& series,
                         std::optional<ordered_json> verification) {
    ExportedEigenvalue e;
    e.series = series;
    if (std::holds_alternative<StripParams>(branch.params)) e.j = branch.j;
    e.branch_index = branch.k;
    e.lambda = branch.lambda;
    e.mu = branch.mu;
    e.residual = branch.residual;
    e.verified = verified;
    e.verification = std::move(verification);
    eigenvalues.push_back(e);
    if (branch.lambda.imag() != 0.0) {
        e.lambda = std::conj(branch.lambda);
        eigenvalues.push_back(std::move(e));
    }
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    return out + "\r\n";
}

ordered_json metadata_for(const RunConfig& config) {
    ordered_json meta;
    meta["generated_by"] = kGeneratedBy;
    meta["command"] = to_string(config.command);
    meta["format"] = to_string(config.format);
    ordered_json params = ordered_json::object();
    for (const auto& spec : parameter_specs(config.command)) {
        const auto it = config.params.find(spec.key);
        if (it == config.params.end()) {
            params[spec.key] = nullptr;
            continue;
        }
        std::visit([&](const auto& v) { params[spec.key] = v; }, it->second);
    }
    meta["parameters"] = std::move(params);
    return meta;
}

std::string to_csv(const SpectrumExport& spectrum) {
    bool series = false, strip = false;
    for (const auto& e : spectrum.eigenvalues) {
        series = series || !e.series.empty();
        strip = strip || e.j.has_value();
    }
    std::vector<std::string> header;
    if (series) header.emplace_back("series");
    if (strip) header.emplace_back("j");
    for (const char* name : {"branch_index", "re_lambda", "im_lambda", "mu", "residual", "verified"}) header.emplace_back(name);
    std::string out = csv_row(header);
    for (const auto& e : spectrum.eigenvalues) {
        std::vector<std::string> row;
        if (series) row.push_back(e.series);
        if (strip) row.push_back(e.j ? std::to_string(*e.j) : "");
        row.push_back(std::to_string(e.branch_index));
        row.push_back(format_double(e.lambda.real()));
        row.push_back(format_double(e.lambda.imag()));
        row.push_back(format_double(e.mu));
        row.push_back(format_double(e.residual));
        row.emplace_back(e.verified ? "true" : "false");
        out += csv_row(row);
    }
    return out;
}

std::string essential_segment_csv(const SpectrumExport& spectrum) {
    std::string out = csv_row({"re", "im"});
    out += csv_row({format_double(spectrum.re_cut), format_double(0.0)});
    out += csv_row({format_double(0.0), format_double(0.0)});
    return out;
}

ordered_json to_json(const SpectrumExport& spectrum) {
    ordered_json doc;
    doc["metadata"] = spectrum.metadata;
    ordered_json list = ordered_json::array();
    for (const auto& e : spectrum.eigenvalues) {
        ordered_json item;
        if (!e.series.empty()) item["series"] = e.series;
        if (e.j) item["j"] = *e.j;
        item["branch_index"] = e.branch_index;
        item["re_lambda"] = e.lambda.real();
        item["im_lambda"] = e.lambda.imag();
        item["mu"] = e.mu;
        item["residual"] = e.residual;
        item["verified"] = e.verified;
        if (e.verification) item["verification"] = *e.verification;
        list.push_back(std::move(item));
    }
    doc["eigenvalues"] = std::move(list);
    doc["essential_segment"] = {{"re_cut", spectrum.re_cut},
                                {"points", ordered_json::array({ordered_json::array({spectrum.re_cut, 0.0}),
                                                                ordered_json::array({0.0, 0.0})})}};
    return doc;
}

std::string dump(const ordered_json& document) { return document.dump(2) + "\n"; }

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            fs::remove(tmp, ec);
            throw IoError("write to " + tmp.string() + " failed");
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(tmp, ignored);
        throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

std::filesystem::path sidecar_path(const std::filesystem::path& path, const std::string& suffix) {
    std::filesystem::path out = path;
    const std::string ext = path.extension().string();
    out.replace_extension();
    out += "." + suffix + ext;
    return out;
}

} // namespace dampspec::cli
