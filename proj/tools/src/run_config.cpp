#include "dampspec/cli/run_config.hpp"

#include "dampspec/dispersion.hpp"
#include "dampspec/error.hpp"
#include "dampspec/pencil.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace dampspec::cli {

namespace {

struct CommandName {
    Command command;
    const char* name;
};

constexpr CommandName kCommands[] = {
    {Command::spectrum_line, "spectrum-line"}, {Command::spectrum_strip, "spectrum-strip"},
    {Command::oscillator, "oscillator"},       {Command::converge, "converge"},
    {Command::essential, "essential"},         {Command::verify, "verify"},
    {Command::figure, "figure"},
};

std::vector<ParamSpec> line_specs() {
    return {
        {"n", ParamKind::integer, "1", "damping exponent: a(x) = x^(2n) + a0"},
        {"a0", ParamKind::real, "0", "constant part of the damping"},
        {"q0", ParamKind::real, "0", "constant potential"},
        {"k-max", ParamKind::integer, "10", "highest oscillator index"},
        {"mu-source", ParamKind::text, "numerical", "numerical | exact (exact uses 2k+1, n = 1 only)"},
        {"tol", ParamKind::real, "1e-9", "oscillator eigenvalue tolerance"},
        {"verify", ParamKind::flag, "false", "confirm each root on the discretized pencil"},
        {"re-cut", ParamKind::real, "-10", "left end of the exported essential segment"},
    };
}

std::vector<ParamSpec> strip_specs() {
    return {
        {"ell", ParamKind::real, "1", "strip half-width"},
        {"a0", ParamKind::real, "0", "constant part of the damping"},
        {"q0", ParamKind::real, "0", "constant potential"},
        {"j-max", ParamKind::integer, "20", "highest transverse index (from 1)"},
        {"k-max", ParamKind::integer, "4", "highest longitudinal index (from 0)"},
        {"verify", ParamKind::flag, "false", "confirm each root on the discretized pencil"},
        {"re-cut", ParamKind::real, "-10", "left end of the exported essential segment"},
    };
}

std::vector<ParamSpec> oscillator_specs() {
    return {
        {"n", ParamKind::integer, "1", "potential x^(2n)"},
        {"k-max", ParamKind::integer, "10", "highest eigenvalue index"},
        {"tol", ParamKind::real, "1e-8", "absolute tolerance"},
        {"ell", ParamKind::real, "", "Dirichlet box (-ell, ell) without potential instead"},
    };
}

std::vector<ParamSpec> converge_specs() {
    return {
        {"k", ParamKind::integer, "1", "branch index"},
        {"a0", ParamKind::real, "0", "constant part of the damping"},
        {"q0", ParamKind::real, "0", "constant potential"},
        {"n-list", ParamKind::integer_list, "1,2,3,4,6,8", "damping exponents"},
        {"tol", ParamKind::real, "1e-7", "oscillator eigenvalue tolerance"},
        {"window", ParamKind::integer, "3", "trailing rows checked for decrease"},
    };
}

std::vector<ParamSpec> essential_specs() {
    return {
        {"lambda", ParamKind::real, "-1", "negative real spectral parameter"},
        {"damping", ParamKind::text, "x2", "x2, x4, ... (even monomial)"},
        {"a0", ParamKind::real, "0", "constant added to the damping"},
        {"q0", ParamKind::real, "0", "constant potential"},
        {"m", ParamKind::integer_list, "10,20,40,80", "quasimode indices"},
        {"points-per-wavelength", ParamKind::real, "20", "grid resolution of the phase"},
        {"cone", ParamKind::flag, "false", "also build the lambda = 0 sequence (needs q0 = 0)"},
    };
}

std::vector<ParamSpec> verify_specs() {
    return {
        {"n", ParamKind::integer, "1", "damping exponent"},
        {"a0", ParamKind::real, "0", "constant part of the damping"},
        {"q0", ParamKind::real, "0", "constant potential"},
        {"k-max", ParamKind::integer, "1", "check branches 0..k-max"},
        {"L", ParamKind::real, "10", "grid half-width"},
        {"N", ParamKind::integer, "4000", "interior grid points"},
        {"offset", ParamKind::real, "0.5", "shift of the off-spectrum comparison point"},
        {"rect", ParamKind::real_list, "", "re_min,re_max,im_min,im_max (default: box around the branches)"},
        {"quad-points", ParamKind::integer, "64", "trapezoid panels per side"},
    };
}

std::vector<ParamSpec> figure_specs() {
    return {
        {"which", ParamKind::text, "fig-x2", "fig-x2 | fig-strip"},
        {"k-max", ParamKind::integer, "", "highest k (12 for fig-x2, 4 for fig-strip)"},
        {"j-max", ParamKind::integer, "20", "highest transverse index (fig-strip)"},
        {"ell", ParamKind::real, "1", "strip half-width (fig-strip)"},
        {"verify", ParamKind::flag, "false", "confirm each root on the discretized pencil"},
        {"re-cut", ParamKind::real, "-10", "left end of the exported essential segment"},
    };
}

[[noreturn]] void bad(const std::string& key, const std::string& message) {
    throw ParameterError("--" + key + ": " + message);
}

double parse_real(const std::string& key, const std::string& text) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) bad(key, "expected a finite number, got '" + text + "'");
    return value;
}

long long parse_integer(const std::string& key, const std::string& text) {
    long long value = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) bad(key, "expected an integer, got '" + text + "'");
    return value;
}

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (!text.empty() && text.back() == ',') parts.emplace_back();
    return parts;
}

ParamValue parse_value(const ParamSpec& spec, const std::string& text) {
    switch (spec.kind) {
    case ParamKind::flag:
        if (text == "true" || text == "1") return true;
        if (text == "false" || text == "0") return false;
        bad(spec.key, "expected true or false");
    case ParamKind::integer: return parse_integer(spec.key, text);
    case ParamKind::real: return parse_real(spec.key, text);
    case ParamKind::text: return text;
    case ParamKind::integer_list: {
        std::vector<long long> out;
        for (const auto& part : split(text)) out.push_back(parse_integer(spec.key, part));
        if (out.empty()) bad(spec.key, "expected a comma-separated list");
        return out;
    }
    case ParamKind::real_list: {
        std::vector<double> out;
        for (const auto& part : split(text)) out.push_back(parse_real(spec.key, part));
        if (out.empty()) bad(spec.key, "expected a comma-separated list");
        return out;
    }
    }
    bad(spec.key, "unsupported parameter kind");
}

template <class T>
const T& get(const RunConfig& config, const std::string& key) {
    const auto it = config.params.find(key);
    if (it == config.params.end()) throw ParameterError("missing parameter --" + key);
    const T* value = std::get_if<T>(&it->second);
    if (value == nullptr) throw ParameterError("parameter --" + key + " has the wrong type");
    return *value;
}

void check_range(const RunConfig& c, const std::string& key, long long lo, long long hi) {
    const long long v = get<long long>(c, key);
    if (v < lo || v > hi) bad(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

void check_positive(const RunConfig& c, const std::string& key) {
    if (!(c.real(key) > 0.0)) bad(key, "must be positive");
}

void check_increasing(const RunConfig& c, const std::string& key, long long lo) {
    const auto& v = get<std::vector<long long>>(c, key);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < lo) bad(key, "entries must be >= " + std::to_string(lo));
        if (i > 0 && v[i] <= v[i - 1]) bad(key, "entries must be strictly increasing");
    }
}

int damping_exponent(const std::string& damping) {
    if (damping.size() < 2 || damping[0] != 'x') return -1;
    long long power = 0;
    const char* end = damping.data() + damping.size();
    const auto [ptr, ec] = std::from_chars(damping.data() + 1, end, power);
    if (ec != std::errc{} || ptr != end || power < 2 || power % 2 != 0 || power > 64) return -1;
    return static_cast<int>(power / 2);
}

} // namespace

const char* to_string(Command command) noexcept {
    for (const auto& entry : kCommands)
        if (entry.command == command) return entry.name;
    return "unknown";
}

const char* to_string(OutputFormat format) noexcept { return format == OutputFormat::csv ? "csv" : "json"; }

Command parse_command(std::string_view name) {
    for (const auto& entry : kCommands)
        if (name == entry.name) return entry.command;
    throw ParameterError("unknown command '" + std::string(name) + "'");
}

OutputFormat parse_format(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw ParameterError("--format: expected csv or json, got '" + std::string(name) + "'");
}

std::vector<Command> all_commands() {
    std::vector<Command> out;
    for (const auto& entry : kCommands) out.push_back(entry.command);
    return out;
}

const std::vector<ParamSpec>& parameter_specs(Command command) {
    static const std::vector<ParamSpec> line = line_specs();
    static const std::vector<ParamSpec> strip = strip_specs();
    static const std::vector<ParamSpec> oscillator = oscillator_specs();
    static const std::vector<ParamSpec> converge = converge_specs();
    static const std::vector<ParamSpec> essential = essential_specs();
    static const std::vector<ParamSpec> verify = verify_specs();
    static const std::vector<ParamSpec> figure = figure_specs();
    switch (command) {
    case Command::spectrum_line: return line;
    case Command::spectrum_strip: return strip;
    case Command::oscillator: return oscillator;
    case Command::converge: return converge;
    case Command::essential: return essential;
    case Command::verify: return verify;
    case Command::figure: return figure;
    }
    return line;
}

bool RunConfig::flag(const std::string& key) const { return get<bool>(*this, key); }
int RunConfig::integer(const std::string& key) const { return static_cast<int>(get<long long>(*this, key)); }
double RunConfig::real(const std::string& key) const { return get<double>(*this, key); }
const std::string& RunConfig::text(const std::string& key) const { return get<std::string>(*this, key); }

std::vector<int> RunConfig::integers(const std::string& key) const {
    const auto& v = get<std::vector<long long>>(*this, key);
    return std::vector<int>(v.begin(), v.end());
}

std::vector<double> RunConfig::reals(const std::string& key) const { return get<std::vector<double>>(*this, key); }

RunConfig make_config(Command command, const std::map<std::string, std::string>& raw, std::filesystem::path output,
                      OutputFormat format) {
    RunConfig config;
    config.command = command;
    config.format = format;
    const auto& specs = parameter_specs(command);
    for (const auto& [key, text] : raw) {
        bool known = false;
        for (const auto& spec : specs) known = known || spec.key == key;
        if (!known) throw ParameterError("unknown parameter --" + key + " for " + to_string(command), "unknown_key");
    }
    for (const auto& spec : specs) {
        const auto it = raw.find(spec.key);
        if (it != raw.end()) {
            config.params[spec.key] = parse_value(spec, it->second);
        } else if (!spec.fallback.empty()) {
            config.params[spec.key] = parse_value(spec, spec.fallback);
        }
    }
    if (command == Command::figure && !config.has("k-max")) {
        config.params["k-max"] = config.params.count("which") && config.text("which") == "fig-strip" ? 4LL : 12LL;
    }
    validate(config);
    config.output = output.empty() ? default_output(config) : std::move(output);
    return config;
}

void validate(const RunConfig& c) {
    const auto& specs = parameter_specs(c.command);
    for (const auto& [key, value] : c.params) {
        bool known = false;
        for (const auto& spec : specs) known = known || spec.key == key;
        if (!known) throw ParameterError("unknown parameter --" + key + " for " + to_string(c.command), "unknown_key");
    }
    for (const auto& spec : specs)
        if (!spec.fallback.empty() && !c.has(spec.key)) bad(spec.key, "missing");

    switch (c.command) {
    case Command::spectrum_line: {
        check_range(c, "n", 1, 32);
        check_range(c, "k-max", 0, 200);
        PencilParams{c.integer("n"), c.real("a0"), c.real("q0")}.validate();
        const auto& source = c.text("mu-source");
        if (source != "numerical" && source != "exact") bad("mu-source", "expected numerical or exact");
        if (source == "exact" && c.integer("n") != 1) bad("mu-source", "exact oscillator eigenvalues are known only for n = 1");
        check_positive(c, "tol");
        if (!(c.real("re-cut") < 0.0)) bad("re-cut", "must be negative");
        break;
    }
    case Command::spectrum_strip:
        StripParams{c.real("ell"), c.real("a0"), c.real("q0")}.validate();
        check_range(c, "j-max", 1, 1000);
        check_range(c, "k-max", 0, 200);
        if (!(c.real("re-cut") < 0.0)) bad("re-cut", "must be negative");
        break;
    case Command::oscillator:
        check_range(c, "n", 1, 32);
        check_range(c, "k-max", 0, 200);
        check_positive(c, "tol");
        if (c.has("ell")) check_positive(c, "ell");
        break;
    case Command::converge:
        check_range(c, "k", 1, 100);
        check_increasing(c, "n-list", 1);
        for (int n : c.integers("n-list"))
            if (n > 32) bad("n-list", "entries must be <= 32");
        PencilParams{1, c.real("a0"), c.real("q0")}.validate();
        check_positive(c, "tol");
        check_range(c, "window", 1, 1000);
        break;
    case Command::essential:
        if (!(c.real("lambda") < 0.0)) bad("lambda", "must be negative (the quasimodes live on the negative half-line)");
        if (damping_exponent(c.text("damping")) < 0) bad("damping", "expected x2, x4, x6, ...");
        if (!(c.real("a0") >= 0.0)) bad("a0", "must be non-negative");
        if (!(c.real("q0") >= 0.0)) bad("q0", "must be non-negative");
        check_increasing(c, "m", 1);
        if (!(c.real("points-per-wavelength") >= 4.0)) bad("points-per-wavelength", "must be at least 4");
        break;
    case Command::verify: {
        check_range(c, "n", 1, 32);
        PencilParams{c.integer("n"), c.real("a0"), c.real("q0")}.validate();
        check_range(c, "k-max", 0, 50);
        check_positive(c, "L");
        check_range(c, "N", 3, 2'000'000);
        check_positive(c, "offset");
        check_range(c, "quad-points", 4, 100'000);
        if (c.has("rect")) {
            const auto r = c.reals("rect");
            if (r.size() != 4) bad("rect", "expected re_min,re_max,im_min,im_max");
            ContourSpec{r[0], r[1], r[2], r[3], c.integer("quad-points")}.validate();
        }
        break;
    }
    case Command::figure: {
        const auto& which = c.text("which");
        if (which != "fig-x2" && which != "fig-strip") bad("which", "expected fig-x2 or fig-strip");
        check_range(c, "k-max", 0, 200);
        check_range(c, "j-max", 1, 1000);
        check_positive(c, "ell");
        if (!(c.real("re-cut") < 0.0)) bad("re-cut", "must be negative");
        break;
    }
    }
}

std::filesystem::path default_output(const RunConfig& config) {
    const char* dir = std::getenv("DAMPSPEC_OUTPUT_DIR");
    std::filesystem::path base = dir != nullptr && *dir != '\0' ? std::filesystem::path(dir) : std::filesystem::path(".");
    std::string stem = to_string(config.command);
    if (config.command == Command::figure) stem = config.text("which");
    return base / (stem + "." + to_string(config.format));
}

std::string format_value(const ParamValue& value) {
    struct Visitor {
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(double v) const {
            char buf[32];
            const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
            return std::string(buf, ptr);
        }
        std::string operator()(const std::string& v) const { return v; }
        std::string operator()(const std::vector<long long>& v) const {
            std::string out;
            for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
            return out;
        }
        std::string operator()(const std::vector<double>& v) const {
            std::string out;
            for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + (*this)(v[i]);
            return out;
        }
    };
    return std::visit(Visitor{}, value);
}

} // namespace dampspec::cli
