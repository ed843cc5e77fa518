#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dampspec::cli {

enum class Command { spectrum_line, spectrum_strip, oscillator, converge, essential, verify, figure };
enum class OutputFormat { csv, json };

const char* to_string(Command command) noexcept;
const char* to_string(OutputFormat format) noexcept;
Command parse_command(std::string_view name);
OutputFormat parse_format(std::string_view name);
std::vector<Command> all_commands();

enum class ParamKind { flag, integer, real, text, integer_list, real_list };

using ParamValue = std::variant<bool, long long, double, std::string, std::vector<long long>, std::vector<double>>;

struct ParamSpec {
    std::string key;
    ParamKind kind;
    /// Default as it would be typed on the command line; empty means the
    /// parameter is optional and absent unless given.
    std::string fallback;
    std::string help;
};

/// Parameters accepted by a command, in the order they are echoed.
const std::vector<ParamSpec>& parameter_specs(Command command);

struct RunConfig {
    Command command = Command::spectrum_line;
    std::map<std::string, ParamValue> params;
    std::filesystem::path output;
    OutputFormat format = OutputFormat::csv;

    bool has(const std::string& key) const { return params.count(key) != 0; }
    bool flag(const std::string& key) const;
    int integer(const std::string& key) const;
    double real(const std::string& key) const;
    const std::string& text(const std::string& key) const;
    std::vector<int> integers(const std::string& key) const;
    std::vector<double> reals(const std::string& key) const;
};

/// Typed config from raw flag values. Unknown keys, malformed values and
/// violated module preconditions raise ParameterError. An empty `output`
/// resolves to default_output().
RunConfig make_config(Command command, const std::map<std::string, std::string>& raw,
                      std::filesystem::path output = {}, OutputFormat format = OutputFormat::csv);

/// Checks every numeric parameter against the preconditions of the module it
/// feeds. make_config calls this; it is exposed for hand-built configs.
void validate(const RunConfig& config);

/// $DAMPSPEC_OUTPUT_DIR (or the working directory) / <command>[-<figure>].<ext>
std::filesystem::path default_output(const RunConfig& config);

/// Renders a value the way the command line would accept it back.
std::string format_value(const ParamValue& value);

} // namespace dampspec::cli
