#pragma once

#include "dampspec/error.hpp"
#include "dampspec/cli/run_config.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace dampspec::cli {

struct OutputFile {
    std::filesystem::path path;
    std::string content;
};

struct RunResult {
    std::vector<OutputFile> files;
    /// One line per eigenvalue, oscillator level or probe.
    std::vector<std::string> summary;
};

/// Runs the pipeline for `config` without touching the filesystem.
RunResult execute(const RunConfig& config);

/// execute() followed by atomic writes and the stdout summary. Errors are
/// reported as a one-line JSON record on `err`; the return value is the exit
/// status (0, 2 parameter, 3 numerical, 4 I/O).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Command-line entry: parses flags into a RunConfig and calls run().
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int exit_code(ErrorKind kind) noexcept;

/// {"error": {"kind": ..., "code": ..., "message": ..., "command": ...}}
std::string error_record(ErrorKind kind, const std::string& code, const std::string& message,
                         const std::string& command);

} // namespace dampspec::cli
