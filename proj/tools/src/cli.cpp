#include "dampspec/cli/app.hpp"
#include "dampspec/cli/export.hpp"

#include "dampspec/version.hpp"

#include <CLI11.hpp>

#include <map>
#include <memory>
#include <ostream>

namespace dampspec::cli {

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::parameter: return 2;
    case ErrorKind::numerical: return 3;
    case ErrorKind::io: return 4;
    }
    return 1;
}

std::string error_record(ErrorKind kind, const std::string& code, const std::string& message,
                         const std::string& command) {
    ordered_json record;
    record["error"] = {{"kind", to_string(kind)}, {"code", code}, {"message", message}, {"command", command}};
    return record.dump();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const std::string command = to_string(config.command);
    try {
        const RunResult result = execute(config);
        for (const auto& file : result.files) write_atomic(file.path, file.content);
        for (const auto& line : result.summary) out << line << '\n';
        for (const auto& file : result.files) out << "wrote " << file.path.string() << '\n';
        return 0;
    } catch (const Error& e) {
        err << error_record(e.kind(), e.code(), e.what(), command) << '\n';
        return exit_code(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        err << error_record(ErrorKind::io, "io_failure", e.what(), command) << '\n';
        return exit_code(ErrorKind::io);
    }
}

namespace {

struct Subcommand {
    Command command;
    CLI::App* app = nullptr;
    std::map<std::string, std::string> values;
    std::map<std::string, bool> flags;
    std::string out;
    std::string format = "csv";
};

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectra of damped wave operators with unbounded damping", "dampspec"};
    app.set_version_flag("--version", kGeneratedBy);
    app.require_subcommand(1);

    std::vector<std::unique_ptr<Subcommand>> subs;
    for (Command command : all_commands()) {
        auto sub = std::make_unique<Subcommand>();
        sub->command = command;
        sub->app = app.add_subcommand(to_string(command));
        for (const auto& spec : parameter_specs(command)) {
            std::string help = spec.help;
            if (!spec.fallback.empty() && spec.kind != ParamKind::flag) help += " [" + spec.fallback + "]";
            if (spec.kind == ParamKind::flag) {
                sub->app->add_flag("--" + spec.key, sub->flags[spec.key], help);
            } else if (command == Command::figure && spec.key == "which") {
                sub->app->add_option("which", sub->values[spec.key], help)->check(CLI::IsMember({"fig-x2", "fig-strip"}));
            } else {
                sub->app->add_option("--" + spec.key, sub->values[spec.key], help);
            }
        }
        sub->app->add_option("--out", sub->out, "output file (default: $DAMPSPEC_OUTPUT_DIR/<command>.<format>)");
        sub->app->add_option("--format", sub->format, "csv | json [csv]");
        subs.push_back(std::move(sub));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kGeneratedBy << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << error_record(ErrorKind::parameter, "invalid_arguments", e.what(), "") << '\n';
        return exit_code(ErrorKind::parameter);
    }

    for (const auto& sub : subs) {
        if (!sub->app->parsed()) continue;
        const std::string command = to_string(sub->command);
        RunConfig config;
        try {
            std::map<std::string, std::string> raw;
            for (const auto& spec : parameter_specs(sub->command)) {
                const std::string name = spec.key == "which" && sub->command == Command::figure ? "which" : "--" + spec.key;
                if (sub->app->count(name) == 0) continue;
                raw[spec.key] = spec.kind == ParamKind::flag ? std::string("true") : sub->values[spec.key];
            }
            config = make_config(sub->command, raw, sub->out, parse_format(sub->format));
        } catch (const Error& e) {
            err << error_record(e.kind(), e.code(), e.what(), command) << '\n';
            return exit_code(e.kind());
        }
        return run(config, out, err);
    }
    return exit_code(ErrorKind::parameter);
}

} // namespace dampspec::cli
