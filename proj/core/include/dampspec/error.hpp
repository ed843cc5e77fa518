#pragma once

#include <stdexcept>
#include <string>

namespace dampspec {

/// Broad failure class; the CLI maps these onto exit codes 2, 3 and 4.
enum class ErrorKind {
    parameter,
    numerical,
    io,
};

/// Base exception for the library. `code()` is a short machine-readable tag
/// such as "contour_inaccurate" or "window_too_small".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }

private:
    ErrorKind kind_;
    std::string code_;
};

class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& message, std::string code = "invalid_parameter")
        : Error(ErrorKind::parameter, std::move(code), message) {}
};

class NumericalError : public Error {
public:
    NumericalError(std::string code, const std::string& message)
        : Error(ErrorKind::numerical, std::move(code), message) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message)
        : Error(ErrorKind::io, "io_failure", message) {}
};

const char* to_string(ErrorKind kind) noexcept;

/// Throws ParameterError with `message` unless `condition` holds.
inline void require(bool condition, const std::string& message) {
    if (!condition) throw ParameterError(message);
}

} // namespace dampspec
