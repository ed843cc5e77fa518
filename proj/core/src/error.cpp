#include "dampspec/error.hpp"

namespace dampspec {

Error::Error(ErrorKind kind, std::string code, const std::string& message)
    : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

} // namespace dampspec
