#pragma once

#include <stdexcept>
#include <string>

namespace yasca {

/// Broad failure class; the CLI maps each one to a process exit code.
enum class ErrorKind {
    Usage = 1,      // bad flag, bad config value
    Data = 2,       // unreadable or malformed input
    Invariant = 3,  // internal consistency check failed
};

/// Exception carrying the pipeline stage that raised it.
///
/// what() reads "<stage>: <message>" so errors surfacing from deep inside
/// the pipeline still say where they came from.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string stage, const std::string& message)
        : std::runtime_error(stage + ": " + message), kind_(kind), stage_(std::move(stage)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& stage() const noexcept { return stage_; }

private:
    ErrorKind kind_;
    std::string stage_;
};

inline Error usage_error(std::string stage, const std::string& message) {
    return Error(ErrorKind::Usage, std::move(stage), message);
}

inline Error data_error(std::string stage, const std::string& message) {
    return Error(ErrorKind::Data, std::move(stage), message);
}

inline Error invariant_error(std::string stage, const std::string& message) {
    return Error(ErrorKind::Invariant, std::move(stage), message);
}

}  // namespace yasca
