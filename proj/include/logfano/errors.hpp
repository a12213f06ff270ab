#pragma once

#include <stdexcept>
#include <string>

namespace logfano {

// Exit-code mapping used by the CLI: 2 validation, 3 numeric domain, 4 convergence.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericDomainError : std::runtime_error {
    explicit NumericDomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace logfano
