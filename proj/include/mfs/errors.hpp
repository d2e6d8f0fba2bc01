#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mfs {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Result too large for the floating-point type.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Result too small (nonzero) for the floating-point type.
class UnderflowError : public std::underflow_error {
public:
    using std::underflow_error::underflow_error;
};

/// An infinite sum failed its stopping rule.
class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A circulant eigenvalue fell below the singularity tolerance.
class SingularSystem : public std::runtime_error {
public:
    SingularSystem(int mode, const std::string& what)
        : std::runtime_error(what), mode_(mode) {}

    int mode() const noexcept { return mode_; }

private:
    int mode_;
};

/// Problem construction failed; every violated constraint is listed.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : std::invalid_argument(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "invalid problem:";
        for (const auto& s : v) out += " " + s + ";";
        return out;
    }

    std::vector<std::string> violations_;
};

/// Malformed configuration document.
class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& msg)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace mfs
