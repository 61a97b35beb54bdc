#pragma once

#include <stdexcept>
#include <string>

namespace dquad {

// Caller-facing precondition violations (bad CLI input, out-of-range
// parameters, malformed values). The CLI maps these to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnknownFamilyError : public UsageError {
public:
    explicit UnknownFamilyError(const std::string& id)
        : UsageError("unknown family id: " + id) {}
};

// A family parameter that degenerates the tuple (zero element, duplicate
// elements, n = 0, non-integral values) or is excluded outright.
class ExcludedParameterError : public UsageError {
public:
    ExcludedParameterError(const std::string& family, const std::string& reason)
        : UsageError("parameter excluded for family '" + family + "': " + reason),
          reason_(reason) {}
    const std::string& reason() const noexcept { return reason_; }

private:
    std::string reason_;
};

// A construction chain hit a degenerate intermediate; carries the stage name.
class ChainError : public UsageError {
public:
    ChainError(const std::string& chain, const std::string& stage, const std::string& what)
        : UsageError(chain + " degenerate at stage '" + stage + "': " + what),
          stage_(stage) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

// Invariants that can only break if the kernel itself is wrong (a nonzero
// Eq-residual, an audit finding a theorem-violating quadruple, a registry
// family failing certification). Never caught by the CLI.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace dquad
