#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace spex {

// Base of all domain errors. `name()` is the stable identifier the CLI prints
// and scripts match on; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

struct InvalidArgumentError : Error {
    explicit InvalidArgumentError(const std::string& w) : Error("InvalidArgument", w) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error("ParseError", w) {}
};

// Exact checkers refuse inputs beyond their enumeration budget.
struct TooLargeError : Error {
    explicit TooLargeError(const std::string& w) : Error("TooLarge", w) {}
};

struct BudgetExceededError : Error {
    explicit BudgetExceededError(const std::string& w) : Error("BudgetExceeded", w) {}
};

struct MissingPartError : Error {
    explicit MissingPartError(const std::string& w) : Error("MissingPart", w) {}
};

struct InvalidEditError : Error {
    explicit InvalidEditError(const std::string& w) : Error("InvalidEdit", w) {}
};

struct UnsupportedCaseError : Error {
    explicit UnsupportedCaseError(const std::string& w) : Error("UnsupportedCase", w) {}
};

struct UnsupportedVariantError : Error {
    explicit UnsupportedVariantError(const std::string& w) : Error("UnsupportedVariant", w) {}
};

struct NonConvergenceError : Error {
    explicit NonConvergenceError(const std::string& w) : Error("NonConvergence", w) {}
};

} // namespace spex
