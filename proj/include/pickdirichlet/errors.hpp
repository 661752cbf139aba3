#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pickdirichlet {

// Base of the library error taxonomy. `kind()` is stable and is what the
// CLI reports in its structured error objects.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Series has no invertible leading coefficient (a_1 = 0).
struct NonUnitError : Error {
    explicit NonUnitError(const std::string& w) : Error("NonUnitError", w) {}
};

// Operation requested in a scalar mode it does not support.
struct ModeError : Error {
    explicit ModeError(const std::string& w) : Error("ModeError", w) {}
};

// Argument outside the mathematical domain (half plane, sigma <= 1, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error("DomainError", w) {}
};

// Truncation depth insufficient to answer soundly at the requested tolerance.
struct DepthError : Error {
    explicit DepthError(const std::string& w) : Error("DepthError", w) {}
};

// Series coefficient outside the span of an embedding's generators.
struct SupportError : Error {
    explicit SupportError(const std::string& w) : Error("SupportError", w) {}
};

// Kernel failed the complete Pick test where the operation requires it.
struct NotPickError : Error {
    explicit NotPickError(const std::string& w) : Error("NotPickError", w) {}
};

// Kernel value vanishes (or cannot be bounded away from zero).
struct ZeroKernelError : Error {
    explicit ZeroKernelError(const std::string& w) : Error("ZeroKernelError", w) {}
};

// Iterative eigenvalue sweep failed to converge.
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& w) : Error("ConvergenceError", w) {}
};

// Mismatched matrix/block dimensions.
struct ShapeError : Error {
    explicit ShapeError(const std::string& w) : Error("ShapeError", w) {}
};

// Index sets out of range for the object they refer to.
struct IndexError : Error {
    explicit IndexError(const std::string& w) : Error("IndexError", w) {}
};

} // namespace pickdirichlet
