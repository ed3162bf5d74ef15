#pragma once

#include <stdexcept>
#include <string>

namespace dirwalk {

// Argument outside the documented domain of an operation.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A series or continued fraction hit its term cap before reaching tolerance.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// The walk configuration has no implemented exact law; callers fall back to sampling.
struct NotClosedForm : std::runtime_error {
    explicit NotClosedForm(const std::string& what) : std::runtime_error(what) {}
};

// Bug sentinel: a structural guarantee (simple poles, vanishing polynomial part)
// failed inside an exact pipeline. Never expected at runtime.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Requested statistic is not computable for this law representation.
struct UnsupportedLaw : std::invalid_argument {
    explicit UnsupportedLaw(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace dirwalk
