#pragma once

#include <stdexcept>
#include <string>

namespace pmulab {

/// Raised when a spec or input violates a precondition.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by the analysis stage when no usable oscillation can be extracted.
class AnalysisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by recovery at (or too close to) a comb null of the window.
class UnrecoverableError : public AnalysisError {
public:
    using AnalysisError::AnalysisError;
};

} // namespace pmulab
