#pragma once

#include <stdexcept>

namespace curlab {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mismatched vector or table lengths.
struct DimensionError : Error {
    using Error::Error;
};

/// Price function unusable in the requested role.
struct InvalidPriceFunctionError : Error {
    using Error::Error;
};

/// Conditioning on an observation of probability zero.
struct ImpossibleEvidenceError : Error {
    using Error::Error;
};

/// Protocol invoked with an unsupported number of agents.
struct UnsupportedArityError : Error {
    using Error::Error;
};

/// Parameter outside its documented domain.
struct ParameterError : Error {
    using Error::Error;
};

/// Candidate enumeration larger than the configured cap.
struct BudgetError : Error {
    using Error::Error;
};

/// Bad run configuration, e.g. an unknown protocol name.
struct ConfigError : Error {
    using Error::Error;
};

/// Malformed textual input.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace curlab
