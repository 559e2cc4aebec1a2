#pragma once

#include <stdexcept>

namespace helmscat {

// Invalid input: bad geometry, out-of-range parameters, malformed files.
// The command-line driver maps this to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Failure of the reconstruction pipeline itself once inputs have been
// accepted.  The command-line driver maps this to exit code 3.
class InversionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Frequency band too narrow for the requested period, or too few samples
// to resolve the requested number of layers without aliasing.
class BandError : public InversionError {
public:
    using InversionError::InversionError;
};

// Orthogonalization broke down: the data are not consistent with a
// nondegenerate measure on the unit circle (typically heavy noise or a
// wildly wrong period/layer count).
class DegenerateMeasureError : public InversionError {
public:
    using InversionError::InversionError;
};

} // namespace helmscat
