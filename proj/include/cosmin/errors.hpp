#pragma once

#include <stdexcept>
#include <string>

namespace cosmin {

// Arguments violate a documented precondition.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The grid-refinement loop hit its sample cap before the certified error
// radius met the requested tolerance.
struct ToleranceUnreachable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No exponent set satisfies the requested enumeration bounds.
struct EmptySpace : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A checkpoint file exists but cannot be parsed.
struct CorruptCheckpoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A witness scan failed. The underlying results guarantee existence, so this
// always indicates an implementation bug rather than a bad input.
struct WitnessNotFound : std::logic_error {
  using std::logic_error::logic_error;
};

// A named precondition of a verification routine does not hold.
struct PreconditionViolated : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace cosmin
