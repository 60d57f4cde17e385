#pragma once

#include <stdexcept>
#include <string>

namespace groupmat {

// Bad argument values: wrong sizes, indices out of range, broken preconditions.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Text or JSON that does not decode into a value.
struct ParseError : InvalidInput {
  using InvalidInput::InvalidInput;
};

// A replacement factor whose grouped matrix differs from the original's.
struct SimilarityViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No prefix of the supplied weight matrices yields a consensus certificate.
struct NotCertified : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two computation routes that must agree exactly did not; an implementation bug.
struct InternalInconsistency : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace groupmat
