#pragma once

#include <stdexcept>
#include <string>

namespace eqlp {

// Contract violations surface as exceptions; expected outcomes (failed
// unification, inconsistent composition, parse diagnostics) are values.

struct CaptureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotApplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PredicateMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InconsistentAnswer : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct JoinMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyAlphabet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace eqlp
