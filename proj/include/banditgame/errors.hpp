#pragma once

#include <stdexcept>
#include <string>

namespace banditgame {

// Error taxonomy used across the library.  Each type marks one failure
// class so callers can catch precisely what they can handle.

struct InvalidInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An algorithm broke the bandit protocol, e.g. played an action outside
// the offered action set.
struct ProtocolViolationError : std::logic_error {
  using std::logic_error::logic_error;
};

// The problem instance does not meet an algorithm's structural
// requirements (e.g. a shared-buffer run on non-fixed action sets).
struct UnsupportedInstanceError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Least-squares design matrix is singular and no ridge was allowed.
struct SingularDesignError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A regret table lacks entries required by the requested operation.
struct IncompleteTableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// External data could not be parsed; message carries file/line context.
struct IngestionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace banditgame
