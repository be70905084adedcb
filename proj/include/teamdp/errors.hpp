#pragma once

#include <stdexcept>
#include <string>

namespace teamdp {

// Base for everything thrown by this library. CLI maps subclasses to exit
// codes, tests match on concrete types.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text: bad JSON, bad rational literal, bad policy file.
struct ParseError : Error {
  using Error::Error;
};

// Structurally well-formed model that violates an invariant (distribution
// not normalized, partial table, unknown label, negative cost, ...).
struct ValidationError : Error {
  using Error::Error;
};

// Conditioning on an event of probability zero. Never a silent fallback.
struct NullEventError : Error {
  using Error::Error;
};

// An observation was fed to a filter that assigns it zero probability.
struct InconsistentObservationError : NullEventError {
  using NullEventError::NullEventError;
};

// A prescription was applied to a belief outside its domain.
struct IncompletePrescriptionError : Error {
  using Error::Error;
};

// A strategy table or policy lacks an entry for a reachable node.
struct MissingEntryError : Error {
  using Error::Error;
};

// A trajectory fed to a policy executor has probability zero under the model.
struct InconsistentTrajectoryError : Error {
  using Error::Error;
};

// A configured enumeration bound (beliefs, prescriptions, profiles) was hit.
// Carries enough context to report which bound and where.
struct ResourceLimitError : Error {
  using Error::Error;
};

// Filesystem-level failure (missing file, unwritable output).
struct IoError : Error {
  using Error::Error;
};

}  // namespace teamdp
