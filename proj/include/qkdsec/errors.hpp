#pragma once

#include <stdexcept>
#include <string>

namespace qkdsec {

// Every contract violation raised by the library derives from Error so the
// CLI can map it to a single exit status.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands live on incompatible outcome spaces / matrix sizes.
struct DimensionError : Error {
  using Error::Error;
};

// A scalar argument lies outside the operation's domain.
struct DomainError : Error {
  using Error::Error;
};

// A value failed its type invariants (negative mass, non-Hermitian, ...).
struct InvariantError : Error {
  using Error::Error;
};

// The request exceeds what the exact/enumerative path supports.
struct ScaleError : Error {
  using Error::Error;
};

// Conditioning on an event of probability zero.
struct ZeroProbabilityError : Error {
  using Error::Error;
};

// The rate solver found no admissible epsilon.
struct NoSolutionError : Error {
  using Error::Error;
};

// Input file missing or unreadable.
struct FileError : Error {
  using Error::Error;
};

// Malformed distribution / matrix / bitstring text.
struct FormatError : Error {
  using Error::Error;
};

}  // namespace qkdsec
