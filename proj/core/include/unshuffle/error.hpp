#pragma once

#include <stdexcept>
#include <string>

namespace unshuffle {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sizes or dimensions of the arguments do not fit together.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Model parameters that cannot be realized (e.g. distinct prefix values
/// with fewer symbols than blocks).
class InfeasibleParametersError : public Error {
 public:
  using Error::Error;
};

/// A probability formula or bound evaluated outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed its configured cap.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// The corpus carries no information from which the requested quantity
/// can be estimated.
class NotIdentifiableError : public Error {
 public:
  using Error::Error;
};

/// The M-block aligner could not find a first block boundary.
class AlignmentFailedError : public Error {
 public:
  using Error::Error;
};

/// A result violates an invariant that should hold by construction.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

class MalformedCorpusError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace unshuffle
