#pragma once

#include <stdexcept>
#include <string>

namespace mrlrc {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class SingularBlock : public Error {
 public:
  using Error::Error;
};

class RankDeficientParity : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class UncorrectablePattern : public Error {
 public:
  using Error::Error;
};

class InconsistentWord : public Error {
 public:
  using Error::Error;
};

class TooManyLocalErasures : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A step the construction guarantees (pivot invertibility, Moore structure,
/// the Vandermonde shape of the proof matrix) failed while replaying it.
/// On a conforming parity check this is unreachable; seeing it means the
/// parity check does not come from the construction.
class InternalContradiction : public Error {
 public:
  using Error::Error;
};

class HNotApplicable : public Error {
 public:
  using Error::Error;
};

class DescriptorError : public Error {
 public:
  using Error::Error;
};

class HashMismatch : public DescriptorError {
 public:
  using DescriptorError::DescriptorError;
};

}  // namespace mrlrc
