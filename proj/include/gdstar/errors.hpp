#pragma once

#include <stdexcept>
#include <string>

namespace gdstar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong shape, non-finite entries, bad parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public InputError {
 public:
  using InputError::InputError;
};

class InfeasibleError : public InputError {
 public:
  using InputError::InputError;
};

class ZeroMatrixError : public InputError {
 public:
  using InputError::InputError;
};

class IndexTooLarge : public Error {
 public:
  using Error::Error;
};

/// A supplied generalized-inverse witness does not satisfy its defining equations.
class InvalidWitness : public Error {
 public:
  using Error::Error;
};

class MissingWitness : public InputError {
 public:
  using InputError::InputError;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

class NotPartialIsometry : public Error {
 public:
  using Error::Error;
};

class ContractionViolated : public Error {
 public:
  using Error::Error;
};

class Inconsistent : public Error {
 public:
  using Error::Error;
};

class NotStochastic : public InputError {
 public:
  using InputError::InputError;
};

class NotErgodic : public Error {
 public:
  using Error::Error;
};

class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

class IllConditioned : public Error {
 public:
  using Error::Error;
};

}  // namespace gdstar
