#pragma once

#include <stdexcept>
#include <string>

namespace tangleforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the configured caps.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// Input does not meet an algorithm's stated requirements.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A lemma hypothesis is not satisfied by the input.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// A returned object failed its post-hoc certificate.
class CertificationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace tangleforge
