#pragma once

#include <stdexcept>
#include <string>

namespace lpfact {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-side precondition does not hold (bad flag, bad range, bad instance).
class PreconditionViolated : public Error {
 public:
  PreconditionViolated(std::string clause, const std::string& what)
      : Error(clause + ": " + what), clause_(std::move(clause)) {}
  const std::string& clause() const noexcept { return clause_; }

 private:
  std::string clause_;
};

/// Raised by the divisibility-chain checker when an instance breaches a hypothesis.
class AssumptionViolated : public PreconditionViolated {
 public:
  using PreconditionViolated::PreconditionViolated;
};

class ValueIsZero : public Error {
 public:
  using Error::Error;
};

class ValueNotAboveOne : public Error {
 public:
  using Error::Error;
};

class RangeTooLarge : public Error {
 public:
  using Error::Error;
};

class DuplicatePoints : public Error {
 public:
  using Error::Error;
};

class OracleGap : public Error {
 public:
  using Error::Error;
};

/// A checked mathematical invariant came out false. This falsifies either the
/// implementation or its input data, so it is never downgraded to a warning.
class InvariantFailure : public Error {
 public:
  using Error::Error;
};

class DivisibilityFailed : public InvariantFailure {
 public:
  using InvariantFailure::InvariantFailure;
};

class MismatchFound : public InvariantFailure {
 public:
  using InvariantFailure::InvariantFailure;
};

}  // namespace lpfact
