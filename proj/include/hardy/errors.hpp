#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid grid sizes, exponents, shapes.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// Root finder or other numerical routine failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A computed object violates an invariant it must satisfy by construction.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// An input failed a numerical guard (log-integrability, division floor, ...).
class RejectedInput : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class DegenerateWeight : public RejectedInput {
 public:
  using RejectedInput::RejectedInput;
};

class AmbiguityError : public Error {
 public:
  using Error::Error;
};

}  // namespace hardy
