#pragma once

#include <stdexcept>
#include <string>

namespace smmdtc {

// Base of everything the library throws on a contract violation.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument outside the mathematical domain of an operation (e.g. S = 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operator shapes disagree, or the chain Hilbert space exceeds the dense cap.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// The requested combination of options has no implementation, e.g. a
// rotating-frame reduction with nonzero rhombic anisotropy.
class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

// Conservation laws drifted beyond tolerance, or a quantity that must be
// real picked up a significant imaginary part.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace smmdtc
