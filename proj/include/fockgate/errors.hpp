#pragma once

#include <stdexcept>
#include <string>

namespace fockgate {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand sizes or Hilbert spaces do not match, or a cutoff is too small.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Unknown atomic level label.
class LabelError : public Error {
 public:
  using Error::Error;
};

/// A generator handed to the propagator is not Hermitian.
class NotHermitianError : public Error {
 public:
  using Error::Error;
};

/// Parameters that cannot describe a valid physical setup (zero detuning,
/// doublet below the vacuum, unnormalized target, ...).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace fockgate
