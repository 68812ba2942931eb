#pragma once

#include <stdexcept>
#include <string>

namespace mfsr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reading or writing a file failed at the operating-system level.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A file was readable but its contents violate the expected layout.
class FormatError : public Error {
 public:
  enum class Kind {
    kMalformedHeader,
    kTruncatedPayload,
    kUnsupportedFormat,
    kUnsupportedMaxval,
    kBadMagic,
    kSizeMismatch,
    kNonFinite,
  };

  FormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Operands have incompatible sizes (images, flows, frame lists).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A numerical precondition is violated, e.g. a time step above the stability bound.
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace mfsr
