#pragma once

#include <stdexcept>
#include <string>

namespace scfr {

// Base class for all library failures that map to CLI / C-API status codes.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad scenario, invalid connection set, unparsable literal.
class validation_error : public error {
 public:
  using error::error;
};

// An operation was called outside its stated preconditions.
class precondition_error : public error {
 public:
  using error::error;
};

// Request is structurally valid but cannot be served (non-integral spectrum
// in quantized search, dense-oracle size cap).
class unsupported_error : public error {
 public:
  using error::error;
};

// An internal cross-check (closed form vs oracle) exceeded its tolerance.
class tolerance_error : public error {
 public:
  using error::error;
};

}  // namespace scfr
