#pragma once

#include <stdexcept>
#include <string>

namespace desiree {

enum class ErrorCode {
  Usage,
  Io,
  Parse,
  Invalid,             // model or argument violates an invariant
  UnknownElement,
  Signature,           // operator arity / kind mismatch
  PathMismatch,
  AlreadyUniversalized,
  InvalidFactor,
  NoOrderingAxiom,
  NotAConflict,
  NotAQuality,
  UnknownRegion,
  RegionMismatch,
  UnsupportedNestedU,
  NestedUNotExportable,
  TooManyCompletions,
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace desiree
