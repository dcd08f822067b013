#pragma once

#include <stdexcept>
#include <string>

namespace mcobs {

/// Failure categories. Values line up with the C API status codes and the
/// CLI exit codes (2 parse, 3 tail gate, 4 invariant).
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kParse = 2,
  kTailGate = 3,
  kInvariant = 4,
  kDimension = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline Error InvalidArgument(const std::string& what) {
  return Error(ErrorCode::kInvalidArgument, what);
}
inline Error DimensionError(const std::string& what) {
  return Error(ErrorCode::kDimension, what);
}
inline Error ParseError(const std::string& what) {
  return Error(ErrorCode::kParse, what);
}
inline Error TailGateError(const std::string& what) {
  return Error(ErrorCode::kTailGate, what);
}
inline Error InvariantError(const std::string& what) {
  return Error(ErrorCode::kInvariant, what);
}

}  // namespace mcobs
