#pragma once

#include <stdexcept>
#include <string>

namespace ukm {

enum class ErrorCode {
  invalid_input,
  budget_exceeded,
  infeasible,
  disconnected,
  undefined,
};

/// Base exception for every failure raised by the library. The code lets the
/// CLI map failures onto exit statuses without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::invalid_input, what);
}

}  // namespace ukm
