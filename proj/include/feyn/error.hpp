#pragma once

#include <stdexcept>
#include <string>

namespace feyn {

// Mirrors the status codes of the C interface (feyn.h).
enum class ErrorCode {
  invalid_argument = 1,
  parse = 2,
  arity = 3,
  limit = 4,
  io = 5,
  incompatible = 6,
  unknown_colour = 7,
};

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

}  // namespace feyn
