#pragma once

#include <stdexcept>
#include <string>

namespace ncagm {

enum class ErrorCode {
  invalid_argument,
  order_violation,
  precondition,
  resource_limit,
  numeric_failure,
  parse_error,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string what) : std::runtime_error(std::move(what)), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_invalid(std::string what) {
  throw Error(ErrorCode::invalid_argument, std::move(what));
}
[[noreturn]] inline void throw_order(std::string what) {
  throw Error(ErrorCode::order_violation, std::move(what));
}
[[noreturn]] inline void throw_precondition(std::string what) {
  throw Error(ErrorCode::precondition, std::move(what));
}
[[noreturn]] inline void throw_resource(std::string what) {
  throw Error(ErrorCode::resource_limit, std::move(what));
}
[[noreturn]] inline void throw_numeric(std::string what) {
  throw Error(ErrorCode::numeric_failure, std::move(what));
}
[[noreturn]] inline void throw_parse(std::string what) {
  throw Error(ErrorCode::parse_error, std::move(what));
}

}  // namespace ncagm
