#pragma once

#include <stdexcept>
#include <string>

namespace charter {

enum class ErrorCode {
  invalid_argument,
  invalid_config,
  layout_overflow,
  io,
  parse,
  no_chart,
  empty_table,
  type_mismatch,
  empty_dataset,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace charter
