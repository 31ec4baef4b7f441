#pragma once

#include <stdexcept>
#include <string>

namespace horolab {

enum class ErrorCode {
  domain = 1,
  degenerate_node,
  convergence,
  capacity,
  numeric_degeneracy,
  incomplete_orbit,
  node_choice,
  config,
  io,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

}  // namespace horolab
