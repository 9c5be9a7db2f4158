#pragma once

#include <stdexcept>
#include <string>

namespace uspring {

enum class ErrorKind {
  invalid_argument,
  domain,
  resonance,
  integration,
  continuation,
  no_convergence,
  unsupported_case,
  insufficient_data,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind k, const std::string& msg) {
  throw Error(k, msg);
}

}  // namespace uspring
