#pragma once

#include <stdexcept>
#include <string>

#include "sepkit/sepkit.h"

namespace sepkit {

/// Library error carrying the status code the C layer reports.
class Error : public std::runtime_error {
 public:
  Error(sepkit_status code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  sepkit_status code() const noexcept { return code_; }

 private:
  sepkit_status code_;
};

[[noreturn]] inline void fail(sepkit_status code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace sepkit
