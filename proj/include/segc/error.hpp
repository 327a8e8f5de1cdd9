#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace segc {

// Domain error carrying a stable machine-readable code. The CLI maps these
// onto JSON error objects and exit status 1; anything else is a bug.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace segc
