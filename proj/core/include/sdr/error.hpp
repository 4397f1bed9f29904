#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdr {

enum class ErrorKind {
  invalid_argument,
  domain,
  range,
  numeric,
  precondition,
  resource,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool cond, ErrorKind kind, const char* what) {
  if (!cond) fail(kind, what);
}

}  // namespace sdr
