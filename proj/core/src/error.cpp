#include "sdr/error.hpp"

namespace sdr {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::domain: return "domain-error";
    case ErrorKind::range: return "range-error";
    case ErrorKind::numeric: return "numeric-error";
    case ErrorKind::precondition: return "precondition-error";
    case ErrorKind::resource: return "resource-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace sdr
