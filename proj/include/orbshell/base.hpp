#ifndef ORBSHELL_BASE_HPP_
#define ORBSHELL_BASE_HPP_

#include <stdexcept>
#include <string>

namespace orbshell {

// Typed failures; each corresponds to a distinct caller-visible condition.
struct NotSubgroup : std::runtime_error {
  explicit NotSubgroup(const std::string& msg) : std::runtime_error(msg) {}
};
struct NotInImage : std::runtime_error {
  explicit NotInImage(const std::string& msg) : std::runtime_error(msg) {}
};
struct NotCoprime : std::runtime_error {
  explicit NotCoprime(const std::string& msg) : std::runtime_error(msg) {}
};
struct CatalogMismatch : std::runtime_error {
  explicit CatalogMismatch(const std::string& msg) : std::runtime_error(msg) {}
};
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};
struct EmptyModel : std::runtime_error {
  explicit EmptyModel(const std::string& msg) : std::runtime_error(msg) {}
};
struct NoSurface : std::runtime_error {
  explicit NoSurface(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] inline void fail(const std::string& msg) {
  throw std::runtime_error(msg);
}

// Internal-consistency check; a failure indicates a defect, not bad input.
inline void check(bool ok, const char* what) {
  if (!ok)
    throw std::logic_error(std::string("internal invariant violated: ") + what);
}
inline void check(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("internal invariant violated: " + what);
}

}  // namespace orbshell

#endif
