#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

// A computation exceeded a configured cap (enumeration size, word length...).
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed; results would be wrong.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The request is well-formed but not supported (e.g. a braid order).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void check_internal(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

}  // namespace hecke
