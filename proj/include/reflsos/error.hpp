#pragma once

#include <stdexcept>
#include <string>

namespace rsos {

enum class Errc {
  invalid_argument = 1,
  dimension_mismatch = 2,
  not_invariant = 3,
  parse_error = 4,
  budget_exceeded = 5,
  verification_failed = 6,
  precondition = 7,
  io_error = 8,
  internal = 9,
};

class Error : public std::runtime_error {
public:
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool ok, Errc c, const std::string& msg) {
  if (!ok) fail(c, msg);
}

}  // namespace rsos
