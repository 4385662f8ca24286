#pragma once

#include <stdexcept>
#include <string>

namespace bbmlab {

/// Failure categories. The CLI maps each one to a distinct exit code.
enum class ErrorKind {
  invalid_argument,
  dimension_mismatch,
  regime_guard,
  unknown_kind,
  empty_mask,
  config_parse,
  config_validation,
  io,
  unsupported,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace bbmlab
