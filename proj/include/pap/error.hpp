#pragma once

#include <stdexcept>
#include <string>

namespace pap {

/// Failure categories surfaced by the library. The CLI maps ResourceCap to
/// exit code 2 and everything else to exit code 1.
enum class Errc {
  DivisionByZero,
  MixedFields,
  BadScalar,
  BadPartition,
  NotBijective,
  OutOfDomain,
  ResourceCap,
  NoFinitePartition,
  NotStabilized,
  NullAttractor,
  StabilizedAttractor,
  DegenerateArrangement,
  BadPolygon,
  BadConfig,
  IoError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace pap
