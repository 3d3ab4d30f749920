#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isoform {

enum class Errc {
  NonUnitInverse,
  RingMismatch,
  InvalidRing,
  DimensionMismatch,
  Degenerate,
  NonUnitSlot,
  NotASummand,
  NotSurjective,
  AmbientMismatch,
  NonUnitNorm,
  NotIsotropic,
  NotHyperbolic,
  WrongDimension,
  Exhausted,
  NoDeflection,
  PreconditionViolated,
  OutOfRange,
  BudgetExceeded,
  InvariantViolation,
  Parse,
};

std::string_view to_string(Errc code) noexcept;

/// Base exception for every failure raised by the library. The code is
/// stable and is what callers (and the CLI exit-code mapping) switch on.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& message);

inline void require(bool condition, Errc code, const std::string& message) {
  if (!condition) raise(code, message);
}

}  // namespace isoform
