#include "isoform/error.hpp"

namespace isoform {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonUnitInverse: return "NonUnitInverse";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::InvalidRing: return "InvalidRing";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::Degenerate: return "Degenerate";
    case Errc::NonUnitSlot: return "NonUnitSlot";
    case Errc::NotASummand: return "NotASummand";
    case Errc::NotSurjective: return "NotSurjective";
    case Errc::AmbientMismatch: return "AmbientMismatch";
    case Errc::NonUnitNorm: return "NonUnitNorm";
    case Errc::NotIsotropic: return "NotIsotropic";
    case Errc::NotHyperbolic: return "NotHyperbolic";
    case Errc::WrongDimension: return "WrongDimension";
    case Errc::Exhausted: return "Exhausted";
    case Errc::NoDeflection: return "NoDeflection";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void raise(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace isoform
