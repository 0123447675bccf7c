#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modforms {

enum class Errc {
  bad_weight,
  bad_input,
  bad_k,
  bad_n,
  bad_prime,
  bad_range,
  bad_matrix,
  invalid_discriminant,
  zero_leading_coefficient,
  out_of_precision,
  out_of_grid,
  incompatible_grid,
  insufficient_precision,
  not_in_span,
  unsupported_dimension,
  missing_prime,
  inconclusive,
  internal_inconsistency,
  ratio_mismatch,
  not_in_upper_half_plane,
  syntax_error,
  unknown_atom,
};

constexpr std::string_view errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::bad_weight: return "BadWeight";
    case Errc::bad_input: return "BadInput";
    case Errc::bad_k: return "BadK";
    case Errc::bad_n: return "BadN";
    case Errc::bad_prime: return "BadPrime";
    case Errc::bad_range: return "BadRange";
    case Errc::bad_matrix: return "BadMatrix";
    case Errc::invalid_discriminant: return "InvalidDiscriminant";
    case Errc::zero_leading_coefficient: return "ZeroLeadingCoefficient";
    case Errc::out_of_precision: return "OutOfPrecision";
    case Errc::out_of_grid: return "OutOfGrid";
    case Errc::incompatible_grid: return "IncompatibleGrid";
    case Errc::insufficient_precision: return "InsufficientPrecision";
    case Errc::not_in_span: return "NotInSpan";
    case Errc::unsupported_dimension: return "UnsupportedDimension";
    case Errc::missing_prime: return "MissingPrime";
    case Errc::inconclusive: return "Inconclusive";
    case Errc::internal_inconsistency: return "InternalInconsistency";
    case Errc::ratio_mismatch: return "RatioMismatch";
    case Errc::not_in_upper_half_plane: return "NotInUpperHalfPlane";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::unknown_atom: return "UnknownAtom";
  }
  return "Unknown";
}

/// Domain error carrying a machine-readable code.
class Error : public std::domain_error {
 public:
  Error(Errc code, const std::string& what)
      : std::domain_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const char* what) {
  if (!cond) fail(code, what);
}

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace modforms
