#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wdcond {

enum class ErrorKind {
  invalid_argument,
  order_cap_exceeded,
  not_prime,
  not_descending,
  bad_chain_start,
  index_out_of_range,
  non_character,
  non_rational,
  not_irreducible,
  not_symplectic,
  not_rational,
  not_p_group,
  model_mismatch,
  not_semistable,
  precondition,
  negative_exponent,
  inconsistent_input,
  invalid_unit,
  lifting_failed,
  input_error,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::order_cap_exceeded: return "OrderCapExceeded";
    case ErrorKind::not_prime: return "NotPrime";
    case ErrorKind::not_descending: return "NotDescending";
    case ErrorKind::bad_chain_start: return "BadChainStart";
    case ErrorKind::index_out_of_range: return "IndexOutOfRange";
    case ErrorKind::non_character: return "NonCharacter";
    case ErrorKind::non_rational: return "NonRational";
    case ErrorKind::not_irreducible: return "NotIrreducible";
    case ErrorKind::not_symplectic: return "NotSymplectic";
    case ErrorKind::not_rational: return "NotRational";
    case ErrorKind::not_p_group: return "NotPGroup";
    case ErrorKind::model_mismatch: return "ModelMismatch";
    case ErrorKind::not_semistable: return "NotSemistable";
    case ErrorKind::precondition: return "PreconditionViolation";
    case ErrorKind::negative_exponent: return "NegativeExponent";
    case ErrorKind::inconsistent_input: return "InconsistentInput";
    case ErrorKind::invalid_unit: return "InvalidUnit";
    case ErrorKind::lifting_failed: return "LiftingFailed";
    case ErrorKind::input_error: return "InputError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace wdcond
