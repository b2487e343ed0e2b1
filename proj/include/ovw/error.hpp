#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ovw {

enum class errc {
  order_violation,
  missing_variable,
  invalid_letter,
  too_many_letters,
  length_mismatch,
  index_out_of_range,
  budget_exceeded,
  not_separated,
  min_too_small,
  empty_set,
  cap_exceeded,
  not_large_enough,
  postcondition_failure,
  schedule_exhausted,
  shape_mismatch,
  not_sparse,
  hj_failure,
  recursion_budget_exceeded,
  malformed_certificate,
  not_total,
  invalid_argument,
};

constexpr std::string_view to_string(errc code) {
  switch (code) {
    case errc::order_violation: return "OrderViolation";
    case errc::missing_variable: return "MissingVariable";
    case errc::invalid_letter: return "InvalidLetter";
    case errc::too_many_letters: return "TooManyLetters";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::not_separated: return "NotSeparated";
    case errc::min_too_small: return "MinTooSmall";
    case errc::empty_set: return "EmptySet";
    case errc::cap_exceeded: return "CapExceeded";
    case errc::not_large_enough: return "NotLargeEnough";
    case errc::postcondition_failure: return "PostconditionFailure";
    case errc::schedule_exhausted: return "ScheduleExhausted";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::not_sparse: return "NotSparse";
    case errc::hj_failure: return "HJFailure";
    case errc::recursion_budget_exceeded: return "RecursionBudgetExceeded";
    case errc::malformed_certificate: return "MalformedCertificate";
    case errc::not_total: return "NotTotal";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failing operation in the library throws this, tagged with a code.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace ovw
