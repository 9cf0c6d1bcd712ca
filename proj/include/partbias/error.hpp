#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace partbias {

enum class errc {
  disjointness_violation,
  non_positive_part,
  empty_rs,
  gcd_hypothesis_violated,
  degenerate_denominator,
  inconsistent_input,
  budget_exceeded,
  quadrature_not_converged,
  invalid_progression,
  precondition_violated,
};

constexpr std::string_view error_name(errc code) noexcept {
  switch (code) {
    case errc::disjointness_violation: return "DisjointnessViolation";
    case errc::non_positive_part: return "NonPositivePart";
    case errc::empty_rs: return "EmptyRS";
    case errc::gcd_hypothesis_violated: return "GcdHypothesisViolated";
    case errc::degenerate_denominator: return "DegenerateDenominator";
    case errc::inconsistent_input: return "InconsistentInput";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::quadrature_not_converged: return "QuadratureNotConverged";
    case errc::invalid_progression: return "InvalidProgression";
    case errc::precondition_violated: return "PreconditionViolated";
  }
  return "UnknownError";
}

/// Every failure raised by the library carries one of the named codes above.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw error(code, what);
}

}  // namespace partbias
