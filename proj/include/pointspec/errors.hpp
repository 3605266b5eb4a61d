#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pointspec {

// Exit-code buckets used by the CLI: 2 bad input, 3 numerical failure,
// 4 resolution limit / degenerate family.
enum class ErrorKind : int { input = 2, numerical = 3, degenerate = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(what), kind_(kind), code_(std::move(code)) {}
  ErrorKind kind() const { return kind_; }
  const std::string& code() const { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

#define POINTSPEC_ERROR(Name, kind, code)                         \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what)                        \
        : Error(ErrorKind::kind, code, what) {}                   \
  }

POINTSPEC_ERROR(BranchPointError, input, "branch_point");
POINTSPEC_ERROR(AmbiguousBoundaryError, input, "ambiguous_boundary");
POINTSPEC_ERROR(ParseError, input, "parse");
POINTSPEC_ERROR(ValidationError, input, "validation");
POINTSPEC_ERROR(PoleError, input, "pole");
POINTSPEC_ERROR(CriterionViolatedError, input, "criterion_violated");
POINTSPEC_ERROR(ParityUndecidableError, input, "parity_undecidable");
POINTSPEC_ERROR(NonRealCouplingError, input, "non_real_coupling");

POINTSPEC_ERROR(QuadratureError, numerical, "quadrature");
POINTSPEC_ERROR(ContourThroughZeroError, numerical, "contour_through_zero");
POINTSPEC_ERROR(NonIntegerIndexError, numerical, "non_integer_index");

POINTSPEC_ERROR(DegenerateFamilyError, degenerate, "degenerate_family");
POINTSPEC_ERROR(ResolutionError, degenerate, "resolution");

#undef POINTSPEC_ERROR

}  // namespace pointspec
