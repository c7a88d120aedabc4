#ifndef TRILOC_ERRORS_HPP
#define TRILOC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace triloc {

/// Base class for all domain errors. `code()` is stable and machine-readable.
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

  private:
    std::string code_;
};

#define TRILOC_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                         \
      public:                                                           \
        explicit Name(const std::string& detail) : Error(#Name, detail) {} \
    }

TRILOC_DEFINE_ERROR(NonUnitaryOperator);
TRILOC_DEFINE_ERROR(ZeroProbabilityOutcome);
TRILOC_DEFINE_ERROR(EnsembleExhausted);
TRILOC_DEFINE_ERROR(NotGhzClass);
TRILOC_DEFINE_ERROR(DegeneratePencil);
TRILOC_DEFINE_ERROR(OutcomeLeftGhzClass);
TRILOC_DEFINE_ERROR(StructureViolation);
TRILOC_DEFINE_ERROR(RootRefinementFailed);
TRILOC_DEFINE_ERROR(OnlyComplexCommonRoots);
TRILOC_DEFINE_ERROR(OnlyConjugateOrbitOutcomes);
TRILOC_DEFINE_ERROR(OutOfRange);
TRILOC_DEFINE_ERROR(GateConditionViolated);
TRILOC_DEFINE_ERROR(BranchCorrectionFailed);
TRILOC_DEFINE_ERROR(NotGhzOrbit);
TRILOC_DEFINE_ERROR(ParseError);
TRILOC_DEFINE_ERROR(NotNormalized);

#undef TRILOC_DEFINE_ERROR

}  // namespace triloc

#endif
