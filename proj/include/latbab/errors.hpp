#pragma once

#include <stdexcept>
#include <string>

namespace latbab {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define LATBAB_DEFINE_ERROR(Name)                                \
    class Name : public Error {                                  \
    public:                                                      \
        explicit Name(const std::string& msg) : Error(msg) {}    \
    }

LATBAB_DEFINE_ERROR(SingularMatrix);
LATBAB_DEFINE_ERROR(NoRationalWithinTolerance);
LATBAB_DEFINE_ERROR(DegenerateInput);
LATBAB_DEFINE_ERROR(Unbounded);
LATBAB_DEFINE_ERROR(UnsupportedDimension);
LATBAB_DEFINE_ERROR(NoObtuseSuperbaseFound);
LATBAB_DEFINE_ERROR(UnknownLattice);
LATBAB_DEFINE_ERROR(ZeroDiagonal);
LATBAB_DEFINE_ERROR(DimensionTooLarge);
LATBAB_DEFINE_ERROR(MissingMessage);
LATBAB_DEFINE_ERROR(BudgetExceeded);
LATBAB_DEFINE_ERROR(UnsupportedForExact);
LATBAB_DEFINE_ERROR(PreconditionViolation);
LATBAB_DEFINE_ERROR(DensityOutOfRange);
LATBAB_DEFINE_ERROR(ConditionFailed);
LATBAB_DEFINE_ERROR(HypothesisFailed);
LATBAB_DEFINE_ERROR(ParseError);
LATBAB_DEFINE_ERROR(DimensionMismatch);

#undef LATBAB_DEFINE_ERROR

}  // namespace latbab
