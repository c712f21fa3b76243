#pragma once
#include <stdexcept>
#include <string>

namespace tangle {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define TANGLE_ERROR(Name)                       \
    struct Name : Error {                        \
        using Error::Error;                      \
    }

TANGLE_ERROR(NonUnitConstantTerm);
TANGLE_ERROR(NotDivisibleByN);
TANGLE_ERROR(InsufficientTableOrder);
TANGLE_ERROR(UnsupportedLegCount);
TANGLE_ERROR(BudgetExceeded);
TANGLE_ERROR(CalibrationError);
TANGLE_ERROR(UnmappedPattern);
TANGLE_ERROR(DegenerateWindow);
TANGLE_ERROR(NonPositiveEntry);
TANGLE_ERROR(OutOfRange);
TANGLE_ERROR(CacheVersionMismatch);
TANGLE_ERROR(ResidualNonZero);
TANGLE_ERROR(ParseError);

#undef TANGLE_ERROR

}  // namespace tangle
