#pragma once

#include <stdexcept>
#include <string>

namespace hypk {

// One exception type per failure kind so callers can route on type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define HYPK_ERROR(Name)                         \
    struct Name : Error {                        \
        using Error::Error;                      \
    }

HYPK_ERROR(DomainError);
HYPK_ERROR(NotHyperbolic);
HYPK_ERROR(NumericallyAmbiguous);
HYPK_ERROR(ValidationFailed);
HYPK_ERROR(BudgetExceeded);
HYPK_ERROR(DegenerateBasis);
HYPK_ERROR(SharedGeodesic);
HYPK_ERROR(BallTooSmall);
HYPK_ERROR(RegimeViolation);
HYPK_ERROR(CurveDisjoint);
HYPK_ERROR(EmptyTable);
HYPK_ERROR(NoDualFound);
HYPK_ERROR(RankDeficient);
HYPK_ERROR(NotFound);
HYPK_ERROR(AmbiguousSide);
HYPK_ERROR(BudgetExhausted);
HYPK_ERROR(ParseError);

#undef HYPK_ERROR

}  // namespace hypk
