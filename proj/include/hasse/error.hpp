#pragma once

#include <stdexcept>
#include <string>

namespace hasse {

// Base for every domain error raised by the library. The CLI reports these
// as usage/input errors (exit code 2).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define HASSE_DEFINE_ERROR(Name)                  \
    class Name : public Error {                   \
    public:                                       \
        explicit Name(const std::string& what)    \
            : Error(#Name ": " + what) {}         \
    }

HASSE_DEFINE_ERROR(NotPrime);
HASSE_DEFINE_ERROR(DimensionMismatch);
HASSE_DEFINE_ERROR(NonInvertibleGenerator);
HASSE_DEFINE_ERROR(HypothesisNotMet);
HASSE_DEFINE_ERROR(Unsupported);
HASSE_DEFINE_ERROR(GroupMismatch);
HASSE_DEFINE_ERROR(NotSubgroup);
HASSE_DEFINE_ERROR(NotNormal);
HASSE_DEFINE_ERROR(NotSurjective);
HASSE_DEFINE_ERROR(NotHomomorphism);
HASSE_DEFINE_ERROR(GroupTooLarge);
HASSE_DEFINE_ERROR(NotCyclic);
HASSE_DEFINE_ERROR(BadReduction);
HASSE_DEFINE_ERROR(SingularCurve);
HASSE_DEFINE_ERROR(DivisionByZero);
HASSE_DEFINE_ERROR(EtaleFailure);
HASSE_DEFINE_ERROR(PrecisionExhausted);
HASSE_DEFINE_ERROR(PolicyExhausted);
HASSE_DEFINE_ERROR(TwoTorsionInput);
HASSE_DEFINE_ERROR(SupersingularInput);
HASSE_DEFINE_ERROR(ParseError);

#undef HASSE_DEFINE_ERROR

}  // namespace hasse
