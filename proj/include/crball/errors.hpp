#pragma once

#include <stdexcept>
#include <string>

namespace crball {

/// Base of every exception thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define CRBALL_DEFINE_ERROR(Name)                                   \
    struct Name : Error {                                           \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

CRBALL_DEFINE_ERROR(DivisionByZero);
CRBALL_DEFINE_ERROR(ParseError);
CRBALL_DEFINE_ERROR(RegistryMismatch);
CRBALL_DEFINE_ERROR(UnknownVariable);
CRBALL_DEFINE_ERROR(NonSquare);
CRBALL_DEFINE_ERROR(IndexOutOfRange);
CRBALL_DEFINE_ERROR(DecompositionMismatch);
CRBALL_DEFINE_ERROR(RankPreconditionFailed);
CRBALL_DEFINE_ERROR(InvalidRank);
CRBALL_DEFINE_ERROR(UnsupportedRank);
CRBALL_DEFINE_ERROR(JetInvariantViolated);
CRBALL_DEFINE_ERROR(SingularB);
CRBALL_DEFINE_ERROR(IndexLengthMismatch);
CRBALL_DEFINE_ERROR(NotProper);
CRBALL_DEFINE_ERROR(DimensionMismatch);
CRBALL_DEFINE_ERROR(PointNotOnBoundary);

#undef CRBALL_DEFINE_ERROR

} // namespace crball
