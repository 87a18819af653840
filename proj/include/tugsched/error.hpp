#pragma once

#include <stdexcept>
#include <string>

namespace tug {

/// Base of every error raised by the solver kit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define TUG_DEFINE_ERROR(Name)              \
    class Name : public Error {             \
    public:                                 \
        using Error::Error;                 \
    };

TUG_DEFINE_ERROR(SchemaError)
TUG_DEFINE_ERROR(InconsistentError)
TUG_DEFINE_ERROR(NegativeLoad)
TUG_DEFINE_ERROR(TooLarge)
TUG_DEFINE_ERROR(Infeasible)
TUG_DEFINE_ERROR(InsufficientBarges)
TUG_DEFINE_ERROR(NothingToRemove)
TUG_DEFINE_ERROR(EmptyBank)
TUG_DEFINE_ERROR(UnknownPreset)
TUG_DEFINE_ERROR(MismatchedInstance)

#undef TUG_DEFINE_ERROR

}  // namespace tug
