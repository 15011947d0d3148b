#pragma once

#include <stdexcept>
#include <string>

namespace ptolemy {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define PTOLEMY_ERROR(Name)                        \
    class Name : public Error {                    \
    public:                                        \
        explicit Name(const std::string& what)     \
            : Error(#Name ": " + what) {}          \
    };

PTOLEMY_ERROR(NonAdmissible)
PTOLEMY_ERROR(MixedInfinity)
PTOLEMY_ERROR(DegenerateQuadruple)
PTOLEMY_ERROR(DegenerateInput)
PTOLEMY_ERROR(NonHorizontalDirection)
PTOLEMY_ERROR(NonConvergence)
PTOLEMY_ERROR(NonAffine)
PTOLEMY_ERROR(NoSolution)
PTOLEMY_ERROR(ParameterizationFailure)
PTOLEMY_ERROR(NonCauchy)
PTOLEMY_ERROR(IterationDivergence)
PTOLEMY_ERROR(HorosphereMiss)
PTOLEMY_ERROR(OrderingViolation)
PTOLEMY_ERROR(ConfigError)
PTOLEMY_ERROR(IOError)

#undef PTOLEMY_ERROR

}  // namespace ptolemy
