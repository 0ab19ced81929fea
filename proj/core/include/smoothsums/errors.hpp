#pragma once

#include <stdexcept>
#include <string>

namespace smoothsums {

// Base class for every domain error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotSquarefreeError : Error { using Error::Error; };
struct NotCoprimeError : Error { using Error::Error; };
struct NoFactorizationError : Error { using Error::Error; };
struct OverflowError : Error { using Error::Error; };
struct ModulusMismatchError : Error { using Error::Error; };
struct NotADivisorError : Error { using Error::Error; };
struct NotPrimitiveError : Error { using Error::Error; };
struct NotPrimeError : Error { using Error::Error; };
struct BadSplitError : Error { using Error::Error; };
struct EmptyFamilyError : Error { using Error::Error; };
struct DegenerateFitError : Error { using Error::Error; };
struct PoleAtOneError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

} // namespace smoothsums
