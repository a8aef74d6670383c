#pragma once

#include <stdexcept>
#include <string>

namespace qgv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct NotInvolution : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct WrongArity : Error { using Error::Error; };
struct EnsembleNotUniform : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct EpsilonTooSmall : Error { using Error::Error; };
struct NotCertifiable : Error { using Error::Error; };
struct InsufficientPoints : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace qgv
