#pragma once

#include <stdexcept>
#include <string>

namespace evcp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InfeasibleSpec : public Error { using Error::Error; };
class NoCandidates : public Error { using Error::Error; };
class ParseError : public Error { using Error::Error; };
class ValidationError : public Error { using Error::Error; };
class ZeroPOIs : public Error { using Error::Error; };
class LengthMismatch : public Error { using Error::Error; };
class EmptySampleSet : public Error { using Error::Error; };
class NoChargers : public Error { using Error::Error; };
class EmptyRuns : public Error { using Error::Error; };
class SeedShapeMismatch : public Error { using Error::Error; };
class InvalidMethod : public Error { using Error::Error; };
class InvalidConfig : public Error { using Error::Error; };

}  // namespace evcp
