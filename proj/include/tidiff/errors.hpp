#pragma once

#include <stdexcept>
#include <string>

namespace tidiff {

/// Base class for every library error.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error { using Error::Error; };
class StabilityViolation : public Error { using Error::Error; };
class OnSlownessSurface : public Error { using Error::Error; };
class DegenerateDirection : public Error { using Error::Error; };
class UnsupportedIncidence : public Error { using Error::Error; };
class OrderingViolation : public Error { using Error::Error; };
class NoRayleighRoot : public Error { using Error::Error; };
class PoleCoalescence : public Error { using Error::Error; };
class OnCut : public Error { using Error::Error; };
class SingularGSystem : public Error { using Error::Error; };
class EvanescentMode : public Error { using Error::Error; };

/// Observation direction lies in the crack plane (theta = 0 or 180 deg).
class OnCrackFace : public Error { using Error::Error; };

}  // namespace tidiff
