#pragma once

#include <stdexcept>
#include <string>

namespace gsr {

// Base for all library failures. Every throw carries a human-readable reason;
// callers that auto-retry at higher precision catch PrecisionExhausted only.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeError : Error {
    using Error::Error;
};
struct DependentInput : Error {
    using Error::Error;
};
struct Singular : Error {
    using Error::Error;
};
struct Reducible : Error {
    using Error::Error;
};
struct PrecisionExhausted : Error {
    using Error::Error;
};
struct NotIntegral : Error {
    using Error::Error;
};
struct DegreeTooSmall : Error {
    using Error::Error;
};
struct Divisibility : Error {
    using Error::Error;
};
struct OrderSearchExceeded : Error {
    using Error::Error;
};
struct PoleProximity : Error {
    using Error::Error;
};
struct WidthNotReached : Error {
    using Error::Error;
};
struct ParamError : Error {
    using Error::Error;
};

}  // namespace gsr
