#pragma once

#include <stdexcept>
#include <string>

namespace heckegrid {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested coefficient or window lies outside what the inputs determine.
class PrecisionError : public Error {
public:
    using Error::Error;
};

/// Series with incompatible exponent denominators were combined.
class TickError : public Error {
public:
    using Error::Error;
};

class DivisionByZeroError : public Error {
public:
    using Error::Error;
};

/// An argument is outside the supported domain (bad weight, non-prime, matrix not in the group, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A coefficient expected to be an integer (or p-integral) is not.
class IntegralityError : public Error {
public:
    using Error::Error;
};

/// Ladder elimination hit a state that valid inputs cannot produce.
class ConstructionError : public Error {
public:
    using Error::Error;
};

} // namespace heckegrid
