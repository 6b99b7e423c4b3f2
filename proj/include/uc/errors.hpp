#pragma once

#include <stdexcept>
#include <string>

namespace uc {

// Base class for every error raised by the library. The CLI maps the
// subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PresentationMismatch : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

class Undecidable : public Error {
public:
    using Error::Error;
};

class NotInvertible : public Error {
public:
    using Error::Error;
};

class OutOfDomain : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

class NotNumericalSemigroup : public Error {
public:
    using Error::Error;
};

class GluingHypothesis : public Error {
public:
    using Error::Error;
};

// A Laurent expansion has a term that is not allowed by the semigroup.
class ExtensionViolation : public Error {
public:
    using Error::Error;
};

// Computation would exceed the configured rank budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

// An internal assertion failed: either a bug or a genuine discrepancy
// with a claimed identity.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace uc
