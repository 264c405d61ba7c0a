#ifndef KSUB_ERROR_HPP_
#define KSUB_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ksub {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input that does not describe a valid assignment, instance, or oracle.
class MalformedInput : public Error {
public:
    using Error::Error;
};

/// A call whose documented precondition does not hold (e.g. adding an item
/// that is already assigned).
class PreconditionViolated : public Error {
public:
    using Error::Error;
};

/// Exhaustive enumeration would exceed the configured state cap.
class SizeLimitExceeded : public Error {
public:
    using Error::Error;
};

/// Numeric input for which the requested quantity is undefined.
class DegenerateInput : public Error {
public:
    using Error::Error;
};

} // namespace ksub

#endif // KSUB_ERROR_HPP_
