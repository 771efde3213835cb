#ifndef ANYON_ERRORS_HPP
#define ANYON_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace anyon {

// Root of the library's exception hierarchy. The CLI maps each subclass to a
// distinct exit diagnostic.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A documented precondition was violated by the caller.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// An exhaustive search or enumeration would exceed its configured size limit.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// A constructed object failed its own exact post-check.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

// Malformed model spec or matrix file; position is a 0-based character offset.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace anyon

#endif
