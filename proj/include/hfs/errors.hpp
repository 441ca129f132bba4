#ifndef HFS_ERRORS_HPP
#define HFS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hfs {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid user-supplied data: parse failures, violated preconditions on
// inputs, mismatched field descriptors. CLI maps these to exit code 2.
class InputError : public Error {
public:
    explicit InputError(const std::string& msg) : Error(msg) {}
};

// A configured size/work cap was exceeded. CLI maps these to exit code 3.
class CapError : public Error {
public:
    explicit CapError(const std::string& msg) : Error(msg) {}
};

// A theoretical invariant failed at runtime. Signals a bug upstream, never
// bad user input.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

} // namespace hfs

#endif
