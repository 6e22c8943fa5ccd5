#ifndef KSTAB_ERRORS_HPP
#define KSTAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kstab {

// Bad user input: malformed expressions, unbound variables, unknown case ids.
// The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Inconsistent case data: singular pairing matrices, tensor gates failing,
// schedule defects.  Loading a shipped case must never throw this.
class CaseDataError : public std::runtime_error {
public:
    explicit CaseDataError(const std::string& what) : std::runtime_error(what) {}
};

// An exact identity that was expected to hold did not.  The CLI maps this
// to exit code 1.
class VerificationError : public std::runtime_error {
public:
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace kstab

#endif
