#pragma once
#include <stdexcept>
#include <string>

namespace dunkl {

// Everything thrown by the library derives from Error so callers (the CLI in
// particular) can map failures onto exit codes without string matching.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error { using Error::Error; };
class Unsupported     : public Error { using Error::Error; };
class DomainError     : public Error { using Error::Error; };   // point outside / too close to a wall
class NotConverged    : public Error { using Error::Error; };
class PochhammerZero  : public Error { using Error::Error; };
class RangeViolation  : public Error { using Error::Error; };
class StepCollapse    : public Error { using Error::Error; };

inline void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidArgument(what);
}

} // namespace dunkl
