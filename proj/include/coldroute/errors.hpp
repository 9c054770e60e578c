#ifndef COLDROUTE_ERRORS_HPP
#define COLDROUTE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coldroute {

// Malformed or unreadable input files.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// An instance or solution violates a structural invariant.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// The requested plan cannot exist (e.g. more routes than vehicles).
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coldroute

#endif
