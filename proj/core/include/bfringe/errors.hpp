#ifndef BFRINGE_ERRORS_HPP
#define BFRINGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bfringe {

/// Raised when an iterative numeric routine (Newton search, series solve)
/// fails to converge or produces a degenerate coefficient.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an operation valid only in one phase (small m vs large m)
/// is asked about the other one.
class phase_error : public std::invalid_argument {
public:
    explicit phase_error(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace bfringe

#endif
