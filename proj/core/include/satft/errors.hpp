#ifndef SATFT_ERRORS_HPP
#define SATFT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace satft {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user-supplied parameter (non-finite amplitude, negative interval, ...).
class InvalidSpecError : public Error {
public:
    using Error::Error;
};

// Malformed input file. Carries the 1-based line number where parsing failed.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Two inputs that must share an epoch grid do not.
class AlignmentError : public Error {
public:
    using Error::Error;
};

// A query or correction falls outside the span covered by the data.
class CoverageError : public Error {
public:
    using Error::Error;
};

// An inter-batch discontinuity could not be resolved to an integer with
// enough confidence. Carries the boundary (fractional MJD) and the margin.
class AmbiguousStitchError : public Error {
public:
    AmbiguousStitchError(const std::string& what, double boundary_mjd, double margin)
        : Error(what), boundary_mjd_(boundary_mjd), margin_(margin) {}
    double boundary_mjd() const { return boundary_mjd_; }
    double margin() const { return margin_; }

private:
    double boundary_mjd_;
    double margin_;
};

} // namespace satft

#endif
