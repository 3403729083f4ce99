#ifndef DYNDMA_ERRORS_HPP
#define DYNDMA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dyndma {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised by the file parsers; carries the 1-based input line.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const { return line_; }

private:
    int line_ = 0;
};

// Raised by the hydraulic solver (disconnection, singular system).
class SolverError : public Error {
public:
    explicit SolverError(const std::string& what) : Error(what) {}
};

} // namespace dyndma

#endif
