#pragma once

#include <stdexcept>
#include <string>

namespace cmdsdml {

/// Thrown when an iterative solver produces non-finite values; carries the
/// iteration at which the failure was detected.
class numerical_error : public std::runtime_error {
public:
    numerical_error(const std::string& what, int iteration)
        : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
          iteration_(iteration) {}

    int iteration() const { return iteration_; }

private:
    int iteration_;
};

/// Malformed input file; carries the 1-based line number.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, long line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    long line() const { return line_; }

private:
    long line_;
};

}  // namespace cmdsdml
