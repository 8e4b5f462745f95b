#ifndef COUPLER_ERRORS_HPP
#define COUPLER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coupler {

// Invalid or out-of-range input to an operation.
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// An algorithm failed to reach its accuracy/convergence target.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file; message carries the line number where known.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace coupler

#endif  // COUPLER_ERRORS_HPP
