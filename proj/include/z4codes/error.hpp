#ifndef Z4CODES_ERROR_HPP
#define Z4CODES_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace z4 {

/// A request that is well-formed but mathematically invalid (even n, non-monic
/// divisor, zero code, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Malformed text input. `line()` is 1-based, 0 when not applicable.
class ParseError : public std::invalid_argument {
public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : std::invalid_argument(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace z4

#endif // Z4CODES_ERROR_HPP
