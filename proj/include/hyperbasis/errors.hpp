#ifndef HYPERBASIS_ERRORS_HPP
#define HYPERBASIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hyperbasis {

// Parameter outside the range where a family or measure is defined.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Bad call argument: negative degree, point off the domain, margin violation.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Well-posed request that the library does not implement.
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr const char* kVersion = "1.0.0";

}  // namespace hyperbasis

#endif
