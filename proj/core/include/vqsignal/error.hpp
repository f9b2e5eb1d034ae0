#pragma once

#include <stdexcept>
#include <string>

namespace vqsignal {

// Malformed or inconsistent user input.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Requested dimension exceeds what the exact enumerators support.
class UnsupportedDimension : public std::runtime_error {
 public:
  explicit UnsupportedDimension(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vqsignal
