#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace matset {

/// A positioned parse failure. `position()` is a byte offset for the formula
/// and expression grammars, and a 1-based line number for graph files.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : std::runtime_error(message), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace matset
