#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace treespace {

using Natural = mpz_class;
using Rational = mpq_class;

/// Malformed text input. `position()` is the byte offset of the first
/// offending character.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Accepts "p/q" or "p" with an optional leading '-'. The result is canonical.
Rational parse_rational(std::string_view text);

/// Always "p/q" with q >= 1, e.g. "1/1", "0/1", "-3/4".
std::string format_rational(const Rational& value);

Natural parse_natural(std::string_view text);

}  // namespace treespace
