#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treespace/rational.hpp"

namespace treespace {

/// An ordinal in Cantor normal form: ω^e1·c1 + … + ω^ek·ck with
/// e1 > … > ek and every ci ≥ 1. The empty sum is 0.
///
/// Non-canonical term lists cannot be constructed, so equality is
/// structural. Values are immutable once built.
class Ordinal {
 public:
  struct Term;

  Ordinal() = default;
  Ordinal(std::uint64_t n);  // NOLINT: naturals embed implicitly
  explicit Ordinal(const Natural& n);

  static Ordinal omega();

  /// Throws std::invalid_argument unless exponents strictly decrease and
  /// coefficients are positive.
  static Ordinal from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_finite() const noexcept;
  bool is_successor() const noexcept;
  bool is_limit() const noexcept { return !is_zero() && !is_successor(); }

  /// The natural number this ordinal equals, if it is finite.
  std::optional<Natural> finite_value() const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<Term> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  Natural coefficient;
};

std::strong_ordering compare(const Ordinal& a, const Ordinal& b);

/// Ordinal sum. Terms of `a` below the leading exponent of `b` are absorbed.
Ordinal operator+(const Ordinal& a, const Ordinal& b);

/// a·n for a natural right factor.
Ordinal times(const Ordinal& a, const Natural& n);

Ordinal omega_pow(const Ordinal& exponent);

/// δ·ω = ω^(e+1) where e is the leading exponent of δ. Rejects δ = 0.
Ordinal omega_step(const Ordinal& delta);

/// (exponent, coefficient) of the first CNF term. Rejects 0.
std::pair<Ordinal, Natural> leading(const Ordinal& a);

/// Grammar: ordinal := term ('+' term)* ;
///          term    := 'w^(' ordinal ')' ['*' nat] | 'w' ['*' nat] | nat
/// Terms are combined with ordinal addition. Throws ParseError.
Ordinal parse_ordinal(std::string_view text);

/// Canonical text, e.g. "w^(2)*3+w+1", "0", "w^(w)".
std::string to_string(const Ordinal& a);

}  // namespace treespace
