#include "treespace/ordinal.hpp"

#include <cctype>
#include <stdexcept>

namespace treespace {

Ordinal::Ordinal(std::uint64_t n) : Ordinal(Natural(static_cast<unsigned long>(n))) {}

Ordinal::Ordinal(const Natural& n) {
  if (n < 0) throw std::invalid_argument("ordinal from a negative integer");
  if (n > 0) terms_.push_back(Term{Ordinal{}, n});
}

Ordinal Ordinal::omega() { return omega_pow(Ordinal(1)); }

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient <= 0) {
      throw std::invalid_argument("CNF coefficient must be positive");
    }
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent)) {
      throw std::invalid_argument("CNF exponents must strictly decrease");
    }
  }
  Ordinal out;
  out.terms_ = std::move(terms);
  return out;
}

bool Ordinal::is_finite() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().exponent.is_zero());
}

bool Ordinal::is_successor() const noexcept {
  return !terms_.empty() && terms_.back().exponent.is_zero();
}

std::optional<Natural> Ordinal::finite_value() const {
  if (!is_finite()) return std::nullopt;
  return terms_.empty() ? Natural(0) : terms_.front().coefficient;
}

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (auto c = compare(x[i].exponent, y[i].exponent); c != 0) return c;
    const int k = cmp(x[i].coefficient, y[i].coefficient);
    if (k != 0) return k < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return x.size() <=> y.size();
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) { return compare(a, b); }

bool operator==(const Ordinal& a, const Ordinal& b) { return compare(a, b) == 0; }

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Ordinal& lead = b.terms().front().exponent;
  std::vector<Ordinal::Term> out;
  out.reserve(a.terms().size() + b.terms().size());
  for (const auto& t : a.terms()) {
    if (t.exponent > lead) {
      out.push_back(t);
    } else if (t.exponent == lead) {
      out.push_back(Ordinal::Term{t.exponent, t.coefficient});
      break;
    } else {
      break;
    }
  }
  auto rest = b.terms().begin();
  if (!out.empty() && out.back().exponent == lead) {
    out.back().coefficient += rest->coefficient;
    ++rest;
  }
  out.insert(out.end(), rest, b.terms().end());
  return Ordinal::from_terms(std::move(out));
}

Ordinal times(const Ordinal& a, const Natural& n) {
  if (n < 0) throw std::invalid_argument("negative multiplier");
  if (n == 0 || a.is_zero()) return Ordinal{};
  auto terms = a.terms();
  terms.front().coefficient *= n;
  return Ordinal::from_terms(std::move(terms));
}

Ordinal omega_pow(const Ordinal& exponent) {
  return Ordinal::from_terms({Ordinal::Term{exponent, Natural(1)}});
}

Ordinal omega_step(const Ordinal& delta) {
  if (delta.is_zero()) throw std::invalid_argument("omega_step requires delta >= 1");
  return omega_pow(delta.terms().front().exponent + Ordinal(1));
}

std::pair<Ordinal, Natural> leading(const Ordinal& a) {
  if (a.is_zero()) throw std::invalid_argument("leading term of 0");
  return {a.terms().front().exponent, a.terms().front().coefficient};
}

namespace {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view text) : text_(text) {}

  Ordinal parse_all() {
    Ordinal value = parse_sum();
    if (pos_ != text_.size()) throw ParseError("unexpected character", pos_);
    return value;
  }

 private:
  Ordinal parse_sum() {
    Ordinal value = parse_term();
    while (peek() == '+') {
      ++pos_;
      value = value + parse_term();
    }
    return value;
  }

  Ordinal parse_term() {
    if (peek() == 'w') {
      ++pos_;
      Ordinal exponent(1);
      if (peek() == '^') {
        ++pos_;
        expect('(');
        exponent = parse_sum();
        expect(')');
      }
      Natural coefficient = 1;
      if (peek() == '*') {
        ++pos_;
        const std::size_t at = pos_;
        coefficient = parse_nat();
        if (coefficient == 0) throw ParseError("coefficient must be positive", at);
      }
      return times(omega_pow(exponent), coefficient);
    }
    return Ordinal(parse_nat());
  }

  Natural parse_nat() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected 'w' or a natural number", start);
    return Natural(std::string(text_.substr(start, pos_ - start)), 10);
  }

  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal parse_ordinal(std::string_view text) { return OrdinalParser(text).parse_all(); }

std::string to_string(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& t : a.terms()) {
    if (!out.empty()) out += '+';
    if (t.exponent.is_zero()) {
      out += t.coefficient.get_str();
      continue;
    }
    if (t.exponent == Ordinal(1)) {
      out += "w";
    } else {
      out += "w^(" + to_string(t.exponent) + ")";
    }
    if (t.coefficient != 1) out += "*" + t.coefficient.get_str();
  }
  return out;
}

}  // namespace treespace
