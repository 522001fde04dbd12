#include "treespace/rational.hpp"

#include <cctype>

namespace treespace {

namespace {

std::size_t scan_digits(std::string_view text, std::size_t pos) {
  std::size_t end = pos;
  while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) {
    ++end;
  }
  return end;
}

}  // namespace

Natural parse_natural(std::string_view text) {
  if (text.empty()) throw ParseError("expected a natural number", 0);
  const std::size_t end = scan_digits(text, 0);
  if (end != text.size()) throw ParseError("expected a digit", end);
  return Natural(std::string(text), 10);
}

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && text[pos] == '-') {
    negative = true;
    ++pos;
  }
  std::size_t end = scan_digits(text, pos);
  if (end == pos) throw ParseError("expected numerator digits", pos);
  Natural num(std::string(text.substr(pos, end - pos)), 10);
  Natural den = 1;
  pos = end;
  if (pos < text.size()) {
    if (text[pos] != '/') throw ParseError("expected '/'", pos);
    ++pos;
    end = scan_digits(text, pos);
    if (end == pos) throw ParseError("expected denominator digits", pos);
    den = Natural(std::string(text.substr(pos, end - pos)), 10);
    if (end != text.size()) throw ParseError("trailing characters", end);
    if (den == 0) throw ParseError("zero denominator", pos);
  }
  Rational value(negative ? Natural(-num) : num, den);
  value.canonicalize();
  return value;
}

std::string format_rational(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

}  // namespace treespace
