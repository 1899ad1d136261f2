#include "potts/rational.hpp"

#include <charconv>
#include <numeric>

#include "potts/errors.hpp"

namespace potts {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ArgumentError("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {

std::int64_t parse_integer(const std::string& text, const std::string& whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    throw ArgumentError("Rational: cannot parse '" + whole + "'");
  return value;
}

} // namespace

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text, text));
  return Rational(parse_integer(text.substr(0, slash), text),
                  parse_integer(text.substr(slash + 1), text));
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

bool operator<(const Rational& a, const Rational& b) {
  return a.num_ * b.den_ < b.num_ * a.den_;
}

Rational kac_weight(int r, int s) {
  if (r < 1 || r > 2 || s < 1 || s > 5)
    throw ArgumentError("kac_weight: need 1 <= r <= 2 and 1 <= s <= 5");
  const std::int64_t d = 6 * r - 5 * s;
  return Rational(d * d - 1, 120);
}

} // namespace potts
