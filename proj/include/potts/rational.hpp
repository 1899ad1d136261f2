#pragma once

#include <cstdint>
#include <string>

namespace potts {

/// Exact fraction with a positive denominator, kept in lowest terms.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// "p/q", or "p" when q = 1.
  std::string str() const;

  /// Parses "p/q" or "p"; throws ArgumentError otherwise.
  static Rational parse(const std::string& text);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(const Rational& a, const Rational& b);

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Conformal weight ((6r - 5s)^2 - 1) / 120 of the c = 4/5 Kac table,
/// 1 <= r <= 2, 1 <= s <= 5.
Rational kac_weight(int r, int s);

} // namespace potts
