#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace cdd::logic {

// Exact rational in lowest terms with a positive denominator. Arithmetic is
// checked: any result whose numerator or denominator leaves int64 throws
// Errc::EvaluationOverflow.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }
  bool is_integer() const noexcept { return den_ == 1; }

  // Accepts "12", "-3/4", "0.25", "1.5e3".
  static Rational parse(std::string_view text);

  std::string to_string() const;
  double to_double() const noexcept;

  // Largest of |numerator| and denominator; used for magnitude bounds.
  std::uint64_t magnitude() const noexcept;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace cdd::logic
