#include "cdd/logic/rational.hpp"

#include "cdd/error.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>

namespace cdd::logic {

namespace {

__extension__ typedef __int128 Wide;

Wide wide_abs(Wide v) { return v < 0 ? -v : v; }

Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(Wide v) {
  return v >= std::numeric_limits<std::int64_t>::min() + 1 &&
         v <= std::numeric_limits<std::int64_t>::max();
}

Rational reduce(Wide num, Wide den) {
  if (den == 0) throw Error(Errc::EvaluationOverflow, "division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits(num) || !fits(den)) throw Error(Errc::EvaluationOverflow, "rational exceeds 64 bits");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc::result_out_of_range)
    throw Error(Errc::EvaluationOverflow, "integer literal too large: " + std::string(text));
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw Error(Errc::SyntaxError, "malformed rational: " + std::string(text));
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(Errc::EvaluationOverflow, "zero denominator");
  Wide n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Wide g = wide_gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (!fits(n) || !fits(d)) throw Error(Errc::EvaluationOverflow, "rational exceeds 64 bits");
  num_ = static_cast<std::int64_t>(n);
  den_ = static_cast<std::int64_t>(d);
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw Error(Errc::SyntaxError, "empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));

  std::string_view mantissa = text;
  std::int64_t exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    exponent = parse_int(exp_text);
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
    exponent -= static_cast<std::int64_t>(mantissa.size() - dot - 1);
  } else {
    digits = std::string(mantissa);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw Error(Errc::SyntaxError, "malformed rational: " + std::string(text));
  // Leading zeros do not contribute to magnitude.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  if (exponent > 18 || exponent < -18)
    throw Error(Errc::EvaluationOverflow, "exponent out of range: " + std::string(text));

  Rational value(parse_int(digits));
  Rational scale(1);
  for (std::int64_t i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) scale = scale * Rational(10);
  value = exponent < 0 ? value / scale : value * scale;
  return negative ? -value : value;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

double Rational::to_double() const noexcept {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::uint64_t Rational::magnitude() const noexcept {
  std::uint64_t n = num_ < 0 ? static_cast<std::uint64_t>(-(num_ + 1)) + 1 : static_cast<std::uint64_t>(num_);
  return std::max(n, static_cast<std::uint64_t>(den_));
}

Rational operator+(const Rational& a, const Rational& b) {
  return reduce(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return reduce(Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return reduce(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error(Errc::EvaluationOverflow, "division by zero");
  return reduce(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
}

Rational Rational::operator-() const { return reduce(-Wide(num_), Wide(den_)); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide lhs = Wide(a.num_) * b.den_;
  Wide rhs = Wide(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace cdd::logic
