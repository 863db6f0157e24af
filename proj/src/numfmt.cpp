#include "cdd/numfmt.hpp"

#include <array>
#include <charconv>

namespace cdd {

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string format_fixed(double value, int decimals) {
  std::array<char, 512> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
  std::string out(buf.data(), ptr);
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

std::string format_significant(double value, int digits) {
  if (value == 0.0) value = 0.0;
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, digits);
  std::string out(buf.data(), ptr);
  if (out.find_first_not_of("-0.") == std::string::npos) return "0";
  return out;
}

}  // namespace cdd
