#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ppf {

inline constexpr int kIndexFractionDigits = 12;

// Nonnegative decimal with an explicit digit string. Digit vectors are
// little-endian away from the decimal point: int_digits[n] is the 10^n
// digit, frac_digits[m] is the 10^-(m+1) digit. Numeric comparison ignores
// leading and trailing zeros; the stored precision is kept for display.
class IndexValue {
 public:
  IndexValue() = default;

  static IndexValue from_integer(std::uint64_t value, int fraction_digits = kIndexFractionDigits);
  // Parses "123", "12.5", "0.000001"; throws BadParameters on anything else.
  static IndexValue parse(std::string_view text);

  int fraction_digits() const noexcept { return static_cast<int>(frac_.size()); }
  // 10^n digit for any integer n (zero outside the stored range).
  int digit(int n) const noexcept;

  long double to_long_double() const noexcept;
  std::string to_string() const;

  std::strong_ordering operator<=>(const IndexValue& other) const noexcept;
  bool operator==(const IndexValue& other) const noexcept { return (*this <=> other) == 0; }

  std::size_t hash() const noexcept;

  // Places this value's 10^n digit at 10^(2n) and other's 10^k digit at 10^(2k+1).
  IndexValue interleave(const IndexValue& other) const;

 private:
  std::vector<std::uint8_t> int_;
  std::vector<std::uint8_t> frac_;
};

// Digit-interleaving index of an unordered pair: the larger of the two
// interleavings. Symmetric; injective on unordered pairs of distinct values.
// Throws EqualIndices when the values coincide.
IndexValue pair_index(const IndexValue& a, const IndexValue& b);

}  // namespace ppf
