#include "core/index_value.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace ppf {

IndexValue IndexValue::from_integer(std::uint64_t value, int fraction_digits) {
  IndexValue v;
  do {
    v.int_.push_back(static_cast<std::uint8_t>(value % 10));
    value /= 10;
  } while (value != 0);
  v.frac_.assign(static_cast<std::size_t>(std::max(fraction_digits, 0)), 0);
  return v;
}

IndexValue IndexValue::parse(std::string_view text) {
  const auto dot = text.find('.');
  const std::string_view ipart = text.substr(0, dot);
  const std::string_view fpart = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (ipart.empty() && fpart.empty()) throw Error(ErrorCode::kBadParameters, "empty index value");
  IndexValue v;
  for (auto it = ipart.rbegin(); it != ipart.rend(); ++it) {
    if (*it < '0' || *it > '9') throw Error(ErrorCode::kBadParameters, "bad digit in index value");
    v.int_.push_back(static_cast<std::uint8_t>(*it - '0'));
  }
  if (v.int_.empty()) v.int_.push_back(0);
  for (char c : fpart) {
    if (c < '0' || c > '9') throw Error(ErrorCode::kBadParameters, "bad digit in index value");
    v.frac_.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return v;
}

int IndexValue::digit(int n) const noexcept {
  if (n >= 0) return static_cast<std::size_t>(n) < int_.size() ? int_[static_cast<std::size_t>(n)] : 0;
  const auto m = static_cast<std::size_t>(-n - 1);
  return m < frac_.size() ? frac_[m] : 0;
}

long double IndexValue::to_long_double() const noexcept {
  long double v = 0.0L;
  for (auto it = int_.rbegin(); it != int_.rend(); ++it) v = v * 10.0L + *it;
  long double scale = 0.1L;
  for (std::uint8_t d : frac_) {
    v += d * scale;
    scale /= 10.0L;
  }
  return v;
}

std::string IndexValue::to_string() const {
  std::string s;
  std::size_t top = int_.size();
  while (top > 1 && int_[top - 1] == 0) --top;
  for (std::size_t i = top; i-- > 0;) s.push_back(static_cast<char>('0' + int_[i]));
  if (s.empty()) s = "0";
  if (!frac_.empty()) {
    s.push_back('.');
    for (std::uint8_t d : frac_) s.push_back(static_cast<char>('0' + d));
  }
  return s;
}

std::strong_ordering IndexValue::operator<=>(const IndexValue& other) const noexcept {
  auto significant = [](const std::vector<std::uint8_t>& digits) {
    std::size_t n = digits.size();
    while (n > 0 && digits[n - 1] == 0) --n;
    return n;
  };
  const std::size_t ia = significant(int_);
  const std::size_t ib = significant(other.int_);
  if (ia != ib) return ia <=> ib;
  for (std::size_t i = ia; i-- > 0;) {
    if (int_[i] != other.int_[i]) return int_[i] <=> other.int_[i];
  }
  const std::size_t fmax = std::max(frac_.size(), other.frac_.size());
  for (std::size_t m = 0; m < fmax; ++m) {
    const int da = m < frac_.size() ? frac_[m] : 0;
    const int db = m < other.frac_.size() ? other.frac_[m] : 0;
    if (da != db) return da <=> db;
  }
  return std::strong_ordering::equal;
}

std::size_t IndexValue::hash() const noexcept {
  // FNV-1a over the normalized digit string.
  std::size_t h = 1469598103934665603ull;
  auto feed = [&](std::uint8_t d) {
    h ^= d;
    h *= 1099511628211ull;
  };
  std::size_t ia = int_.size();
  while (ia > 0 && int_[ia - 1] == 0) --ia;
  std::size_t fa = frac_.size();
  while (fa > 0 && frac_[fa - 1] == 0) --fa;
  for (std::size_t i = ia; i-- > 0;) feed(int_[i]);
  feed(10);
  for (std::size_t m = 0; m < fa; ++m) feed(frac_[m]);
  return h;
}

IndexValue IndexValue::interleave(const IndexValue& other) const {
  IndexValue out;
  const std::size_t ilen = std::max(int_.size(), other.int_.size());
  const std::size_t flen = std::max(frac_.size(), other.frac_.size());
  out.int_.resize(2 * ilen);
  for (std::size_t n = 0; n < ilen; ++n) {
    out.int_[2 * n] = static_cast<std::uint8_t>(digit(static_cast<int>(n)));
    out.int_[2 * n + 1] = static_cast<std::uint8_t>(other.digit(static_cast<int>(n)));
  }
  // Position -(2m+1) holds other's 10^-(m+1) digit (2k+1 with k = -(m+1));
  // position -(2m+2) holds this value's 10^-(m+1) digit (2n with n = -(m+1)).
  out.frac_.resize(2 * flen);
  for (std::size_t m = 0; m < flen; ++m) {
    const int n = -static_cast<int>(m) - 1;
    out.frac_[2 * m] = static_cast<std::uint8_t>(other.digit(n));
    out.frac_[2 * m + 1] = static_cast<std::uint8_t>(digit(n));
  }
  if (out.int_.empty()) out.int_.push_back(0);
  return out;
}

IndexValue pair_index(const IndexValue& a, const IndexValue& b) {
  if (a == b) throw Error(ErrorCode::kEqualIndices, "pair index needs distinct values, got " + a.to_string());
  IndexValue ab = a.interleave(b);
  IndexValue ba = b.interleave(a);
  return ab > ba ? ab : ba;
}

}  // namespace ppf
