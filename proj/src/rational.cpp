#include "covchan/rational.hpp"

#include <cctype>

namespace covchan {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    BigInt d{std::string{den}};
    if (d == 0) return std::nullopt;
    BigInt n{std::string{num}};
    value = Rational(n, d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (!whole.empty() && !all_digits(whole)) return std::nullopt;
    if (!frac.empty() && !all_digits(frac)) return std::nullopt;
    BigInt scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt w = whole.empty() ? BigInt(0) : BigInt{std::string{whole}};
    BigInt f = frac.empty() ? BigInt(0) : BigInt{std::string{frac}};
    value = Rational(w * scale + f, scale);
  } else {
    if (!all_digits(text)) return std::nullopt;
    value = Rational(BigInt{std::string{text}});
  }
  return negative ? -value : value;
}

std::string format_rational(const Rational& r) {
  std::string out = r.numerator().str();
  if (r.denominator() != 1) {
    out += "/";
    out += r.denominator().str();
  }
  return out;
}

std::string format_rational_pretty(const Rational& r) {
  if (r.denominator() == 1) return r.numerator().str();
  // Try to write an exact decimal: denominator must divide 10^k.
  BigInt den = r.denominator();
  int twos = 0, fives = 0;
  while (den % 2 == 0) { den /= 2; ++twos; }
  while (den % 5 == 0) { den /= 5; ++fives; }
  if (den != 1) return format_rational(r);
  int k = std::max(twos, fives);
  if (k > 18) return format_rational(r);
  BigInt scale = 1;
  for (int i = 0; i < k; ++i) scale *= 10;
  BigInt scaled = r.numerator() * (scale / r.denominator());
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string digits = scaled.str();
  if (static_cast<int>(digits.size()) <= k) {
    digits.insert(0, k + 1 - digits.size(), '0');
  }
  digits.insert(digits.size() - k, ".");
  while (digits.back() == '0') digits.pop_back();
  if (digits.back() == '.') digits.pop_back();
  return (neg ? "-" : "") + digits;
}

}  // namespace covchan
