#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace covchan {

// Model probabilities are kept as exact rationals end to end; floating
// point only enters inside the capacity iteration.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An analysis gave up against a configured cap rather than failing.
class LimitError : public Error {
 public:
  explicit LimitError(const std::string& what) : Error(what) {}
};

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

// Accepts "3", "-2", "a/b" and plain decimals like "0.125".
std::optional<Rational> parse_rational(std::string_view text);

// Exact "a/b" form ("a" when the denominator is 1). Used by all file formats.
std::string format_rational(const Rational& r);

// Decimal rendering when the denominator divides a power of ten
// (e.g. 6/5 -> "1.2"), otherwise falls back to "a/b". Used in messages.
std::string format_rational_pretty(const Rational& r);

}  // namespace covchan
