#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vqsignal {

// Exact rational in canonical form.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);
double to_double(const Rational& x);
// Exact binary value of a finite double.
Rational from_double(double x);
// Decimal rendering with a fixed number of significant digits.
std::string to_decimal(const Rational& x, int digits = 12);
Rational power(const Rational& base, unsigned exponent);

// A rational or +infinity.
class ExtendedRational {
 public:
  ExtendedRational() : value_(Rational(0)) {}
  ExtendedRational(Rational value) : value_(std::move(value)) {}  // NOLINT
  static ExtendedRational infinity() { return ExtendedRational(std::nullopt); }

  bool is_finite() const { return value_.has_value(); }
  const Rational& value() const;

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);
  friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b);

 private:
  explicit ExtendedRational(std::optional<Rational> v) : value_(std::move(v)) {}
  std::optional<Rational> value_;
};

std::string to_string(const ExtendedRational& x);

Rational dot(const RationalVector& a, const RationalVector& b);
Rational sum(const RationalVector& a);

}  // namespace vqsignal
