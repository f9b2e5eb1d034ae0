#include "vqsignal/rational.hpp"

#include <cctype>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "vqsignal/affine.hpp"
#include "vqsignal/error.hpp"

namespace vqsignal {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Rational parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto dot_pos = s.find('.');
  std::string_view whole = s.substr(0, dot_pos);
  std::string_view frac = s.substr(dot_pos + 1);
  if ((whole.empty() && frac.empty()) || (!whole.empty() && !is_integer_literal(whole)) ||
      (!frac.empty() && !is_integer_literal(frac)) || frac.find_first_of("+-") != std::string_view::npos)
    throw InputError("malformed rational '" + std::string(s) + "'");
  mpz_class numerator(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
  Rational q(numerator, scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InputError("malformed rational ''");
  if (text.find('.') != std::string_view::npos) return parse_decimal(text);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
    throw InputError("malformed rational '" + std::string(text) + "'");
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class denominator(std::string(den), 10);
  if (denominator == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational q(mpz_class(n, 10), denominator);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& x) { return x.get_str(); }

double to_double(const Rational& x) { return x.get_d(); }

Rational from_double(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite value cannot be converted to a rational");
  Rational q(x);
  return q;
}

std::string to_decimal(const Rational& x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x.get_d();
  return os.str();
}

Rational power(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    b *= b;
    exponent >>= 1u;
  }
  return result;
}

const Rational& ExtendedRational::value() const {
  if (!value_) throw std::logic_error("value() on infinite ExtendedRational");
  return *value_;
}

bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.is_finite() != b.is_finite()) return false;
  return !a.is_finite() || a.value() == b.value();
}

std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
  if (!a.is_finite() && !b.is_finite()) return std::strong_ordering::equal;
  if (!a.is_finite()) return std::strong_ordering::greater;
  if (!b.is_finite()) return std::strong_ordering::less;
  int c = cmp(a.value(), b.value());
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string to_string(const ExtendedRational& x) { return x.is_finite() ? to_string(x.value()) : "inf"; }

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw InputError("dimension mismatch in dot product");
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational sum(const RationalVector& a) {
  Rational s(0);
  for (const auto& x : a) s += x;
  return s;
}

AffineForm& AffineForm::operator+=(const AffineForm& o) {
  for (std::size_t s = 0; s < coeffs.size(); ++s) coeffs[s] += o.coeffs.at(s);
  constant += o.constant;
  return *this;
}

AffineForm& AffineForm::operator-=(const AffineForm& o) {
  for (std::size_t s = 0; s < coeffs.size(); ++s) coeffs[s] -= o.coeffs.at(s);
  constant -= o.constant;
  return *this;
}

AffineForm& AffineForm::operator*=(const Rational& c) {
  for (auto& x : coeffs) x *= c;
  constant *= c;
  return *this;
}

}  // namespace vqsignal
