#pragma once

#include <cstddef>

#include "vqsignal/rational.hpp"

namespace vqsignal {

// x -> coeffs . x + constant on belief space.
struct AffineForm {
  RationalVector coeffs;
  Rational constant{0};

  static AffineForm zero(std::size_t d) { return AffineForm{RationalVector(d, Rational(0)), Rational(0)}; }
  Rational operator()(const RationalVector& x) const { return dot(coeffs, x) + constant; }

  AffineForm& operator+=(const AffineForm& o);
  AffineForm& operator-=(const AffineForm& o);
  AffineForm& operator*=(const Rational& c);
  friend AffineForm operator+(AffineForm a, const AffineForm& b) { return a += b; }
  friend AffineForm operator-(AffineForm a, const AffineForm& b) { return a -= b; }
  friend AffineForm operator*(AffineForm a, const Rational& c) { return a *= c; }
  friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

}  // namespace vqsignal
