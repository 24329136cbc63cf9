#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace curlspec {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

// Parses "p/q", an integer, or decimal/scientific notation ("-0.5", "1e-3")
// into an exact rational. Throws ValidationError on malformed input.
Rational parse_rational(std::string_view text);

// Canonical form: "p" or "p/q" with q > 1 and gcd(p, q) = 1.
std::string rational_str(const Rational& r);

double to_double(const Rational& r);

// Exact dyadic rational equal to the given double. Throws on NaN/inf.
Rational rational_from_double(double x);

// A real number of the form coeff * pi^pi_pow. Volumes of the supported
// manifolds and the Weyl leading coefficient all have this shape, which keeps
// them exact through the formulas that only shift the power of pi.
struct PiRational {
  Rational coeff;
  int pi_pow = 0;

  double value() const;
  // "2*pi^2", "3/4", "1/6*pi^-2", ...
  std::string str() const;
  bool operator==(const PiRational&) const = default;
};

// Exact eigenvalue representation. Spectra use one kind per family:
//   integer      spheres and spherical space forms
//   two_pi_sqrt  flat tori, value sign * 2*pi*sqrt(q) with q > 0 rational
//   approx       fallback for values parsed from plain floats
// Comparisons between values of the same kind are exact; across kinds they
// fall back to the double approximation with tolerance 1e-9.
class ExactScalar {
 public:
  enum class Kind { integer, two_pi_sqrt, approx };

  static ExactScalar from_integer(BigInt v);
  static ExactScalar from_two_pi_sqrt(int sign, Rational q);
  static ExactScalar from_approx(double v);

  Kind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }

  ExactScalar negated() const;
  ExactScalar magnitude() const;
  bool is_zero() const;

  bool equals(const ExactScalar& other) const;

  // Accessors valid for the matching kind only.
  const BigInt& int_value() const { return int_; }
  const Rational& sqrt_arg() const { return q_; }
  int sqrt_sign() const { return sign_; }

  // "-2", "2*pi*sqrt(3/2)", "1.25", ...
  std::string str() const;
  static std::optional<ExactScalar> parse(std::string_view text);

  // Strict weak ordering by numeric value, decided exactly within a kind.
  friend bool exact_less(const ExactScalar& a, const ExactScalar& b);

 private:
  ExactScalar() = default;

  Kind kind_ = Kind::approx;
  BigInt int_;
  Rational q_;
  int sign_ = 1;
  double value_ = 0.0;
};

}  // namespace curlspec
