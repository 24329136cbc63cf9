#include "curlspec/exact.hpp"

#include "curlspec/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace curlspec {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_bigint(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw ValidationError("empty integer literal");
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) throw ValidationError("malformed integer literal '" + std::string(s) + "'");
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw ValidationError("malformed integer literal '" + std::string(s) + "'");
  }
  return BigInt(std::string(s));
}

BigInt pow10(long long e) {
  BigInt r = 1;
  for (long long i = 0; i < e; ++i) r *= 10;
  return r;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact at every step: r is C(n-k+i, i)
  }
  return r;
}

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  if (s.empty()) throw ValidationError("empty numeric literal");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_bigint(s.substr(0, slash));
    BigInt den = parse_bigint(s.substr(slash + 1));
    if (den == 0) throw ValidationError("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }

  // Decimal / scientific form.
  std::size_t i = 0;
  int sign = 1;
  if (s[i] == '+' || s[i] == '-') {
    if (s[i] == '-') sign = -1;
    ++i;
  }
  std::string digits;
  long long frac_digits = 0, exp10 = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      auto tail = s.substr(i + 1);
      if (tail.empty()) throw ValidationError("malformed exponent in '" + std::string(s) + "'");
      BigInt e = parse_bigint(tail);
      if (e > 7000 || e < -7000)
        throw ValidationError("exponent out of range in '" + std::string(s) + "'");
      exp10 = e.convert_to<long long>();
      break;
    } else {
      throw ValidationError("malformed numeric literal '" + std::string(s) + "'");
    }
  }
  if (!seen_digit) throw ValidationError("malformed numeric literal '" + std::string(s) + "'");

  BigInt mantissa = digits.empty() ? BigInt(0) : BigInt(digits);
  if (sign < 0) mantissa = -mantissa;
  long long net = exp10 - frac_digits;
  if (net >= 0) return Rational(mantissa * pow10(net), 1);
  return Rational(mantissa, pow10(-net));
}

std::string rational_str(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw ValidationError("non-finite value");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double m = std::frexp(x, &exp);
  auto scaled = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  Rational r(scaled);
  if (exp > 0)
    r *= Rational(BigInt(1) << exp, 1);
  else if (exp < 0)
    r /= Rational(BigInt(1) << -exp, 1);
  return r;
}

double PiRational::value() const {
  return to_double(coeff) * std::pow(boost::math::constants::pi<double>(), pi_pow);
}

std::string PiRational::str() const {
  std::string s = rational_str(coeff);
  if (pi_pow == 1)
    s += "*pi";
  else if (pi_pow != 0)
    s += "*pi^" + std::to_string(pi_pow);
  return s;
}

ExactScalar ExactScalar::from_integer(BigInt v) {
  ExactScalar e;
  e.kind_ = Kind::integer;
  e.value_ = v.convert_to<double>();
  e.int_ = std::move(v);
  return e;
}

ExactScalar ExactScalar::from_two_pi_sqrt(int sign, Rational q) {
  if (q < 0) throw ValidationError("negative argument under sqrt");
  ExactScalar e;
  e.kind_ = Kind::two_pi_sqrt;
  e.sign_ = sign < 0 ? -1 : 1;
  e.q_ = std::move(q);
  e.value_ = e.sign_ * 2.0 * boost::math::constants::pi<double>() * std::sqrt(to_double(e.q_));
  return e;
}

ExactScalar ExactScalar::from_approx(double v) {
  ExactScalar e;
  e.kind_ = Kind::approx;
  e.value_ = v;
  return e;
}

ExactScalar ExactScalar::negated() const {
  ExactScalar e = *this;
  switch (kind_) {
    case Kind::integer: e.int_ = -int_; break;
    case Kind::two_pi_sqrt: e.sign_ = -sign_; break;
    case Kind::approx: break;
  }
  e.value_ = -value_;
  return e;
}

ExactScalar ExactScalar::magnitude() const {
  return value_ < 0 ? negated() : *this;
}

bool ExactScalar::is_zero() const {
  switch (kind_) {
    case Kind::integer: return int_ == 0;
    case Kind::two_pi_sqrt: return q_ == 0;
    case Kind::approx: return value_ == 0.0;
  }
  return false;
}

bool ExactScalar::equals(const ExactScalar& other) const {
  if (kind_ == other.kind_) {
    switch (kind_) {
      case Kind::integer: return int_ == other.int_;
      case Kind::two_pi_sqrt: return sign_ == other.sign_ && q_ == other.q_;
      case Kind::approx: break;
    }
  }
  double scale = std::max({1.0, std::fabs(value_), std::fabs(other.value_)});
  return std::fabs(value_ - other.value_) <= 1e-9 * scale;
}

std::string ExactScalar::str() const {
  switch (kind_) {
    case Kind::integer: return int_.str();
    case Kind::two_pi_sqrt:
      return std::string(sign_ < 0 ? "-" : "") + "2*pi*sqrt(" + rational_str(q_) + ")";
    case Kind::approx: break;
  }
  return format_double(value_);
}

std::optional<ExactScalar> ExactScalar::parse(std::string_view text) {
  auto s = trim(text);
  if (s.empty()) return std::nullopt;

  bool integerish = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (i == 0 && (c == '+' || c == '-')) continue;
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      integerish = false;
      break;
    }
  }
  if (integerish && !(s.size() == 1 && (s[0] == '+' || s[0] == '-')))
    return from_integer(parse_bigint(s));

  int sign = 1;
  auto body = s;
  if (body.front() == '-') {
    sign = -1;
    body.remove_prefix(1);
  }
  constexpr std::string_view prefix = "2*pi*sqrt(";
  if (body.substr(0, prefix.size()) == prefix && body.back() == ')') {
    auto arg = body.substr(prefix.size(), body.size() - prefix.size() - 1);
    try {
      return from_two_pi_sqrt(sign, parse_rational(arg));
    } catch (const ValidationError&) {
      return std::nullopt;
    }
  }

  char* end = nullptr;
  std::string owned(s);
  double v = std::strtod(owned.c_str(), &end);
  if (end == owned.c_str() + owned.size() && std::isfinite(v)) return from_approx(v);
  return std::nullopt;
}

bool exact_less(const ExactScalar& a, const ExactScalar& b) {
  if (a.kind_ == b.kind_) {
    switch (a.kind_) {
      case ExactScalar::Kind::integer:
        return a.int_ < b.int_;
      case ExactScalar::Kind::two_pi_sqrt:
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
        return a.sign_ > 0 ? a.q_ < b.q_ : b.q_ < a.q_;
      case ExactScalar::Kind::approx:
        break;
    }
  }
  return a.value_ < b.value_;
}

}  // namespace curlspec
