#include "acstab/scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>

#include "acstab/errors.hpp"

namespace acstab {

std::string_view to_string(ScalarMode mode) {
  return mode == ScalarMode::exact ? "exact" : "float";
}

ScalarMode parse_scalar_mode(std::string_view text) {
  if (text == "exact") return ScalarMode::exact;
  if (text == "float") return ScalarMode::floating;
  fail(ErrorCode::parse_error, "unknown scalar mode '" + std::string(text) + "'");
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string original(text);
  auto bad = [&]() -> Rational {
    fail(ErrorCode::parse_error, "not a rational number: '" + original + "'");
  };
  if (text.empty()) return bad();

  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return bad();
    mpz_class d{std::string(den), 10};
    if (d == 0) fail(ErrorCode::parse_error, "zero denominator in '" + original + "'");
    result = Rational(mpz_class(std::string(num), 10), d);
  } else {
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) return bad();
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
      text = text.substr(0, e);
    }
    std::string digits;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      auto int_part = text.substr(0, dot);
      auto frac_part = text.substr(dot + 1);
      if ((!int_part.empty() && !all_digits(int_part)) ||
          (!frac_part.empty() && !all_digits(frac_part)) ||
          (int_part.empty() && frac_part.empty()))
        return bad();
      digits = std::string(int_part) + std::string(frac_part);
      exponent -= static_cast<long>(frac_part.size());
    } else {
      if (!all_digits(text)) return bad();
      digits = std::string(text);
    }
    if (digits.empty()) return bad();
    mpz_class mantissa(digits, 10);
    if (exponent >= 0)
      result = Rational(mantissa * pow10(static_cast<unsigned long>(exponent)));
    else
      result = Rational(mantissa, pow10(static_cast<unsigned long>(-exponent)));
  }
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value))
    fail(ErrorCode::invalid_argument, "non-finite value cannot be made exact");
  return Rational(value);
}

double rational_to_nearest_double(const Rational& value) {
  const double t = value.get_d();  // truncated toward zero
  if (!std::isfinite(t) || rational_from_double(t) == value) return t;
  const double away = std::nextafter(t, value > 0 ? INFINITY : -INFINITY);
  if (!std::isfinite(away)) return t;
  const Rational lo_gap = abs(value - rational_from_double(t));
  const Rational hi_gap = abs(rational_from_double(away) - value);
  if (lo_gap != hi_gap) return lo_gap < hi_gap ? t : away;
  std::int64_t mantissa = 0;
  std::memcpy(&mantissa, &t, sizeof t);
  return (mantissa & 1) == 0 ? t : away;
}

std::string rational_to_string(const Rational& value) { return value.get_str(); }

Scalar::Scalar(double value) : value_(value) {}
Scalar::Scalar(Rational value) : value_(std::move(value)) {}

Scalar Scalar::zero(ScalarMode mode) {
  return mode == ScalarMode::exact ? Scalar(Rational(0)) : Scalar(0.0);
}

Scalar Scalar::from_integer(std::int64_t value, ScalarMode mode) {
  if (mode == ScalarMode::floating) return Scalar(static_cast<double>(value));
  return Scalar(Rational(mpz_class(std::to_string(value))));
}

Scalar Scalar::from_rational(const Rational& value, ScalarMode mode) {
  if (mode == ScalarMode::exact) return Scalar(value);
  return Scalar(value.get_d());
}

const Rational& Scalar::rational() const {
  if (auto r = std::get_if<Rational>(&value_)) return *r;
  fail(ErrorCode::mode_mismatch, "exact value requested from a float scalar");
}

double Scalar::floating() const {
  if (auto d = std::get_if<double>(&value_)) return *d;
  fail(ErrorCode::mode_mismatch, "float value requested from an exact scalar");
}

double Scalar::to_double() const {
  if (auto d = std::get_if<double>(&value_)) return *d;
  return std::get<Rational>(value_).get_d();
}

bool Scalar::is_zero() const { return sign() == 0; }

int Scalar::sign() const {
  if (auto d = std::get_if<double>(&value_)) return (*d > 0) - (*d < 0);
  return sgn(std::get<Rational>(value_));
}

Scalar Scalar::abs() const {
  if (auto d = std::get_if<double>(&value_)) return Scalar(std::fabs(*d));
  return Scalar(Rational(::abs(std::get<Rational>(value_))));
}

Scalar Scalar::operator-() const {
  if (auto d = std::get_if<double>(&value_)) return Scalar(-*d);
  return Scalar(Rational(-std::get<Rational>(value_)));
}

Scalar Scalar::ldexp(int k) const {
  if (auto d = std::get_if<double>(&value_)) return Scalar(std::ldexp(*d, k));
  Rational r;
  if (k >= 0)
    mpq_mul_2exp(r.get_mpq_t(), std::get<Rational>(value_).get_mpq_t(), static_cast<unsigned long>(k));
  else
    mpq_div_2exp(r.get_mpq_t(), std::get<Rational>(value_).get_mpq_t(), static_cast<unsigned long>(-k));
  return Scalar(std::move(r));
}

Scalar Scalar::in_mode(ScalarMode target) const {
  if (mode() == target) return *this;
  if (target == ScalarMode::floating) return Scalar(to_double());
  return Scalar(rational_from_double(std::get<double>(value_)));
}

namespace {

[[noreturn]] void mixed() {
  fail(ErrorCode::mode_mismatch, "arithmetic between exact and float scalars");
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (mode() != rhs.mode()) mixed();
  if (auto d = std::get_if<double>(&value_))
    *d += std::get<double>(rhs.value_);
  else
    std::get<Rational>(value_) += std::get<Rational>(rhs.value_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  if (mode() != rhs.mode()) mixed();
  if (auto d = std::get_if<double>(&value_))
    *d -= std::get<double>(rhs.value_);
  else
    std::get<Rational>(value_) -= std::get<Rational>(rhs.value_);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (mode() != rhs.mode()) mixed();
  if (auto d = std::get_if<double>(&value_))
    *d *= std::get<double>(rhs.value_);
  else
    std::get<Rational>(value_) *= std::get<Rational>(rhs.value_);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (mode() != rhs.mode()) mixed();
  if (auto d = std::get_if<double>(&value_)) {
    *d /= std::get<double>(rhs.value_);
  } else {
    if (sgn(std::get<Rational>(rhs.value_)) == 0)
      fail(ErrorCode::invalid_argument, "exact division by zero");
    std::get<Rational>(value_) /= std::get<Rational>(rhs.value_);
  }
  return *this;
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.mode() != rhs.mode()) mixed();
  if (lhs.is_exact()) return std::get<Rational>(lhs.value_) == std::get<Rational>(rhs.value_);
  return std::get<double>(lhs.value_) == std::get<double>(rhs.value_);
}

std::partial_ordering operator<=>(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.mode() != rhs.mode()) mixed();
  if (lhs.is_exact()) {
    int c = cmp(std::get<Rational>(lhs.value_), std::get<Rational>(rhs.value_));
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  return std::get<double>(lhs.value_) <=> std::get<double>(rhs.value_);
}

std::string Scalar::to_string() const {
  if (auto d = std::get_if<double>(&value_)) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, *d);
    (void)ec;
    return std::string(buf, end);
  }
  return rational_to_string(std::get<Rational>(value_));
}

}  // namespace acstab
