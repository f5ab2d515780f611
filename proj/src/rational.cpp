#include "sidlab/rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "sidlab/error.hpp"

namespace sidlab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty())
    return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return false;
  return true;
}

std::string_view strip_sign(std::string_view s, bool &negative) {
  negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  return s;
}

} // namespace

Rational parse_rational(std::string_view text, bool allow_decimal) {
  bool negative = false;
  std::string_view body = strip_sign(text, negative);
  const auto slash = body.find('/');
  Rational out;
  if (slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw Error(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'");
    mpz_class d(std::string(den), 10);
    if (d == 0)
      throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
    out = Rational(mpz_class(std::string(num), 10), d);
  } else if (all_digits(body)) {
    out = Rational(mpz_class(std::string(body), 10));
  } else if (allow_decimal) {
    const auto dot = body.find('.');
    if (dot == std::string_view::npos)
      throw Error(ErrorCode::Parse, "malformed number '" + std::string(text) + "'");
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw Error(ErrorCode::Parse, "malformed decimal '" + std::string(text) + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    out = Rational(digits, scale);
  } else {
    throw Error(ErrorCode::Parse,
                "expected rational 'p/q', got '" + std::string(text) + "' (decimals need --float)");
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string format_rational(const Rational &value) { return value.get_str(); }

Rational pow(const Rational &base, unsigned exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  out.canonicalize();
  return out;
}

Rational from_double(double value) {
  if (!std::isfinite(value))
    throw Error(ErrorCode::OutOfRange, "non-finite value cannot be made rational");
  return Rational(value);
}

Rational approximate(double value, std::uint64_t max_denominator) {
  if (!std::isfinite(value))
    throw Error(ErrorCode::OutOfRange, "non-finite value cannot be made rational");
  if (max_denominator == 0)
    max_denominator = 1;
  const Rational x = from_double(value);
  // Convergents p_k/q_k of the exact binary value.
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational rest = x;
  const mpz_class cap(static_cast<unsigned long>(max_denominator));
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    mpz_class q2 = a * q1 + q0;
    if (q2 > cap) {
      // Semiconvergent with the largest admissible coefficient.
      mpz_class t = (cap - q0) / q1;
      Rational semi(t * p1 + p0, t * q1 + q0);
      semi.canonicalize();
      Rational conv(p1, q1);
      conv.canonicalize();
      return abs(semi - x) < abs(conv - x) ? semi : conv;
    }
    mpz_class p2 = a * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rational frac = rest - Rational(a);
    if (frac == 0)
      break;
    rest = 1 / frac;
  }
  Rational out(p1, q1);
  out.canonicalize();
  return out;
}

} // namespace sidlab
