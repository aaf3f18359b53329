#pragma once

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simgame {

// Exact fraction in lowest terms, denominator positive (GMP keeps it canonical).
using Rational = mpq_class;
using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p", "-p", "p/q" with q > 0 after sign handling. Returns nullopt on
// anything else (decimals, empty strings, zero denominators).
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) return std::nullopt;
  mpz_class n{std::string(num)}, d{std::string(den)};
  if (d == 0) return std::nullopt;
  Rational q(n, d);
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

// "p/q", or "p" when the value is an integer.
inline std::string to_string(const Rational& q) { return q.get_str(); }

namespace detail {

inline mpz_class pow10(long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

// Nearest integer, ties to even.
inline mpz_class round_half_even(const Rational& q) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational frac = q - Rational(fl);
  int c = cmp(frac, Rational(1, 2));
  if (c > 0 || (c == 0 && mpz_odd_p(fl.get_mpz_t()))) fl += 1;
  return fl;
}

}  // namespace detail

// Display-only decimal rendering with `sig` significant digits, round-half-even,
// printf("%g")-style layout.
inline std::string to_decimal(const Rational& value, int sig = 6) {
  if (value == 0) return "0";
  Rational a = abs(value);
  long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
  auto scale = [](long k) {
    return k >= 0 ? Rational(detail::pow10(k)) : Rational(mpz_class(1), detail::pow10(-k));
  };
  while (a < scale(e)) --e;
  while (a >= scale(e + 1)) ++e;
  mpz_class n = detail::round_half_even(a * scale(sig - 1 - e));
  if (n == detail::pow10(sig)) {
    n = detail::pow10(sig - 1);
    ++e;
  }
  std::string digits = n.get_str();
  std::string out = value < 0 ? "-" : "";
  auto trim = [](std::string s) {
    if (s.find('.') == std::string::npos) return s;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  };
  if (e < -4 || e >= sig) {
    std::string mant = trim(digits.substr(0, 1) + "." + digits.substr(1));
    std::string ex = std::to_string(e < 0 ? -e : e);
    if (ex.size() < 2) ex = "0" + ex;
    return out + mant + "e" + (e < 0 ? "-" : "+") + ex;
  }
  if (e < 0) {
    out += "0." + std::string(static_cast<size_t>(-e - 1), '0') + digits;
  } else {
    auto point = static_cast<size_t>(e + 1);
    out += digits.substr(0, point);
    if (point < digits.size()) out += "." + digits.substr(point);
  }
  return trim(out);
}

inline Rational sum(const Vector& v) {
  Rational s = 0;
  for (const auto& x : v) s += x;
  return s;
}

inline Rational dot(const Vector& a, const Vector& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace simgame
