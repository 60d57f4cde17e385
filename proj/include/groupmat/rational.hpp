#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "groupmat/errors.hpp"

namespace groupmat {

/// Exact rational scalar. Always stored reduced with a positive denominator.
/// Construction never loses precision; there is no floating-point mode.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
  Rational(long num, long den) {
    if (den == 0) throw InvalidInput("rational with zero denominator");
    v_ = mpq_class(mpz_class(num), mpz_class(den));
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Accepts "a", "-a", "a/b", and plain decimals like "0.25" (parsed exactly).
  static Rational parse(std::string_view text) {
    std::string s = trimmed(text);
    if (s.empty()) throw ParseError("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      mpz_class num = parse_integer(s.substr(0, slash));
      mpz_class den = parse_integer(s.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator in '" + s + "'");
      mpq_class q(num, den);
      q.canonicalize();
      return Rational(q);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      std::string head = s.substr(0, dot);
      std::string frac = s.substr(dot + 1);
      bool negative = !head.empty() && head[0] == '-';
      if (!head.empty() && (head[0] == '-' || head[0] == '+')) head.erase(0, 1);
      if (head.empty() && frac.empty()) throw ParseError("bare '.' is not a rational");
      for (char c : head)
        if (c < '0' || c > '9') throw ParseError("bad decimal '" + s + "'");
      for (char c : frac)
        if (c < '0' || c > '9') throw ParseError("bad decimal '" + s + "'");
      mpz_class num = head.empty() ? mpz_class(0) : mpz_class(head, 10);
      mpz_class p10;
      mpz_ui_pow_ui(p10.get_mpz_t(), 10, frac.size());
      num *= p10;
      if (!frac.empty()) num += mpz_class(frac, 10);
      if (negative) num = -num;
      mpq_class q(num, p10);
      q.canonicalize();
      return Rational(q);
    }
    mpq_class q(parse_integer(s), mpz_class(1));
    return Rational(q);
  }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_negative() const { return sgn(v_) < 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  bool fits_int64() const {
    return is_integer() && v_.get_num().fits_slong_p();
  }
  std::int64_t to_int64() const { return v_.get_num().get_si(); }

  /// "a/b", or just "a" when the denominator is 1.
  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  /// Decimal rendering rounded half-up to `sig` significant digits; exact
  /// expansions shorter than that are printed in full.
  std::string decimal(int sig = 12) const {
    if (is_zero()) return "0";
    mpz_class n = abs(v_.get_num());
    mpz_class d = v_.get_den();
    std::string sign = is_negative() ? "-" : "";
    mpz_class ip = n / d;
    int int_digits = ip == 0 ? 0 : static_cast<int>(ip.get_str().size());
    int frac_digits = 0;
    if (int_digits >= sig) {
      frac_digits = 0;
    } else if (int_digits > 0) {
      frac_digits = sig - int_digits;
    } else {
      mpz_class rem = n % d;
      int zeros = 0;
      while (zeros < 1024) {
        rem *= 10;
        if (rem / d != 0) break;
        rem %= d;
        ++zeros;
      }
      frac_digits = zeros + sig;
    }
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, frac_digits);
    mpz_class scaled = (n * p10 * 2 + d) / (2 * d);
    std::string digits = scaled.get_str();
    if (static_cast<int>(digits.size()) <= frac_digits)
      digits.insert(0, frac_digits + 1 - digits.size(), '0');
    std::string out = digits.substr(0, digits.size() - frac_digits);
    std::string frac = digits.substr(digits.size() - frac_digits);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    return sign + out;
  }

  const mpq_class& raw() const { return v_; }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw InvalidInput("division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& q) {
    return os << q.str();
  }

 private:
  static std::string trimmed(std::string_view text) {
    size_t b = text.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    size_t e = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(b, e - b + 1));
  }

  static mpz_class parse_integer(const std::string& raw) {
    std::string s = trimmed(raw);
    if (s.empty()) throw ParseError("empty integer literal");
    size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw ParseError("sign without digits in '" + raw + "'");
    for (size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw ParseError("bad integer '" + raw + "'");
    if (s[0] == '+') s.erase(0, 1);
    return mpz_class(s, 10);
  }

  mpq_class v_;
};

}  // namespace groupmat
