#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

#include "teamdp/errors.hpp"

namespace teamdp {

// Exact rational number, always kept in lowest terms with positive
// denominator. Thin wrapper over GMP's mpq_class so deep products of
// probabilities never overflow; everything in the solver and the oracle runs
// on this type, floats only appear in Monte-Carlo summaries.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit on purpose, 0/1 literals
  Rational(long num, long den) {
    if (den == 0) throw ParseError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  // Accepts "p/q" or a bare integer, optional leading '-'. Whitespace is not
  // trimmed: these literals come from JSON strings we control.
  static Rational parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    std::size_t slash = text.find('/');
    std::string num = (slash == std::string::npos) ? text : text.substr(0, slash);
    std::string den = (slash == std::string::npos) ? "1" : text.substr(slash + 1);
    if (!plain_int(num, true) || !plain_int(den, false))
      throw ParseError("bad rational literal '" + text + "'");
    Rational r;
    if (r.v_.set_str(num + "/" + den, 10) != 0)
      throw ParseError("bad rational literal '" + text + "'");
    if (r.v_.get_den() == 0) throw ParseError("rational with zero denominator: '" + text + "'");
    r.v_.canonicalize();
    return r;
  }

  // Always "p/q", even for integers ("3" prints as "3/1"): keeps every
  // serialized number in one grammar.
  std::string str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  double to_double() const { return v_.get_d(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_negative() const { return sgn(v_) < 0; }

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw NullEventError("division by zero rational");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  static bool plain_int(const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < s.size() && s[i] == '-') ++i;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  }

  mpq_class v_;
};

}  // namespace teamdp
