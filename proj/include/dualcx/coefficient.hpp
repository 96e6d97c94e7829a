#pragma once

#include <map>
#include <string>
#include <string_view>

#include "dualcx/rational.hpp"

namespace dualcx {

// Finite sums sum q_e t^e with rational q_e and rational exponents e.
// val is the least exponent with q_e != 0; val(0) = inf.
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(const Rational& q);
  Coefficient(long q) : Coefficient(Rational(q)) {}

  static Coefficient t_power(const Rational& e, const Rational& q = 1);

  const std::map<Rational, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  ExtRational val() const;
  // Leading coefficient (at the valuation); zero for the zero element.
  Rational leading() const;

  Coefficient operator+(const Coefficient& o) const;
  Coefficient operator-(const Coefficient& o) const;
  Coefficient operator-() const;
  Coefficient operator*(const Coefficient& o) const;
  Coefficient& operator+=(const Coefficient& o) { return *this = *this + o; }
  Coefficient& operator*=(const Coefficient& o) { return *this = *this * o; }
  Coefficient pow(unsigned k) const;

  // Drops every term with exponent >= bound.
  Coefficient truncated(const ExtRational& bound) const;

  bool operator==(const Coefficient& o) const { return terms_ == o.terms_; }
  bool operator<(const Coefficient& o) const { return terms_ < o.terms_; }

 private:
  void add_term(const Rational& e, const Rational& q);
  std::map<Rational, Rational> terms_;
};

// Grammar: terms joined by + or -, each term [q][*]t[^e] or q, where e is
// an integer or a parenthesised rational. Examples: "1+t", "-1/2*t^(3/2)".
Coefficient parse_coefficient(std::string_view text);
std::string to_string(const Coefficient& c);

}  // namespace dualcx
