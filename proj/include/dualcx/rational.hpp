#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace dualcx {

using Rational = mpq_class;

Rational parse_rational(std::string_view text);
// n/d in lowest terms
inline Rational make_rational(long n, long d = 1) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}
std::string to_string(const Rational& q);

// Q extended by +infinity. Multiplication follows 0 * inf = 0.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(const Rational& q) : value_(q) { value_.canonicalize(); }
  ExtRational(long v) : value_(v) {}
  ExtRational(int v) : value_(v) {}

  static ExtRational infinity();

  bool is_inf() const noexcept { return inf_; }
  bool is_zero() const { return !inf_ && value_ == 0; }
  // Finite value; throws DomainError on infinity.
  const Rational& value() const;

  ExtRational operator+(const ExtRational& o) const;
  ExtRational operator-(const Rational& o) const;
  ExtRational operator*(const ExtRational& o) const;
  ExtRational& operator+=(const ExtRational& o) { return *this = *this + o; }

  bool operator==(const ExtRational& o) const;
  std::strong_ordering operator<=>(const ExtRational& o) const;

 private:
  bool inf_ = false;
  Rational value_ = 0;
};

ExtRational parse_ext_rational(std::string_view text);
std::string to_string(const ExtRational& q);
std::ostream& operator<<(std::ostream& os, const ExtRational& q);

inline const ExtRational& min(const ExtRational& a, const ExtRational& b) {
  return b < a ? b : a;
}
inline const ExtRational& max(const ExtRational& a, const ExtRational& b) {
  return a < b ? b : a;
}

}  // namespace dualcx
