#include "dualcx/rational.hpp"

#include <cctype>

#include "dualcx/error.hpp"

namespace dualcx {

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : Error(issues.empty() ? "Validation" : issues.front().code,
            issues.empty() ? "validation failed"
                           : issues.front().code + ": " + issues.front().message),
      issues_(std::move(issues)) {}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  bool ok = !s.empty();
  std::size_t slash = 0;
  for (std::size_t i = 0; i < s.size() && ok; ++i) {
    char ch = s[i];
    if (ch == '-' || ch == '+') {
      ok = (i == 0);
    } else if (ch == '/') {
      ok = (slash++ == 0) && i > 0 && i + 1 < s.size();
    } else {
      ok = std::isdigit(static_cast<unsigned char>(ch)) != 0;
    }
  }
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  Rational q;
  if (!ok || q.set_str(s, 10) != 0) {
    throw DescriptorError("Parse", "not a rational: '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) {
    throw DescriptorError("Parse", "zero denominator: '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str(10);
}

ExtRational ExtRational::infinity() {
  ExtRational e;
  e.inf_ = true;
  return e;
}

const Rational& ExtRational::value() const {
  if (inf_) throw DomainError("Infinity", "finite value requested from inf");
  return value_;
}

ExtRational ExtRational::operator+(const ExtRational& o) const {
  if (inf_ || o.inf_) return infinity();
  return ExtRational(Rational(value_ + o.value_));
}

ExtRational ExtRational::operator-(const Rational& o) const {
  if (inf_) return infinity();
  return ExtRational(Rational(value_ - o));
}

ExtRational ExtRational::operator*(const ExtRational& o) const {
  if (is_zero() || o.is_zero()) return ExtRational(0);
  if (inf_ || o.inf_) {
    const ExtRational& fin = inf_ ? o : *this;
    if (!fin.inf_ && fin.value_ < 0) {
      throw DomainError("Infinity", "negative multiple of inf");
    }
    return infinity();
  }
  return ExtRational(Rational(value_ * o.value_));
}

bool ExtRational::operator==(const ExtRational& o) const {
  if (inf_ || o.inf_) return inf_ == o.inf_;
  return value_ == o.value_;
}

std::strong_ordering ExtRational::operator<=>(const ExtRational& o) const {
  if (inf_ && o.inf_) return std::strong_ordering::equal;
  if (inf_) return std::strong_ordering::greater;
  if (o.inf_) return std::strong_ordering::less;
  int c = cmp(value_, o.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtRational parse_ext_rational(std::string_view text) {
  if (text == "inf" || text == "+inf" || text == "∞") return ExtRational::infinity();
  return ExtRational(parse_rational(text));
}

std::string to_string(const ExtRational& q) {
  return q.is_inf() ? std::string("inf") : to_string(q.value());
}

std::ostream& operator<<(std::ostream& os, const ExtRational& q) {
  return os << to_string(q);
}

}  // namespace dualcx
