#include "dualcx/coefficient.hpp"

#include <cctype>

#include "dualcx/error.hpp"

namespace dualcx {

Coefficient::Coefficient(const Rational& q) { add_term(0, q); }

Coefficient Coefficient::t_power(const Rational& e, const Rational& q) {
  Coefficient c;
  c.add_term(e, q);
  return c;
}

void Coefficient::add_term(const Rational& e, const Rational& q) {
  if (q == 0) return;
  Rational key(e);
  key.canonicalize();
  auto [it, fresh] = terms_.emplace(key, q);
  if (!fresh) it->second += q;
  it->second.canonicalize();
  if (it->second == 0) terms_.erase(it);
}

ExtRational Coefficient::val() const {
  return terms_.empty() ? ExtRational::infinity() : ExtRational(terms_.begin()->first);
}

Rational Coefficient::leading() const { return terms_.empty() ? Rational(0) : terms_.begin()->second; }

Coefficient Coefficient::operator+(const Coefficient& o) const {
  Coefficient out = *this;
  for (const auto& [e, q] : o.terms_) out.add_term(e, q);
  return out;
}

Coefficient Coefficient::operator-() const {
  Coefficient out;
  for (const auto& [e, q] : terms_) out.terms_.emplace(e, -q);
  return out;
}

Coefficient Coefficient::operator-(const Coefficient& o) const { return *this + (-o); }

Coefficient Coefficient::operator*(const Coefficient& o) const {
  Coefficient out;
  for (const auto& [e1, q1] : terms_) {
    for (const auto& [e2, q2] : o.terms_) out.add_term(e1 + e2, q1 * q2);
  }
  return out;
}

Coefficient Coefficient::pow(unsigned k) const {
  Coefficient out(1), base = *this;
  while (k) {
    if (k & 1u) out *= base;
    base *= base;
    k >>= 1;
  }
  return out;
}

Coefficient Coefficient::truncated(const ExtRational& bound) const {
  if (bound.is_inf()) return *this;
  Coefficient out;
  for (const auto& [e, q] : terms_) {
    if (ExtRational(e) < bound) out.terms_.emplace(e, q);
  }
  return out;
}

namespace {

struct Parser {
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void fail() const {
    throw DescriptorError("Parse", "not a coefficient: '" + std::string(s) + "'");
  }
  bool peek(char c) const { return pos < s.size() && s[pos] == c; }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }
  Rational number(bool allow_slash) {
    std::size_t start = pos;
    if (peek('-')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (allow_slash && peek('/')) {
      ++pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    if (pos == start) fail();
    return parse_rational(s.substr(start, pos - start));
  }
  bool digit_next() const { return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])); }

  Coefficient parse() {
    Coefficient out;
    while (pos < s.size() && s[pos] == ' ') ++pos;
    bool first = true;
    while (pos < s.size()) {
      Rational sign = 1;
      if (eat('+')) {
      } else if (eat('-')) {
        sign = -1;
      } else if (!first) {
        fail();
      }
      first = false;
      Rational q = 1;
      bool have_q = false;
      if (digit_next()) {
        q = number(true);
        have_q = true;
        eat('*');
      }
      Rational e = 0;
      if (eat('t')) {
        e = 1;
        if (eat('^')) {
          if (eat('(')) {
            e = number(true);
            if (!eat(')')) fail();
          } else {
            e = number(false);
          }
        }
      } else if (!have_q) {
        fail();
      }
      out += Coefficient::t_power(e, sign * q);
    }
    if (first) fail();
    return out;
  }
};

}  // namespace

Coefficient parse_coefficient(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (c != ' ') compact.push_back(c);
  }
  Parser p{compact};
  return p.parse();
}

std::string to_string(const Coefficient& c) {
  if (c.is_zero()) return "0";
  std::string out;
  for (const auto& [e, q] : c.terms()) {
    std::string term;
    Rational mag = abs(q);
    if (e == 0) {
      term = to_string(mag);
    } else {
      if (mag != 1) term = to_string(mag) + "*";
      term += "t";
      if (e != 1) {
        term += "^";
        term += e.get_den() == 1 && e > 0 ? to_string(e) : "(" + to_string(e) + ")";
      }
    }
    if (q < 0) {
      out += "-" + term;
    } else {
      out += (out.empty() ? "" : "+") + term;
    }
  }
  return out;
}

}  // namespace dualcx
