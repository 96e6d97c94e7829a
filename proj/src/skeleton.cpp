#include "dualcx/skeleton.hpp"

#include <algorithm>
#include <numeric>

#include "dualcx/error.hpp"

namespace dualcx {

namespace {

bool no_torus(const std::vector<int>& n) { return n.empty() || (n.size() == 1 && n[0] == 0); }

Rational binomial(long top, long k) {
  // generalized: top (top-1) ... (top-k+1) / k!
  if (k < 0) return 0;
  mpz_class num = 1, den = 1;
  for (long i = 0; i < k; ++i) {
    num *= top - i;
    den *= i + 1;
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

void check_exponent(const StandardPairModel& m, const Exponent& e) {
  if (static_cast<int>(e.size()) != m.variables()) {
    throw DescriptorError("Shape", "exponent vector has " + std::to_string(e.size()) +
                                       " entries, model has " + std::to_string(m.variables()) +
                                       " variables");
  }
  for (int k : e) {
    if (k < 0) throw DescriptorError("Shape", "negative exponent");
  }
}

}  // namespace

StandardPairModel StandardPairModel::make(std::vector<int> n, std::vector<Coefficient> a, int d,
                                          int s, Mode mode) {
  StandardPairModel m;
  m.n = no_torus(n) ? std::vector<int>{0} : std::move(n);
  m.d = d;
  m.s = s;
  m.mode = mode;
  if (d < 0 || s < 0 || s > d) throw DescriptorError("StandardPair", "need 0 <= s <= d");
  if (no_torus(m.n)) {
    if (!a.empty()) throw DescriptorError("StandardPair", "a must be empty without torus factors");
    return m;
  }
  if (a.size() != m.n.size()) throw DescriptorError("StandardPair", "a must have one entry per factor");
  for (int v : m.n) {
    if (v <= 0) throw DescriptorError("StandardPair", "factor dimensions must be positive");
  }
  for (const auto& ai : a) {
    ExtRational r = ai.val();
    if (r.is_inf()) {
      if (mode != Mode::closure) {
        throw DescriptorError("StandardPair", "a_i = 0 is only allowed in closure mode");
      }
    } else if (r <= ExtRational(0)) {
      throw DescriptorError("StandardPair", "val(a_i) must be positive");
    }
  }
  m.a = std::move(a);
  return m;
}

int StandardPairModel::factors() const { return no_torus(n) ? 0 : static_cast<int>(n.size()); }

int StandardPairModel::torus_variables() const {
  int k = 0;
  for (int i = 0; i < factors(); ++i) k += n[i] + 1;
  return k;
}

int StandardPairModel::torus_var(int i, int j) const {
  int k = 0;
  for (int l = 0; l < i; ++l) k += n[l] + 1;
  return k + j;
}

std::vector<Color> StandardPairModel::r() const {
  std::vector<Color> out;
  for (const auto& ai : a) out.push_back(ai.val());
  return out;
}

ExtendedPolySimplex StandardPairModel::shape() const { return ExtendedPolySimplex::make(n, r(), s); }

PairDescriptor StandardPairModel::descriptor() const {
  std::vector<Rational> rs;
  for (const auto& c : r()) rs.push_back(c.value());
  return standard_descriptor(n, rs, d, s);
}

int ValuedPolynomial::total_degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms) deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
  return deg;
}

ValuedPolynomial normalize_poly(const StandardPairModel& m,
                                const std::map<Exponent, Coefficient>& raw) {
  ValuedPolynomial out;
  for (const auto& [key, coef] : raw) {
    Exponent e = key;
    Coefficient c = coef;
    check_exponent(m, e);
    for (int i = 0; i < m.factors(); ++i) {
      int k = e[m.torus_var(i, 0)];
      for (int j = 1; j <= m.n[i]; ++j) k = std::min(k, e[m.torus_var(i, j)]);
      if (k == 0) continue;
      for (int j = 0; j <= m.n[i]; ++j) e[m.torus_var(i, j)] -= k;
      c *= m.a[i].pow(static_cast<unsigned>(k));
    }
    if (c.is_zero()) continue;
    auto [it, fresh] = out.terms.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) out.terms.erase(it);
    }
  }
  return out;
}

ValuedPolynomial poly_variable(const StandardPairModel& m, int var) {
  Exponent e(m.variables(), 0);
  e.at(var) = 1;
  return normalize_poly(m, {{e, Coefficient(1)}});
}

ValuedPolynomial poly_constant(const StandardPairModel& m, const Coefficient& c) {
  return normalize_poly(m, {{Exponent(m.variables(), 0), c}});
}

ValuedPolynomial poly_add(const StandardPairModel& m, const ValuedPolynomial& f,
                          const ValuedPolynomial& g) {
  std::map<Exponent, Coefficient> raw = f.terms;
  for (const auto& [e, c] : g.terms) raw[e] += c;
  std::erase_if(raw, [](const auto& kv) { return kv.second.is_zero(); });
  return normalize_poly(m, raw);
}

ValuedPolynomial poly_sub(const StandardPairModel& m, const ValuedPolynomial& f,
                          const ValuedPolynomial& g) {
  std::map<Exponent, Coefficient> raw = f.terms;
  for (const auto& [e, c] : g.terms) raw[e] += -c;
  std::erase_if(raw, [](const auto& kv) { return kv.second.is_zero(); });
  return normalize_poly(m, raw);
}

ValuedPolynomial poly_mul(const StandardPairModel& m, const ValuedPolynomial& f,
                          const ValuedPolynomial& g) {
  std::map<Exponent, Coefficient> raw;
  for (const auto& [e1, c1] : f.terms) {
    for (const auto& [e2, c2] : g.terms) {
      Exponent e(e1.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = e1[k] + e2[k];
      raw[e] += c1 * c2;
    }
  }
  std::erase_if(raw, [](const auto& kv) { return kv.second.is_zero(); });
  return normalize_poly(m, raw);
}

SkeletalPoint canonical_point(const SkeletalPoint& x) {
  SkeletalPoint out = x;
  for (auto& disc : out.discs) disc.center = disc.center.truncated(disc.u);
  return out;
}

void validate_point(const StandardPairModel& m, const SkeletalPoint& x) {
  if (static_cast<int>(x.v.size()) != m.factors() || static_cast<int>(x.discs.size()) != m.d) {
    throw DescriptorError("Shape", "point layout does not match the model");
  }
  const auto r = m.r();
  for (int i = 0; i < m.factors(); ++i) {
    if (static_cast<int>(x.v[i].size()) != m.n[i] + 1) {
      throw DescriptorError("Shape", "torus factor " + std::to_string(i) + " has the wrong length");
    }
    ExtRational sum = 0;
    for (const auto& vij : x.v[i]) {
      if (vij < ExtRational(0)) throw DomainError("Point", "monomial parameters must be >= 0");
      sum += vij;
    }
    if (sum != r[i]) {
      throw DomainError("Point", "monomial parameters of factor " + std::to_string(i) +
                                     " sum to " + to_string(sum) + ", expected " + to_string(r[i]));
    }
  }
  for (int j = 1; j <= m.d; ++j) {
    const auto& disc = x.discs[j - 1];
    if (disc.center.val() < ExtRational(0)) {
      throw DomainError("Point", "center of T_" + std::to_string(j) + " is not integral");
    }
    if (disc.u < ExtRational(0)) {
      throw DomainError("Point", "radius valuation of T_" + std::to_string(j) + " is negative");
    }
    if (j <= m.s && m.mode == Mode::standard && disc.u.is_inf() && disc.center.is_zero()) {
      throw DomainError("Point", "T_" + std::to_string(j) + " vanishes identically: point lies on the divisor");
    }
  }
}

namespace {

// Expands f around the disc centers: T_j -> T_j + c_j.
std::map<Exponent, Coefficient> shift_to_centers(const StandardPairModel& m, const SkeletalPoint& x,
                                                 const std::map<Exponent, Coefficient>& f) {
  std::map<Exponent, Coefficient> cur = f;
  for (int j = 1; j <= m.d; ++j) {
    const Coefficient& c = x.discs[j - 1].center;
    if (c.is_zero()) continue;
    const int var = m.disc_var(j);
    std::map<Exponent, Coefficient> next;
    std::vector<Coefficient> powers{Coefficient(1)};
    for (const auto& [e, coef] : cur) {
      const int k = e[var];
      while (static_cast<int>(powers.size()) <= k) powers.push_back(powers.back() * c);
      for (int i = 0; i <= k; ++i) {
        Exponent e2 = e;
        e2[var] = i;
        next[e2] += coef * powers[k - i] * Coefficient(binomial(k, i));
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
    cur = std::move(next);
  }
  return cur;
}

std::vector<ExtRational> weights(const StandardPairModel& m, const SkeletalPoint& x) {
  std::vector<ExtRational> w;
  for (int i = 0; i < m.factors(); ++i) w.insert(w.end(), x.v[i].begin(), x.v[i].end());
  for (const auto& disc : x.discs) w.push_back(disc.u);
  return w;
}

ExtRational evaluate(const StandardPairModel& m, const SkeletalPoint& x,
                     const ValuedPolynomial& f) {
  const auto w = weights(m, x);
  ExtRational best = ExtRational::infinity();
  for (const auto& [e, c] : shift_to_centers(m, x, f.terms)) {
    ExtRational val = c.val();
    for (std::size_t k = 0; k < e.size() && !val.is_inf(); ++k) {
      if (e[k]) val += ExtRational(static_cast<long>(e[k])) * w[k];
    }
    best = min(best, val);
  }
  return best;
}

}  // namespace

ExtRational seminorm_eval(const StandardPairModel& m, const SkeletalPoint& x,
                          const ValuedPolynomial& f) {
  validate_point(m, x);
  return evaluate(m, x, normalize_poly(m, f.terms));
}

ValuedPolynomial hasse_derivative(const StandardPairModel& m, const ValuedPolynomial& f,
                                  const Exponent& nu) {
  check_exponent(m, nu);
  for (int i = 0; i < m.factors(); ++i) {
    if (nu[m.torus_var(i, 0)] != 0) {
      throw DescriptorError("Shape", "T_{i0} is not a group direction");
    }
  }
  std::map<Exponent, Coefficient> raw;
  for (const auto& [e, c] : normalize_poly(m, f.terms).terms) {
    Rational factor = 1;
    Exponent e2 = e;
    for (int i = 0; i < m.factors() && factor != 0; ++i) {
      const int e0 = e[m.torus_var(i, 0)];
      for (int j = 1; j <= m.n[i]; ++j) {
        const int var = m.torus_var(i, j);
        factor *= binomial(e[var] - e0, nu[var]);
      }
    }
    for (int j = 1; j <= m.d && factor != 0; ++j) {
      const int var = m.disc_var(j);
      factor *= binomial(e[var], nu[var]);
      if (j > m.s) e2[var] -= nu[var];
    }
    if (factor == 0) continue;
    raw[e2] += c * Coefficient(factor);
  }
  std::erase_if(raw, [](const auto& kv) { return kv.second.is_zero(); });
  return normalize_poly(m, raw);
}

ExtRational star_eval(const StandardPairModel& m, const SkeletalPoint& x, const ExtRational& tau_t,
                      const ValuedPolynomial& f) {
  validate_point(m, x);
  if (tau_t < ExtRational(0)) throw DomainError("Flow", "flow parameter must be >= 0");
  const ValuedPolynomial g = normalize_poly(m, f.terms);
  std::vector<int> dirs;
  for (int i = 0; i < m.factors(); ++i) {
    for (int j = 1; j <= m.n[i]; ++j) dirs.push_back(m.torus_var(i, j));
  }
  for (int j = 1; j <= m.d; ++j) dirs.push_back(m.disc_var(j));
  const int deg = g.total_degree();

  ExtRational best = ExtRational::infinity();
  Exponent nu(m.variables(), 0);
  // all nu supported on dirs with |nu| <= deg
  auto visit = [&](auto&& self, std::size_t k, int left) -> void {
    if (k == dirs.size()) {
      const ValuedPolynomial dg = hasse_derivative(m, g, nu);
      if (dg.is_zero()) return;
      const long size = deg - left;
      best = min(best, evaluate(m, x, dg) + ExtRational(size) * tau_t);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      nu[dirs[k]] = a;
      self(self, k + 1, left - a);
    }
    nu[dirs[k]] = 0;
  };
  visit(visit, 0, deg);
  return best;
}

RealizationPoint trop(const StandardPairModel& m, const SkeletalPoint& x) {
  validate_point(m, x);
  RealizationPoint out;
  out.x = x.v;
  for (int j = 1; j <= m.s; ++j) {
    const auto& disc = x.discs[j - 1];
    out.y.push_back(min(disc.center.val(), disc.u));
  }
  bool infinite = false;
  for (const auto& y : out.y) infinite = infinite || y.is_inf();
  for (const auto& row : out.x) {
    for (const auto& v : row) infinite = infinite || v.is_inf();
  }
  out.closure = m.mode == Mode::closure || infinite;
  return out;
}

SkeletalPoint sigma(const StandardPairModel& m, const RealizationPoint& w) {
  RealizationPoint pt = w;
  pt.closure = pt.closure || m.mode == Mode::closure;
  if (contains(m.shape(), pt) == Containment::outside) {
    throw DomainError("Point", "point is outside the poly-simplex");
  }
  SkeletalPoint x;
  x.v = w.x;
  for (int j = 1; j <= m.d; ++j) {
    x.discs.push_back({Coefficient(), j <= m.s ? w.y[j - 1] : ExtRational(0)});
  }
  return x;
}

SkeletalPoint tau(const StandardPairModel& m, const SkeletalPoint& x) {
  return sigma(m, trop(m, x));
}

bool is_skeleton_point(const StandardPairModel& m, const SkeletalPoint& x) {
  return tau(m, x) == canonical_point(x);
}

SkeletalPoint flow(const StandardPairModel& m, const SkeletalPoint& x, const ExtRational& tau_t) {
  validate_point(m, x);
  if (tau_t < ExtRational(0)) throw DomainError("Flow", "flow parameter must be >= 0");
  SkeletalPoint out = x;
  for (int j = 1; j <= m.d; ++j) {
    auto& disc = out.discs[j - 1];
    const ExtRational reach = j <= m.s ? tau_t + disc.center.val() : tau_t;
    disc.u = min(disc.u, reach);
  }
  return canonical_point(out);
}

ExtRational flow_injectivity_window(const StandardPairModel& m, const SkeletalPoint& x) {
  const SkeletalPoint y = canonical_point(x);
  validate_point(m, y);
  ExtRational window = 0;
  for (int j = 1; j <= m.d; ++j) {
    const auto& disc = y.discs[j - 1];
    if (j > m.s) {
      window = max(window, disc.u);
    } else if (!disc.center.is_zero()) {
      // update starts once tau + val c drops below u
      const ExtRational vc = disc.center.val();
      window = max(window, disc.u.is_inf() ? disc.u : ExtRational(disc.u.value() - vc.value()));
    }
  }
  return window;
}

Reduction reduction_stratum(const StandardPairModel& m, const SkeletalPoint& x) {
  const SkeletalPoint y = canonical_point(x);
  const RealizationPoint w = trop(m, y);
  std::vector<std::vector<int>> z(m.factors());
  for (int i = 0; i < m.factors(); ++i) {
    for (int j = 0; j <= m.n[i]; ++j) {
      if (!w.x[i][j].is_zero()) z[i].push_back(j);
    }
  }
  std::vector<int> wset;
  for (int j = 1; j <= m.s; ++j) {
    if (!w.y[j - 1].is_zero()) wset.push_back(j);
  }
  Reduction out;
  out.stratum = standard_stratum_id(z, wset);
  out.generic = true;
  for (int j = 1; j <= m.d; ++j) {
    const auto& disc = y.discs[j - 1];
    if (!disc.center.is_zero()) out.generic = false;
    if (j > m.s && !disc.u.is_zero()) out.generic = false;
  }
  return out;
}

bool EpsilonData::contains(const StandardPairModel& m, const SkeletalPoint& x) const {
  const RealizationPoint w = trop(m, x);
  return std::all_of(w.y.begin(), w.y.end(), [&](const ExtRational& y) { return y <= ExtRational(level); });
}

std::vector<std::pair<Rational, Rational>> EpsilonData::level_coordinates(
    const StandardPairModel& m, const SkeletalPoint& x) const {
  if (!contains(m, x)) throw DomainError("Epsilon", "point is not in S_eps");
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& y : trop(m, x).y) out.emplace_back(level - y.value(), y.value());
  return out;
}

std::pair<Rational, Rational> EpsilonData::include(const std::pair<Rational, Rational>& p) const {
  if (p.first < 0 || p.second < 0 || p.first + p.second != level) {
    throw DomainError("Epsilon", "point is not in Delta(1, " + to_string(level) + ")");
  }
  Rational x0 = p.first + outer - level;
  x0.canonicalize();
  return {x0, p.second};
}

bool EpsilonData::on_level_skeleton(const StandardPairModel& m, const SkeletalPoint& x) const {
  if (!contains(m, x)) return false;
  SkeletalPoint s;
  s.v = x.v;
  const auto coords = level_coordinates(m, x);
  for (int j = 1; j <= m.d; ++j) {
    s.discs.push_back({Coefficient(), j <= m.s ? ExtRational(coords[j - 1].second) : ExtRational(0)});
  }
  return s == canonical_point(x);
}

bool EpsilonData::on_outer_skeleton(const StandardPairModel& m, const SkeletalPoint& x) const {
  return EpsilonData{outer, outer}.on_level_skeleton(m, x);
}

EpsilonData epsilon_data(const StandardPairModel& m, const Rational& level, const Rational& outer) {
  if (level < 0 || outer < level) {
    throw DomainError("Epsilon", "levels must satisfy 0 <= level <= outer");
  }
  if (m.mode != Mode::standard) throw DomainError("Epsilon", "epsilon levels need a standard model");
  Rational a = level, b = outer;
  a.canonicalize();
  b.canonicalize();
  return {a, b};
}

std::string to_string(ClosureClass c) {
  switch (c) {
    case ClosureClass::skeleton: return "S";
    case ClosureClass::divisor_skeleton: return "S(H)";
    case ClosureClass::outside: return "outside";
  }
  return "?";
}

ClosureClass closure_membership(const StandardPairModel& m, const RealizationPoint& p) {
  RealizationPoint pt = p;
  pt.closure = true;
  if (contains(m.shape(), pt) == Containment::outside) return ClosureClass::outside;
  for (const auto& y : pt.y) {
    if (y.is_inf()) return ClosureClass::divisor_skeleton;
  }
  return ClosureClass::skeleton;
}

}  // namespace dualcx
