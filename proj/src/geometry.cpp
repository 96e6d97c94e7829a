#include "dualcx/geometry.hpp"

#include <algorithm>
#include <functional>

#include "dualcx/error.hpp"

namespace dualcx {

namespace {

void check_layout(const ExtendedPolySimplex& e, const RealizationPoint& pt) {
  bool ok = static_cast<int>(pt.x.size()) == e.factors() && static_cast<int>(pt.y.size()) == e.s;
  for (int i = 0; ok && i < e.factors(); ++i) ok = static_cast<int>(pt.x[i].size()) == e.n(i) + 1;
  if (!ok) throw DescriptorError("Shape", "point layout does not match " + e.to_string());
}

void check_affine_layout(const ExtendedPolySimplex& e, const AffineLinearFunction& h) {
  bool ok = static_cast<int>(h.a.size()) == e.factors() && static_cast<int>(h.b.size()) == e.s;
  for (int i = 0; ok && i < e.factors(); ++i) ok = static_cast<int>(h.a[i].size()) == e.n(i) + 1;
  if (!ok) throw DescriptorError("Shape", "affine function layout does not match " + e.to_string());
  if (h.lambda < 0) throw DescriptorError("Affine", "lambda must be nonnegative");
  for (const auto& row : h.a) {
    for (long v : row) {
      if (v < 0) throw DescriptorError("Affine", "coefficients must be natural numbers");
    }
  }
  for (long v : h.b) {
    if (v < 0) throw DescriptorError("Affine", "coefficients must be natural numbers");
  }
}

}  // namespace

std::string to_string(Containment c) {
  switch (c) {
    case Containment::outside: return "outside";
    case Containment::boundary: return "boundary";
    case Containment::interior: return "interior";
  }
  return "outside";
}

Containment contains(const ExtendedPolySimplex& e, const RealizationPoint& pt) {
  check_layout(e, pt);
  bool interior = true;
  for (int i = 0; i < e.factors(); ++i) {
    bool has_inf = false;
    ExtRational sum(0);
    for (const auto& v : pt.x[i]) {
      if (v < ExtRational(0)) return Containment::outside;
      has_inf = has_inf || v.is_inf();
      interior = interior && !v.is_zero();
      sum += v;
    }
    if (e.r[i].is_inf() ? !has_inf : sum != e.r[i]) return Containment::outside;
  }
  for (const auto& v : pt.y) {
    if (v < ExtRational(0)) return Containment::outside;
    if (v.is_inf()) {
      if (!pt.closure) return Containment::outside;
      interior = false;
    }
    interior = interior && !v.is_zero();
  }
  return interior ? Containment::interior : Containment::boundary;
}

RealizationPoint realize_morphism(const PSMorphism& m, const RealizationPoint& pt) {
  if (contains(m.source, pt) == Containment::outside) {
    throw DomainError("Realization", "point is not in " + m.source.to_string());
  }
  RealizationPoint out;
  out.closure = pt.closure;
  const auto& t = m.target;
  out.x.resize(t.factors());
  for (int l = 0; l < t.factors(); ++l) {
    out.x[l].assign(t.n(l) + 1, ExtRational(0));
    auto pre = m.preimage_factor(l);
    if (!pre) {
      out.x[l][m.c[l][0]] = t.r[l];
    } else {
      for (std::size_t j = 0; j < m.c[l].size(); ++j) out.x[l][m.c[l][j]] = pt.x[*pre][j];
    }
  }
  out.y.assign(t.s, ExtRational(0));
  for (int j = 1; j <= m.source.s; ++j) {
    if (m.g[j] != 0) out.y[m.g[j] - 1] = pt.y[j - 1];
  }
  return out;
}

std::optional<RealizationPoint> preimage(const PSMorphism& m, const RealizationPoint& pt) {
  if (classify(m) == MorphismClass::general) {
    throw DomainError("Injective", "preimage needs an injective morphism");
  }
  check_layout(m.target, pt);
  RealizationPoint cand;
  cand.closure = pt.closure;
  for (int i = 0; i < m.source.factors(); ++i) {
    const int l = m.f[i];
    std::vector<ExtRational> row;
    for (int v : m.c[l]) row.push_back(pt.x[l][v]);
    cand.x.push_back(std::move(row));
  }
  for (int j = 1; j <= m.source.s; ++j) cand.y.push_back(pt.y[m.g[j] - 1]);
  if (contains(m.source, cand) == Containment::outside) return std::nullopt;
  if (!(realize_morphism(m, cand) == pt)) return std::nullopt;
  return cand;
}

RealizationPoint barycenter(const ExtendedPolySimplex& e) {
  RealizationPoint pt;
  for (int i = 0; i < e.factors(); ++i) {
    ExtRational v = e.r[i].is_inf() ? ExtRational::infinity()
                                     : ExtRational(Rational(e.r[i].value() / (e.n(i) + 1)));
    pt.x.emplace_back(e.n(i) + 1, v);
  }
  pt.y.assign(e.s, ExtRational(1));
  return pt;
}

std::vector<RealizationPoint> vertices(const ExtendedPolySimplex& e) {
  std::vector<RealizationPoint> out;
  for (const Tuple& t : e.base.carrier()) {
    RealizationPoint pt;
    for (int i = 0; i < e.factors(); ++i) {
      pt.x.emplace_back(e.n(i) + 1, ExtRational(0));
      pt.x[i][t[i]] = e.r[i];
    }
    pt.y.assign(e.s, ExtRational(0));
    out.push_back(std::move(pt));
  }
  return out;
}

std::vector<RealizationPoint> lattice_points(const ExtendedPolySimplex& e, int den,
                                             const Rational& y_max) {
  if (den <= 0) throw DomainError("Grid", "denominator must be positive");
  for (const auto& r : e.r) {
    if (r.is_inf()) throw DomainError("Grid", "lattice points need finite colors");
  }
  // compositions of den into n_i + 1 parts, per factor
  std::vector<std::vector<std::vector<ExtRational>>> per_factor(e.factors());
  for (int i = 0; i < e.factors(); ++i) {
    std::vector<int> parts(e.n(i) + 1, 0);
    std::function<void(int, int)> rec = [&](int k, int left) {
      if (k == e.n(i)) {
        parts[k] = left;
        std::vector<ExtRational> row;
        for (int v : parts) row.emplace_back(Rational(e.r[i].value() * v / den));
        per_factor[i].push_back(std::move(row));
        return;
      }
      for (int v = 0; v <= left; ++v) {
        parts[k] = v;
        rec(k + 1, left - v);
      }
    };
    rec(0, den);
  }
  std::vector<ExtRational> ys;
  for (Rational v = 0; v <= y_max; v += Rational(1, den)) ys.emplace_back(v);
  std::vector<RealizationPoint> out;
  RealizationPoint cur;
  cur.x.resize(e.factors());
  cur.y.resize(e.s);
  std::function<void(int)> rec = [&](int k) {
    if (k < e.factors()) {
      for (const auto& row : per_factor[k]) {
        cur.x[k] = row;
        rec(k + 1);
      }
    } else if (k < e.factors() + e.s) {
      for (const auto& v : ys) {
        cur.y[k - e.factors()] = v;
        rec(k + 1);
      }
    } else {
      out.push_back(cur);
    }
  };
  rec(0);
  return out;
}

AffineLinearFunction normalize_affine(const ExtendedPolySimplex& e, AffineLinearFunction h) {
  check_affine_layout(e, h);
  for (int i = 0; i < e.factors(); ++i) {
    long m = *std::min_element(h.a[i].begin(), h.a[i].end());
    if (m == 0) continue;
    if (e.r[i].is_inf()) {
      throw DescriptorError("Affine", "normalization would need lambda = inf");
    }
    for (long& v : h.a[i]) v -= m;
    h.lambda += e.r[i].value() * m;
  }
  return h;
}

ExtRational eval_affine(const ExtendedPolySimplex& e, const AffineLinearFunction& h,
                        const RealizationPoint& pt) {
  check_affine_layout(e, h);
  if (contains(e, pt) == Containment::outside) {
    throw DomainError("Realization", "point is not in " + e.to_string());
  }
  ExtRational sum(h.lambda);
  for (int i = 0; i < e.factors(); ++i) {
    for (int j = 0; j <= e.n(i); ++j) sum += ExtRational(h.a[i][j]) * pt.x[i][j];
  }
  for (int j = 0; j < e.s; ++j) sum += ExtRational(h.b[j]) * pt.y[j];
  return sum;
}

AffineLinearFunction pullback_affine(const PSMorphism& m, const AffineLinearFunction& h) {
  check_affine_layout(m.target, h);
  const auto& s = m.source;
  AffineLinearFunction out;
  out.lambda = h.lambda;
  out.a.resize(s.factors());
  for (int i = 0; i < s.factors(); ++i) out.a[i].assign(s.n(i) + 1, 0);
  out.b.assign(s.s, 0);
  for (int l = 0; l < m.target.factors(); ++l) {
    auto pre = m.preimage_factor(l);
    if (!pre) {
      long coef = h.a[l][m.c[l][0]];
      if (coef == 0) continue;
      if (m.target.r[l].is_inf()) {
        throw DescriptorError("Affine", "pullback would need lambda = inf");
      }
      out.lambda += m.target.r[l].value() * coef;
    } else {
      for (std::size_t j = 0; j < m.c[l].size(); ++j) out.a[*pre][j] = h.a[l][m.c[l][j]];
    }
  }
  for (int j = 1; j <= s.s; ++j) {
    if (m.g[j] != 0) out.b[j - 1] = h.b[m.g[j] - 1];
  }
  return normalize_affine(s, out);
}

}  // namespace dualcx
