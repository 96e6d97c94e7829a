#include "dualcx/polysimplex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "dualcx/error.hpp"

namespace dualcx {

int PolySimplex::factors() const { return is_point() ? 0 : static_cast<int>(n.size()); }

bool PolySimplex::is_point() const { return n.size() == 1 && n[0] == 0; }

int PolySimplex::dimension() const {
  return is_point() ? 0 : std::accumulate(n.begin(), n.end(), 0);
}

std::size_t PolySimplex::carrier_size() const {
  std::size_t size = 1;
  for (int i = 0; i < factors(); ++i) size *= static_cast<std::size_t>(n[i] + 1);
  return size;
}

std::size_t PolySimplex::flat_index(std::span<const int> tuple) const {
  std::size_t index = 0;
  for (int i = 0; i < factors(); ++i) index = index * (n[i] + 1) + tuple[i];
  return index;
}

Tuple PolySimplex::tuple_at(std::size_t index) const {
  Tuple t(factors());
  for (int i = factors() - 1; i >= 0; --i) {
    t[i] = static_cast<int>(index % (n[i] + 1));
    index /= (n[i] + 1);
  }
  return t;
}

std::vector<Tuple> PolySimplex::carrier() const {
  std::vector<Tuple> out;
  out.reserve(carrier_size());
  for (std::size_t q = 0; q < carrier_size(); ++q) out.push_back(tuple_at(q));
  return out;
}

ExtendedPolySimplex ExtendedPolySimplex::make(std::vector<int> n, std::vector<Color> r, int s) {
  ExtendedPolySimplex e;
  if (n.empty()) n = {0};
  e.base.n = std::move(n);
  if (e.base.is_point()) {
    if (r.size() > 1 || (r.size() == 1 && !r[0].is_zero())) {
      throw DescriptorError("Shape", "the point shape (0) carries color (0)");
    }
    r.clear();
  }
  e.r = std::move(r);
  e.s = s;
  e.validate();
  return e;
}

ExtendedPolySimplex ExtendedPolySimplex::point(int s) { return make({0}, {}, s); }

void ExtendedPolySimplex::validate() const {
  if (base.n.empty()) throw DescriptorError("Shape", "empty dimension tuple");
  if (!base.is_point()) {
    for (int v : base.n) {
      if (v <= 0) throw DescriptorError("Shape", "factor dimensions must be positive: " + to_string());
    }
  }
  if (static_cast<int>(r.size()) != factors()) {
    throw DescriptorError("Shape", "color count does not match factor count");
  }
  for (const Color& c : r) {
    if (!(c > Color(0))) throw DescriptorError("Shape", "colors must be positive or inf");
  }
  if (s < 0) throw DescriptorError("Shape", "negative divisor count");
}

std::string ExtendedPolySimplex::to_string() const {
  std::ostringstream os;
  os << "[(";
  for (std::size_t i = 0; i < base.n.size(); ++i) os << (i ? "," : "") << base.n[i];
  os << "),(";
  if (r.empty()) os << "0";
  for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
  os << ")," << s << "]";
  return os.str();
}

PSMorphism PSMorphism::identity(const ExtendedPolySimplex& e) {
  PSMorphism m;
  m.source = m.target = e;
  for (int i = 0; i < e.factors(); ++i) {
    m.f.push_back(i);
    std::vector<int> table(e.n(i) + 1);
    std::iota(table.begin(), table.end(), 0);
    m.c.push_back(std::move(table));
  }
  m.g.resize(e.s + 1);
  std::iota(m.g.begin(), m.g.end(), 0);
  return m;
}

std::optional<int> PSMorphism::preimage_factor(int l) const {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == l) return static_cast<int>(i);
  }
  return std::nullopt;
}

void PSMorphism::validate() const {
  source.validate();
  target.validate();
  const int p = source.factors();
  const int q = target.factors();
  if (static_cast<int>(f.size()) != p) throw DescriptorError("Morphism", "f has wrong length");
  std::set<int> used;
  for (int i = 0; i < p; ++i) {
    if (f[i] < -1 || f[i] >= q) throw DescriptorError("Morphism", "f value out of range");
    if (f[i] >= 0) {
      if (!used.insert(f[i]).second) throw DescriptorError("Morphism", "f is not injective");
      if (source.r[i] != target.r[f[i]]) {
        throw DescriptorError("ColorChangeProp", "color of factor " + std::to_string(i + 1) +
                                                     " is not preserved");
      }
    }
  }
  if (static_cast<int>(c.size()) != q) throw DescriptorError("Morphism", "c has wrong length");
  for (int l = 0; l < q; ++l) {
    auto pre = preimage_factor(l);
    std::size_t expected = pre ? static_cast<std::size_t>(source.n(*pre) + 1) : 1;
    if (c[l].size() != expected) throw DescriptorError("Morphism", "c_l has wrong domain size");
    std::set<int> seen;
    for (int v : c[l]) {
      if (v < 0 || v > target.n(l)) throw DescriptorError("Morphism", "c_l value out of range");
      if (!seen.insert(v).second) throw DescriptorError("Morphism", "c_l is not injective");
    }
  }
  if (static_cast<int>(g.size()) != source.s + 1 || g[0] != 0) {
    throw DescriptorError("DivInjection", "g must be defined on 0..s with g(0) = 0");
  }
  std::set<int> hit;
  for (int j = 1; j <= source.s; ++j) {
    if (g[j] < 0 || g[j] > target.s) throw DescriptorError("DivInjection", "g value out of range");
    if (g[j] != 0 && !hit.insert(g[j]).second) {
      throw DescriptorError("DivInjection", "g has a repeated nonzero value");
    }
  }
}

Tuple PSMorphism::apply(std::span<const int> tuple) const {
  const int q = target.factors();
  Tuple out(q);
  std::vector<int> pre(q, -1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] >= 0) pre[f[i]] = static_cast<int>(i);
  }
  for (int l = 0; l < q; ++l) out[l] = pre[l] >= 0 ? c[l][tuple[pre[l]]] : c[l][0];
  return out;
}

std::vector<std::size_t> PSMorphism::carrier_map() const {
  std::vector<std::size_t> out(source.carrier_size());
  for (std::size_t qi = 0; qi < out.size(); ++qi) {
    out[qi] = target.base.flat_index(apply(source.base.tuple_at(qi)));
  }
  return out;
}

std::string to_string(MorphismClass k) {
  switch (k) {
    case MorphismClass::injective: return "injective";
    case MorphismClass::isomorphism: return "isomorphism";
    case MorphismClass::general: return "general";
  }
  return "general";
}

Tuple apply_morphism(const PSMorphism& m, std::span<const int> tuple) {
  if (static_cast<int>(tuple.size()) != m.source.factors()) {
    throw DescriptorError("Carrier", "tuple length does not match the source");
  }
  for (int i = 0; i < m.source.factors(); ++i) {
    if (tuple[i] < 0 || tuple[i] > m.source.n(i)) throw DomainError("Carrier", "tuple out of range");
  }
  return m.apply(tuple);
}

PSMorphism compose(const PSMorphism& second, const PSMorphism& first) {
  if (!(first.target == second.source)) {
    throw CompositionError("cannot compose: " + first.target.to_string() + " vs " +
                           second.source.to_string());
  }
  PSMorphism out;
  out.source = first.source;
  out.target = second.target;
  out.f.assign(first.f.size(), -1);
  for (std::size_t i = 0; i < first.f.size(); ++i) {
    if (first.f[i] >= 0) out.f[i] = second.f[first.f[i]];
  }
  const int q = second.target.factors();
  out.c.resize(q);
  for (int l = 0; l < q; ++l) {
    auto m = second.preimage_factor(l);
    if (!m) {
      out.c[l] = {second.c[l][0]};
      continue;
    }
    auto i = first.preimage_factor(*m);
    if (i) {
      for (int v : first.c[*m]) out.c[l].push_back(second.c[l][v]);
    } else {
      out.c[l] = {second.c[l][first.c[*m][0]]};
    }
  }
  out.g.resize(first.g.size());
  for (std::size_t j = 0; j < first.g.size(); ++j) out.g[j] = second.g[first.g[j]];
  return out;
}

bool carrier_injective(const PSMorphism& m) {
  if (m.source.base.is_point()) return true;
  return std::all_of(m.f.begin(), m.f.end(), [](int v) { return v >= 0; });
}

bool divisor_injective(const PSMorphism& m) {
  return std::all_of(m.g.begin() + 1, m.g.end(), [](int v) { return v != 0; });
}

MorphismClass classify(const PSMorphism& m) {
  if (!carrier_injective(m) || !divisor_injective(m)) return MorphismClass::general;
  if (m.source.factors() == m.target.factors() && m.source.s == m.target.s &&
      m.source.carrier_size() == m.target.carrier_size()) {
    return MorphismClass::isomorphism;
  }
  return MorphismClass::injective;
}

PSMorphism inverse(const PSMorphism& iso) {
  if (classify(iso) != MorphismClass::isomorphism) {
    throw DomainError("Isomorphism", "inverse requested for a non-isomorphism");
  }
  PSMorphism out;
  out.source = iso.target;
  out.target = iso.source;
  const int p = iso.source.factors();
  out.f.assign(p, -1);
  out.c.resize(p);
  for (int i = 0; i < p; ++i) {
    const int l = iso.f[i];
    out.f[l] = i;
    out.c[i].assign(iso.c[l].size(), 0);
    for (std::size_t j = 0; j < iso.c[l].size(); ++j) out.c[i][iso.c[l][j]] = static_cast<int>(j);
  }
  out.g.assign(iso.g.size(), 0);
  for (std::size_t j = 0; j < iso.g.size(); ++j) out.g[iso.g[j]] = static_cast<int>(j);
  return out;
}

PSMorphism morphism_from_carrier_map(const ExtendedPolySimplex& source,
                                     const ExtendedPolySimplex& target,
                                     std::span<const std::size_t> map, std::vector<int> g) {
  if (map.size() != source.carrier_size()) {
    throw DescriptorError("IsomorphIsometric", "carrier map has wrong size");
  }
  for (std::size_t v : map) {
    if (v >= target.carrier_size()) throw DescriptorError("IsomorphIsometric", "carrier map out of range");
  }
  PSMorphism m;
  m.source = source;
  m.target = target;
  m.g = std::move(g);
  const int p = source.factors();
  const int q = target.factors();
  m.f.assign(p, -1);
  m.c.resize(q);
  std::vector<Tuple> images;
  images.reserve(map.size());
  for (std::size_t v : map) images.push_back(target.base.tuple_at(v));
  const auto tuples = source.base.carrier();

  for (int l = 0; l < q; ++l) {
    bool constant = true;
    for (const auto& im : images) constant = constant && im[l] == images[0][l];
    if (constant) {
      m.c[l] = {images[0][l]};
      continue;
    }
    int found = -1;
    for (int i = 0; i < p && found < 0; ++i) {
      std::vector<int> table(source.n(i) + 1, -1);
      bool ok = true;
      for (std::size_t qi = 0; qi < tuples.size() && ok; ++qi) {
        int& slot = table[tuples[qi][i]];
        if (slot < 0) slot = images[qi][l];
        ok = slot == images[qi][l];
      }
      if (ok) {
        found = i;
        m.c[l] = std::move(table);
      }
    }
    if (found < 0 || m.f[found] >= 0) {
      throw DescriptorError("IsomorphIsometric", "carrier map is not a product of simplex maps");
    }
    m.f[found] = l;
  }
  try {
    m.validate();
  } catch (const DescriptorError& e) {
    if (e.code() == "Morphism") throw DescriptorError("IsomorphIsometric", e.what());
    throw;
  }
  for (std::size_t qi = 0; qi < tuples.size(); ++qi) {
    if (m.apply(tuples[qi]) != images[qi]) {
      throw DescriptorError("IsomorphIsometric", "carrier map is not a product of simplex maps");
    }
  }
  return m;
}

std::size_t face_count(const ExtendedPolySimplex& e) {
  std::size_t count = std::size_t{1} << e.s;
  for (int i = 0; i < e.factors(); ++i) count *= (std::size_t{1} << (e.n(i) + 1)) - 1;
  return count;
}

std::vector<Face> enumerate_faces(const ExtendedPolySimplex& e) {
  const int p = e.factors();
  std::vector<unsigned> masks(p, 1);
  std::vector<Face> out;
  out.reserve(face_count(e));
  for (;;) {
    std::vector<int> fn;
    std::vector<Color> fr;
    std::vector<int> owner;
    std::vector<std::vector<int>> subsets(p);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j <= e.n(i); ++j) {
        if (masks[i] >> j & 1u) subsets[i].push_back(j);
      }
      if (subsets[i].size() >= 2) {
        fn.push_back(static_cast<int>(subsets[i].size()) - 1);
        fr.push_back(e.r[i]);
        owner.push_back(i);
      }
    }
    for (unsigned tmask = 0; tmask < (1u << e.s); ++tmask) {
      std::vector<int> g = {0};
      for (int j = 1; j <= e.s; ++j) {
        if (tmask >> (j - 1) & 1u) g.push_back(j);
      }
      Face face;
      face.shape = ExtendedPolySimplex::make(fn, fr, static_cast<int>(g.size()) - 1);
      PSMorphism& m = face.embedding;
      m.source = face.shape;
      m.target = e;
      m.f.assign(face.shape.factors(), -1);
      for (std::size_t k = 0; k < owner.size(); ++k) m.f[k] = owner[k];
      m.c = subsets;
      m.g = std::move(g);
      out.push_back(std::move(face));
    }
    int i = 0;
    while (i < p && ++masks[i] == (1u << (e.n(i) + 1))) masks[i++] = 1;
    if (i == p) break;
  }
  return out;
}

ImageKey image_key(const PSMorphism& m) {
  ImageKey key;
  key.carrier = m.carrier_map();
  std::sort(key.carrier.begin(), key.carrier.end());
  key.carrier.erase(std::unique(key.carrier.begin(), key.carrier.end()), key.carrier.end());
  for (std::size_t j = 1; j < m.g.size(); ++j) {
    if (m.g[j] != 0) key.divisor.push_back(m.g[j]);
  }
  std::sort(key.divisor.begin(), key.divisor.end());
  return key;
}

Canonical canonicalize(const ExtendedPolySimplex& e) {
  Canonical out;
  out.permutation.resize(e.factors());
  std::iota(out.permutation.begin(), out.permutation.end(), 0);
  std::stable_sort(out.permutation.begin(), out.permutation.end(), [&](int a, int b) {
    if (e.n(a) != e.n(b)) return e.n(a) < e.n(b);
    return e.r[a] < e.r[b];
  });
  std::vector<int> n;
  std::vector<Color> r;
  for (int i : out.permutation) {
    n.push_back(e.n(i));
    r.push_back(e.r[i]);
  }
  out.shape = ExtendedPolySimplex::make(e.base.is_point() ? std::vector<int>{0} : n, r, e.s);
  PSMorphism m = PSMorphism::identity(e);
  m.target = out.shape;
  m.c.assign(e.factors(), {});
  for (int k = 0; k < e.factors(); ++k) {
    const int i = out.permutation[k];
    m.f[i] = k;
    m.c[k].resize(e.n(i) + 1);
    std::iota(m.c[k].begin(), m.c[k].end(), 0);
  }
  out.to_canonical = std::move(m);
  return out;
}

bool isomorphic(const ExtendedPolySimplex& a, const ExtendedPolySimplex& b) {
  return canonicalize(a).shape == canonicalize(b).shape;
}

bool IntegerMetricSpace::valid() const {
  const std::size_t n = dist.size();
  if (!labels.empty() && labels.size() != n) return false;
  for (const auto& row : dist) {
    if (row.size() != n) return false;
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (dist[a][a] != 0) return false;
    for (std::size_t b = 0; b < n; ++b) {
      if (dist[a][b] != dist[b][a]) return false;
      if (a != b && dist[a][b] <= 0) return false;
      for (std::size_t c = 0; c < n; ++c) {
        if (dist[a][c] > dist[a][b] + dist[b][c]) return false;
      }
    }
  }
  return true;
}

int hamming(std::span<const int> a, std::span<const int> b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

std::optional<MetricFactorization> factorize_metric(const IntegerMetricSpace& m) {
  const std::size_t n = m.size();
  if (n == 0 || !m.valid()) return std::nullopt;
  MetricFactorization out;
  if (n == 1) {
    out.shape.n = {0};
    out.coordinates = {Tuple{}};
    return out;
  }
  std::vector<std::size_t> nbrs;
  for (std::size_t u = 1; u < n; ++u) {
    if (m.dist[0][u] == 1) nbrs.push_back(u);
  }
  // neighbors of the base point split into cliques, one per factor
  std::vector<std::vector<std::size_t>> cliques;
  for (std::size_t u : nbrs) {
    auto it = std::find_if(cliques.begin(), cliques.end(),
                           [&](const auto& cl) { return m.dist[cl.front()][u] == 1; });
    if (it == cliques.end()) {
      cliques.push_back({u});
    } else {
      it->push_back(u);
    }
  }
  for (const auto& cl : cliques) {
    for (std::size_t a : cl) {
      for (std::size_t b : cl) {
        if (a != b && m.dist[a][b] != 1) return std::nullopt;
      }
    }
  }
  std::stable_sort(cliques.begin(), cliques.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  const std::size_t p = cliques.size();
  if (p == 0) return std::nullopt;
  for (const auto& cl : cliques) out.shape.n.push_back(static_cast<int>(cl.size()));
  if (out.shape.carrier_size() != n) return std::nullopt;
  std::set<Tuple> seen;
  for (std::size_t x = 0; x < n; ++x) {
    Tuple t(p, 0);
    for (std::size_t k = 0; k < p; ++k) {
      for (std::size_t j = 0; j < cliques[k].size(); ++j) {
        if (m.dist[x][cliques[k][j]] == m.dist[x][0] - 1) {
          if (t[k] != 0) return std::nullopt;
          t[k] = static_cast<int>(j) + 1;
        }
      }
    }
    if (!seen.insert(t).second) return std::nullopt;
    out.coordinates.push_back(std::move(t));
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (hamming(out.coordinates[a], out.coordinates[b]) != m.dist[a][b]) return std::nullopt;
    }
  }
  return out;
}

}  // namespace dualcx
