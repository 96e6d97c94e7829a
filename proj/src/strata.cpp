#include "dualcx/strata.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace dualcx {

namespace {

std::string join(const std::vector<int>& v, const char* sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

LabelSet x_part(const PairDescriptor& d, const LabelSet& a) {
  LabelSet out;
  for (const auto& l : a) {
    if (d.components().x_components.count(l)) out.insert(l);
  }
  return out;
}

LabelSet h_part(const PairDescriptor& d, const LabelSet& a) {
  LabelSet out;
  for (const auto& l : a) {
    if (d.components().h_components.count(l)) out.insert(l);
  }
  return out;
}

}  // namespace

LabelSet ChartData::x_set() const { return LabelSet(alpha.begin(), alpha.end()); }

LabelSet ChartData::h_set() const {
  LabelSet out;
  for (const auto& b : gamma) out.insert(b.begin(), b.end());
  return out;
}

std::optional<std::size_t> ChartData::alpha_index(const Label& l) const {
  auto it = std::find(alpha.begin(), alpha.end(), l);
  if (it == alpha.end()) return std::nullopt;
  return static_cast<std::size_t>(it - alpha.begin());
}

int ChartData::block_of(const Label& h) const {
  for (std::size_t m = 0; m < gamma.size(); ++m) {
    if (gamma[m].count(h)) return static_cast<int>(m) + 1;
  }
  return 0;
}

std::string to_string(StratumKind k) { return k == StratumKind::x ? "X" : "H"; }

PairDescriptor::PairDescriptor(ComponentTable components, std::vector<StratumRecord> strata,
                               std::vector<std::pair<std::string, std::string>> order)
    : components_(std::move(components)), strata_(std::move(strata)), order_(std::move(order)) {
  for (std::size_t i = 0; i < strata_.size(); ++i) {
    if (!index_.emplace(strata_[i].id, i).second) {
      throw DescriptorError("WellStrat", "duplicate stratum id '" + strata_[i].id + "'");
    }
    if (strata_[i].charts.empty()) {
      throw DescriptorError("Chart", "stratum '" + strata_[i].id + "' has no chart");
    }
  }
  const std::size_t n = strata_.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [x, y] : order_) adj[index(x)].push_back(index(y));
  leq_.assign(n, std::vector<char>(n, 0));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack = {s};
    leq_[s][s] = 1;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : adj[u]) {
        if (!leq_[s][v]) {
          leq_[s][v] = 1;
          stack.push_back(v);
        }
      }
    }
  }
}

std::size_t PairDescriptor::index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw DescriptorError("UnknownStratum", "unknown stratum id '" + id + "'");
  return it->second;
}

std::vector<std::string> PairDescriptor::upper_set(const std::string& x) const {
  const std::size_t xi = index(x);
  std::vector<std::string> out;
  for (std::size_t y = 0; y < size(); ++y) {
    if (leq(xi, y)) out.push_back(strata_[y].id);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> PairDescriptor::covers() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t x = 0; x < size(); ++x) {
    for (std::size_t y = 0; y < size(); ++y) {
      if (x == y || !leq(x, y) || leq(y, x)) continue;
      bool cover = true;
      for (std::size_t z = 0; z < size() && cover; ++z) {
        cover = z == x || z == y || !(leq(x, z) && leq(z, y));
      }
      if (cover) out.emplace_back(strata_[x].id, strata_[y].id);
    }
  }
  return out;
}

std::string standard_stratum_id(const std::vector<std::vector<int>>& z, const std::vector<int>& w) {
  std::string id = "S";
  for (const auto& zi : z) id += "[" + join(zi) + "]";
  return id + "/[" + join(w) + "]";
}

std::string standard_x_label(const std::vector<int>& k) { return "X(" + join(k) + ")"; }

std::string standard_h_label(const std::vector<int>& k, int j) {
  return "H(" + join(k) + ";" + std::to_string(j) + ")";
}

PairDescriptor standard_descriptor(const std::vector<int>& n_in, const std::vector<Rational>& r_in,
                                   int d, int s) {
  std::vector<int> n = n_in.empty() ? std::vector<int>{0} : n_in;
  const bool point = n.size() == 1 && n[0] == 0;
  std::vector<Rational> r = r_in;
  if (point) {
    if (r.size() > 1 || (r.size() == 1 && r[0] != 0)) {
      throw DescriptorError("StandardPair", "n = (0) requires r = (0)");
    }
    r.clear();
  }
  if (d < 0 || s < 0 || s > d) throw DescriptorError("StandardPair", "need 0 <= s <= d");
  if (!point) {
    if (r.size() != n.size()) throw DescriptorError("StandardPair", "r must have one entry per factor");
    for (int v : n) {
      if (v <= 0) throw DescriptorError("StandardPair", "factor dimensions must be positive");
    }
    for (const auto& v : r) {
      if (v <= 0) throw DescriptorError("StandardPair", "r_i must be positive");
    }
  }
  const int p = point ? 0 : static_cast<int>(n.size());
  std::vector<Color> colors(r.begin(), r.end());

  ComponentTable comps;
  const ExtendedPolySimplex full = ExtendedPolySimplex::make(n, colors, s);
  for (const Tuple& k : full.base.carrier()) {
    comps.x_components.insert(standard_x_label(k));
    for (int j = 1; j <= s; ++j) {
      comps.h_components.insert(standard_h_label(k, j));
      comps.container[standard_h_label(k, j)] = standard_x_label(k);
    }
  }

  struct Raw {
    std::vector<std::vector<int>> z;
    std::vector<int> w;
    StratumRecord rec;
  };
  std::vector<Raw> raws;
  std::vector<unsigned> masks(p, 1);
  for (;;) {
    std::vector<std::vector<int>> z(p);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j <= n[i]; ++j) {
        if (masks[i] >> j & 1u) z[i].push_back(j);
      }
    }
    for (unsigned wm = 0; wm < (1u << s); ++wm) {
      std::vector<int> w;
      for (int j = 1; j <= s; ++j) {
        if (wm >> (j - 1) & 1u) w.push_back(j);
      }
      std::vector<int> cn;
      std::vector<Color> cr;
      std::vector<int> kept;
      for (int i = 0; i < p; ++i) {
        if (z[i].size() >= 2) {
          cn.push_back(static_cast<int>(z[i].size()) - 1);
          cr.push_back(colors[i]);
          kept.push_back(i);
        }
      }
      ChartData chart;
      chart.shape = ExtendedPolySimplex::make(cn, cr, static_cast<int>(w.size()));
      std::vector<Tuple> ks;
      for (const Tuple& t : chart.shape.base.carrier()) {
        Tuple k(p);
        for (int i = 0; i < p; ++i) k[i] = z[i][0];
        for (std::size_t m = 0; m < kept.size(); ++m) k[kept[m]] = z[kept[m]][t[m]];
        chart.alpha.push_back(standard_x_label(k));
        ks.push_back(std::move(k));
      }
      StratumRecord rec;
      rec.id = standard_stratum_id(z, w);
      rec.kind = w.empty() ? StratumKind::x : StratumKind::h;
      rec.a.insert(chart.alpha.begin(), chart.alpha.end());
      for (int j : w) {
        LabelSet block;
        for (const Tuple& k : ks) block.insert(standard_h_label(k, j));
        rec.a.insert(block.begin(), block.end());
        chart.gamma.push_back(std::move(block));
      }
      rec.charts.push_back(std::move(chart));
      raws.push_back({z, w, std::move(rec)});
    }
    int i = 0;
    while (i < p && ++masks[i] == (1u << (n[i] + 1))) masks[i++] = 1;
    if (i == p) break;
  }
  std::stable_sort(raws.begin(), raws.end(), [](const Raw& a, const Raw& b) {
    int da = a.rec.chart().shape.dimension(), db = b.rec.chart().shape.dimension();
    if (da != db) return da > db;
    return a.rec.id < b.rec.id;
  });
  // covering relations: drop one element from some Z_i or from W
  std::vector<std::pair<std::string, std::string>> order;
  for (const Raw& x : raws) {
    for (int i = 0; i < p; ++i) {
      if (x.z[i].size() < 2) continue;
      for (std::size_t e = 0; e < x.z[i].size(); ++e) {
        auto z = x.z;
        z[i].erase(z[i].begin() + e);
        order.emplace_back(x.rec.id, standard_stratum_id(z, x.w));
      }
    }
    for (std::size_t e = 0; e < x.w.size(); ++e) {
      auto w = x.w;
      w.erase(w.begin() + e);
      order.emplace_back(x.rec.id, standard_stratum_id(x.z, w));
    }
  }
  std::vector<StratumRecord> strata;
  for (auto& raw : raws) strata.push_back(std::move(raw.rec));
  return PairDescriptor(std::move(comps), std::move(strata), std::move(order));
}

PairDescriptor disjoint_union(const PairDescriptor& a, const PairDescriptor& b,
                              const std::string& prefix_a, const std::string& prefix_b) {
  ComponentTable comps;
  std::vector<StratumRecord> strata;
  std::vector<std::pair<std::string, std::string>> order;
  auto add = [&](const PairDescriptor& d, const std::string& pre) {
    for (const auto& l : d.components().x_components) comps.x_components.insert(pre + l);
    for (const auto& l : d.components().h_components) comps.h_components.insert(pre + l);
    for (const auto& [h, x] : d.components().container) comps.container[pre + h] = pre + x;
    for (StratumRecord rec : d.strata()) {
      rec.id = pre + rec.id;
      LabelSet a2;
      for (const auto& l : rec.a) a2.insert(pre + l);
      rec.a = std::move(a2);
      for (auto& ch : rec.charts) {
        for (auto& l : ch.alpha) l = pre + l;
        for (auto& block : ch.gamma) {
          LabelSet b2;
          for (const auto& l : block) b2.insert(pre + l);
          block = std::move(b2);
        }
      }
      strata.push_back(std::move(rec));
    }
    for (const auto& [x, y] : d.generators()) order.emplace_back(pre + x, pre + y);
  };
  add(a, prefix_a);
  add(b, prefix_b);
  return PairDescriptor(std::move(comps), std::move(strata), std::move(order));
}

std::optional<std::string> least_stratum(const PairDescriptor& desc,
                                         const std::optional<std::string>& restrict_to) {
  std::vector<std::size_t> cand;
  for (std::size_t y = 0; y < desc.size(); ++y) {
    if (!restrict_to || desc.leq(desc.index(*restrict_to), y)) cand.push_back(y);
  }
  for (std::size_t c : cand) {
    bool least = std::all_of(cand.begin(), cand.end(), [&](std::size_t y) { return desc.leq(c, y); });
    if (least) return desc.at(c).id;
  }
  return std::nullopt;
}

RestrictionMaps restriction_maps(const PairDescriptor& desc, const std::string& x,
                                 const std::string& y) {
  if (!desc.leq(x, y)) throw DomainError("Order", x + " is not <= " + y);
  try {
    return chart_restriction(desc.stratum(x).chart(), desc.stratum(y).chart());
  } catch (const DescriptorError& e) {
    throw DescriptorError(e.code(), x + " <= " + y + ": " + e.what());
  }
}

RestrictionMaps chart_restriction(const ChartData& cx, const ChartData& cy) {
  RestrictionMaps out;
  out.inclusion = cy.alpha;
  std::vector<std::size_t> map;
  for (const auto& l : cy.alpha) {
    auto q = cx.alpha_index(l);
    if (!q) throw DescriptorError("Order", "component " + l + " does not pass through the smaller stratum");
    map.push_back(*q);
  }
  const int sx = cx.shape.s, sy = cy.shape.s;
  out.j.assign(sy + 1, 0);
  for (int m = 1; m <= sy; ++m) {
    int found = 0;
    for (int b = 1; b <= sx; ++b) {
      const auto& big = cx.gamma[b - 1];
      const auto& small = cy.gamma[m - 1];
      if (std::includes(big.begin(), big.end(), small.begin(), small.end())) {
        if (found) throw DescriptorError("DivInjection", "a D-block lies in two blocks below");
        found = b;
      }
    }
    if (!found) throw DescriptorError("DivInjection", "a D-block lies in no block below");
    out.j[m] = found;
  }
  for (int m = 1; m <= sy; ++m) {
    for (int m2 = 1; m2 < m; ++m2) {
      if (out.j[m] == out.j[m2]) throw DescriptorError("DivInjection", "j_{y,x} is not injective");
    }
  }
  const LabelSet hy = cy.h_set();
  out.k.assign(sx + 1, 0);
  int hits = 0;
  for (int b = 1; b <= sx; ++b) {
    LabelSet cut;
    for (const auto& h : cx.gamma[b - 1]) {
      if (hy.count(h)) cut.insert(h);
    }
    if (cut.empty()) continue;
    auto it = std::find(cy.gamma.begin(), cy.gamma.end(), cut);
    if (it == cy.gamma.end()) throw DescriptorError("DivInjection", "k_{x,y} is not defined");
    out.k[b] = static_cast<int>(it - cy.gamma.begin()) + 1;
    ++hits;
  }
  if (hits != sy) throw DescriptorError("DivInjection", "k_{x,y} is not a bijection");
  for (int m = 1; m <= sy; ++m) {
    if (out.k[out.j[m]] != m) throw DescriptorError("DivInjection", "k o j is not the identity");
  }
  out.embedding = morphism_from_carrier_map(cy.shape, cx.shape, map, out.j);
  if (classify(out.embedding) == MorphismClass::general) {
    throw DescriptorError("IsomorphIsometric", "restriction is not injective");
  }
  return out;
}

ChartData transport_chart(const ChartData& c, const PSMorphism& iso) {
  if (classify(iso) != MorphismClass::isomorphism || !(iso.source == c.shape)) {
    throw DomainError("ChartIsom", "transport needs an isomorphism out of the chart shape");
  }
  ChartData out;
  out.shape = iso.target;
  out.alpha.assign(c.alpha.size(), "");
  const auto map = iso.carrier_map();
  for (std::size_t q = 0; q < map.size(); ++q) out.alpha[map[q]] = c.alpha[q];
  out.gamma.assign(c.gamma.size(), {});
  for (std::size_t m = 1; m < iso.g.size(); ++m) out.gamma[iso.g[m] - 1] = c.gamma[m - 1];
  return out;
}

PSMorphism chart_change(const ChartData& c, const ChartData& c2) {
  if (c.x_set() != c2.x_set() || c.alpha.size() != c2.alpha.size() ||
      c.gamma.size() != c2.gamma.size()) {
    throw DomainError("ChartIsom", "charts belong to different strata");
  }
  std::vector<std::size_t> map;
  for (const auto& l : c.alpha) map.push_back(*c2.alpha_index(l));
  std::vector<int> g = {0};
  for (const auto& block : c.gamma) {
    auto it = std::find(c2.gamma.begin(), c2.gamma.end(), block);
    if (it == c2.gamma.end()) throw DomainError("ChartIsom", "charts have different D-partitions");
    g.push_back(static_cast<int>(it - c2.gamma.begin()) + 1);
  }
  PSMorphism h = morphism_from_carrier_map(c.shape, c2.shape, map, g);
  if (classify(h) != MorphismClass::isomorphism) {
    throw DescriptorError("ChartIsom", "chart change is not an isomorphism");
  }
  return h;
}

namespace {

struct Checker {
  const PairDescriptor& d;
  ValidationReport report;

  void issue(const std::string& code, const std::string& msg) { report.issues.push_back({code, msg}); }

  void components() {
    const auto& c = d.components();
    for (const auto& l : c.x_components) {
      if (c.h_components.count(l)) issue("WellStrat", "label " + l + " is both an X- and an H-component");
    }
    for (const auto& h : c.h_components) {
      auto it = c.container.find(h);
      if (it == c.container.end() || !c.x_components.count(it->second)) {
        issue("IrredCompProp", "H-component " + h + " has no containing X-component");
      }
    }
  }

  void chart(const StratumRecord& rec, const ChartData& ch) {
    const std::string where = "stratum " + rec.id;
    try {
      ch.shape.validate();
    } catch (const DescriptorError& e) {
      issue("Chart", where + ": " + e.what());
      return;
    }
    if (ch.alpha.size() != ch.shape.carrier_size()) {
      issue("Chart", where + ": alpha does not cover the carrier");
      return;
    }
    if (ch.x_set().size() != ch.alpha.size()) issue("Chart", where + ": alpha is not injective");
    if (ch.x_set() != x_part(d, rec.a)) {
      issue("StrataForm", where + ": alpha image differs from the X-components of A");
    }
    if (static_cast<int>(ch.gamma.size()) != ch.shape.s) {
      issue("Chart", where + ": gamma size differs from s");
      return;
    }
    std::size_t total = 0;
    for (const auto& block : ch.gamma) total += block.size();
    if (total != ch.h_set().size()) issue("BijThm", where + ": D-blocks overlap");
    if (ch.h_set() != h_part(d, rec.a)) issue("BijThm", where + ": D-blocks do not partition the H-part of A");
    const LabelSet xs = ch.x_set();
    const auto& cont = d.components().container;
    for (const auto& block : ch.gamma) {
      std::map<Label, int> per;
      bool ok = !block.empty();
      for (const auto& h : block) {
        auto it = cont.find(h);
        if (it == cont.end() || !xs.count(it->second)) {
          ok = false;
        } else {
          ++per[it->second];
        }
      }
      for (const auto& x : xs) ok = ok && per[x] == 1;
      if (!ok) {
        issue("BijThm", where + ": a D-block does not meet each X-component through the stratum exactly once");
      }
    }
    IntegerMetricSpace metric;
    const auto tuples = ch.shape.base.carrier();
    metric.labels = ch.alpha;
    for (const auto& a : tuples) {
      std::vector<long> row;
      for (const auto& b : tuples) row.push_back(hamming(a, b));
      metric.dist.push_back(std::move(row));
    }
    auto fac = factorize_metric(metric);
    std::vector<int> sorted_n = ch.shape.base.n;
    std::sort(sorted_n.begin(), sorted_n.end());
    if (!fac || fac->shape.n != sorted_n) {
      issue("IsomorphIsometric", where + ": component metric does not factor as the chart shape");
    }
  }

  void strata() {
    std::map<LabelSet, StratumKind> kinds;
    for (const auto& rec : d.strata()) {
      const std::string where = "stratum " + rec.id;
      bool known = true;
      for (const auto& l : rec.a) {
        if (!d.components().x_components.count(l) && !d.components().h_components.count(l)) {
          issue("StrataForm", where + ": unknown component " + l);
          known = false;
        }
      }
      if (!known) continue;
      LabelSet ax = x_part(d, rec.a), ah = h_part(d, rec.a);
      if (ax.empty()) issue("StrataForm", where + ": A contains no X-component");
      if (!ah.empty()) {
        LabelSet conts;
        for (const auto& h : ah) conts.insert(d.components().container.at(h));
        if (conts != ax) issue("StrataForm", where + ": A meets irr(X) outside the containers of its H-part");
      }
      StratumKind expected = ah.empty() ? StratumKind::x : StratumKind::h;
      if (rec.kind != expected) issue("WellStrat", where + ": kind does not match A");
      auto [it, fresh] = kinds.emplace(rec.a, rec.kind);
      if (!fresh && it->second != rec.kind) issue("WellStrat", where + ": X- and H-strata share A");
      for (const auto& ch : rec.charts) chart(rec, ch);
      for (std::size_t c = 1; c < rec.charts.size(); ++c) {
        try {
          chart_change(rec.chart(), rec.charts[c]);
        } catch (const Error& e) {
          issue(e.code() == "Morphism" ? "ChartIsom" : e.code(), where + ": alternative chart: " + e.what());
        }
      }
    }
  }

  void order() {
    const std::size_t n = d.size();
    std::map<std::pair<std::size_t, std::size_t>, RestrictionMaps> maps;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (!d.leq(x, y)) continue;
        const auto& rx = d.at(x);
        const auto& ry = d.at(y);
        if (x != y && d.leq(y, x)) {
          if (x < y) issue("Order", "order is not antisymmetric on " + rx.id + ", " + ry.id);
          continue;
        }
        if (!std::includes(rx.a.begin(), rx.a.end(), ry.a.begin(), ry.a.end())) {
          issue("Order", rx.id + " <= " + ry.id + " but A(" + ry.id + ") is not contained in A(" + rx.id + ")");
          continue;
        }
        try {
          maps.emplace(std::make_pair(x, y), restriction_maps(d, rx.id, ry.id));
        } catch (const Error& e) {
          issue(e.code(), e.what());
        }
      }
    }
    for (const auto& [xy, m] : maps) {
      const auto [x, y] = xy;
      if (x == y && !(m.embedding == PSMorphism::identity(d.at(x).chart().shape))) {
        issue("FaceEmbStr", "self restriction of " + d.at(x).id + " is not the identity");
      }
      for (std::size_t z = 0; z < n; ++z) {
        auto yz = maps.find({y, z});
        auto xz = maps.find({x, z});
        if (yz == maps.end() || xz == maps.end()) continue;
        std::vector<int> comp(yz->second.j.size());
        for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = m.j[yz->second.j[i]];
        if (comp != xz->second.j) {
          issue("DivInjection", "j cocycle fails on " + d.at(x).id + " <= " + d.at(y).id + " <= " + d.at(z).id);
        }
        if (!(compose(m.embedding, yz->second.embedding) == xz->second.embedding)) {
          issue("FaceEmbStr", "embeddings are not functorial on " + d.at(x).id + " <= " + d.at(y).id +
                                  " <= " + d.at(z).id);
        }
      }
    }
    std::vector<int> height(n, -1);
    std::function<int(std::size_t)> h = [&](std::size_t x) {
      if (height[x] >= 0) return height[x];
      int best = 0;
      for (std::size_t y = 0; y < n; ++y) {
        if (y != x && d.leq(x, y) && !d.leq(y, x)) best = std::max(best, 1 + h(y));
      }
      return height[x] = best;
    };
    for (std::size_t x = 0; x < n; ++x) {
      const auto& rx = d.at(x);
      const auto& shape = rx.chart().shape;
      std::set<ImageKey> faces;
      std::map<ImageKey, int> face_dim;
      try {
        shape.validate();
      } catch (const DescriptorError&) {
        continue;
      }
      for (const Face& f : enumerate_faces(shape)) {
        auto key = image_key(f.embedding);
        faces.insert(key);
        face_dim[key] = f.shape.dimension();
      }
      std::set<ImageKey> seen;
      bool ok = true;
      for (std::size_t y = 0; y < n; ++y) {
        if (!d.leq(x, y)) continue;
        auto it = maps.find({x, y});
        if (it == maps.end()) {
          ok = false;
          continue;
        }
        auto key = image_key(it->second.embedding);
        if (!seen.insert(key).second || !faces.count(key) ||
            face_dim[key] != d.at(y).chart().shape.dimension()) {
          ok = false;
        }
      }
      if (!ok || seen.size() != faces.size()) {
        issue("FaceEmbStr", "upper set of " + rx.id + " is not in bijection with the faces of " + shape.to_string());
      }
      if (ok && h(x) != shape.dimension()) {
        issue("DimensionProp", "longest chain above " + rx.id + " differs from chart dimension");
      }
    }
  }
};

}  // namespace

ValidationReport validate_descriptor(const PairDescriptor& desc) {
  Checker c{desc, {}};
  c.components();
  c.strata();
  c.order();
  return c.report;
}

}  // namespace dualcx
