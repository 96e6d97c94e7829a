#pragma once

// Small hand-built descriptors shared by the unit and acceptance tests.

#include <algorithm>
#include <memory>

#include "dualcx/complex.hpp"

namespace fixtures {

using namespace dualcx;

inline std::vector<Rational> ones(std::size_t n) { return std::vector<Rational>(n, Rational(1)); }

inline PairDescriptor triangle() { return standard_descriptor({2}, ones(1), 0, 0); }
inline PairDescriptor triangle_with_divisor() { return standard_descriptor({2}, ones(1), 1, 1); }

// Chain of three lines X1 - X2 - X3 meeting in two nodes: two edges sharing a vertex.
inline PairDescriptor chain() {
  ComponentTable comps;
  comps.x_components = {"X1", "X2", "X3"};
  auto point = [](const std::string& id, const std::string& x) {
    StratumRecord r;
    r.id = id;
    r.a = {x};
    r.charts.push_back({ExtendedPolySimplex::point(), {x}, {}});
    return r;
  };
  auto node = [](const std::string& id, const std::string& a, const std::string& b) {
    StratumRecord r;
    r.id = id;
    r.a = {a, b};
    r.charts.push_back({ExtendedPolySimplex::make({1}, {Color(1)}, 0), {a, b}, {}});
    return r;
  };
  std::vector<StratumRecord> strata = {node("p12", "X1", "X2"), node("p23", "X2", "X3"), point("c1", "X1"),
                                       point("c2", "X2"), point("c3", "X3")};
  std::vector<std::pair<std::string, std::string>> order = {
      {"p12", "c1"}, {"p12", "c2"}, {"p23", "c2"}, {"p23", "c3"}};
  return PairDescriptor(comps, strata, order);
}

// Irreducible nodal curve: the segment of the standard node with its two
// branches identified.
inline DescentData nodal() {
  DescentData d;
  d.base = std::make_shared<StrictDualComplex>(standard_descriptor({1}, ones(1), 0, 0));
  d.classes = {{"S[0,1]/[]"}, {"S[0]/[]", "S[1]/[]"}};
  d.witnesses = {{"S[0]/[]", "S[1]/[]", PSMorphism::identity(ExtendedPolySimplex::point())}};
  return d;
}

inline DescentData trivial(const PairDescriptor& desc) {
  DescentData d;
  d.base = std::make_shared<StrictDualComplex>(desc);
  for (const auto& s : desc.strata()) d.classes.push_back({s.id});
  return d;
}

// Two copies of a standard complex identified by the swap.
inline DescentData two_copies(const PairDescriptor& desc) {
  DescentData d;
  d.base = std::make_shared<StrictDualComplex>(disjoint_union(desc, desc, "a.", "b."));
  for (const auto& s : desc.strata()) {
    d.classes.push_back({"a." + s.id, "b." + s.id});
    d.witnesses.push_back({"a." + s.id, "b." + s.id, PSMorphism::identity(s.chart().shape)});
    d.witnesses.push_back({"b." + s.id, "a." + s.id, PSMorphism::identity(s.chart().shape)});
  }
  return d;
}

// All automorphisms of a shape with one factor (permutations of the
// simplex vertices and of the divisor directions).
inline std::vector<PSMorphism> automorphisms(const ExtendedPolySimplex& e) {
  std::vector<PSMorphism> out;
  PSMorphism m = PSMorphism::identity(e);
  std::vector<int> perm(e.factors() ? e.n(0) + 1 : 0);
  std::vector<int> gp(e.s);
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  for (int j = 0; j < e.s; ++j) gp[j] = j + 1;
  do {
    do {
      if (e.factors()) m.c[0] = perm;
      for (int j = 0; j < e.s; ++j) m.g[j + 1] = gp[j];
      out.push_back(m);
    } while (std::next_permutation(gp.begin(), gp.end()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Standard descriptor where every stratum carries extra charts obtained by
// transporting the reference chart along automorphisms.
inline PairDescriptor with_alternative_charts(const PairDescriptor& desc, std::size_t per_stratum) {
  auto strata = desc.strata();
  for (auto& s : strata) {
    auto autos = automorphisms(s.chart().shape);
    for (std::size_t k = autos.size(); k-- > 0 && s.charts.size() < per_stratum;) {
      ChartData c = transport_chart(s.chart(), autos[k]);
      if (std::find(s.charts.begin(), s.charts.end(), c) == s.charts.end()) s.charts.push_back(c);
    }
  }
  return PairDescriptor(desc.components(), strata, desc.generators());
}

}  // namespace fixtures
