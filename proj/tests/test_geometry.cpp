#include <doctest.h>

#include "dualcx/error.hpp"
#include "dualcx/geometry.hpp"
#include "generators.hpp"

using namespace dualcx;

namespace {

ExtRational q(long a, long b = 1) { return ExtRational(make_rational(a, b)); }
const ExtRational kInf = ExtRational::infinity();

RealizationPoint random_point(gen::Rng& rng, const ExtendedPolySimplex& e) {
  RealizationPoint pt;
  for (int i = 0; i < e.factors(); ++i) {
    std::vector<ExtRational> row(e.n(i) + 1, q(0));
    if (e.r[i].is_inf()) {
      for (auto& v : row) v = gen::coin(rng, 0.4) ? kInf : q(gen::uniform(rng, 0, 4), 2);
      row[gen::uniform(rng, 0, e.n(i))] = kInf;
    } else {
      std::vector<int> w(e.n(i) + 1);
      int total = 0;
      for (auto& v : w) total += (v = gen::uniform(rng, 0, 3));
      if (total == 0) total = w[0] = 1;
      for (int j = 0; j <= e.n(i); ++j) row[j] = ExtRational(Rational(e.r[i].value() * w[j] / total));
    }
    pt.x.push_back(row);
  }
  for (int j = 0; j < e.s; ++j) pt.y.push_back(q(gen::uniform(rng, 0, 6), gen::uniform(rng, 1, 3)));
  return pt;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("extended rationals") {
  CHECK(q(0) * kInf == q(0));
  CHECK(q(2) * kInf == kInf);
  CHECK(q(1) + kInf == kInf);
  CHECK(q(1, 2) < kInf);
  CHECK(to_string(q(3, 6)) == "1/2");
  CHECK(to_string(kInf) == "inf");
  CHECK(parse_ext_rational("inf") == kInf);
  CHECK(parse_ext_rational("-4/6") == q(-2, 3));
  CHECK_THROWS_AS(parse_rational("1/0"), DescriptorError);
  CHECK_THROWS_AS(parse_rational("1.5"), DescriptorError);
  CHECK_THROWS_AS(parse_rational(""), DescriptorError);
}

TEST_CASE("contains examples") {
  auto seg = ExtendedPolySimplex::make({1}, {Color(1)}, 0);
  CHECK(contains(seg, {{{q(1, 2), q(1, 2)}}, {}}) == Containment::interior);
  CHECK(contains(seg, {{{q(0), q(1)}}, {}}) == Containment::boundary);
  CHECK(contains(seg, {{{q(1), q(1)}}, {}}) == Containment::outside);
  CHECK(contains(seg, {{{q(-1), q(2)}}, {}}) == Containment::outside);
  auto deg = ExtendedPolySimplex::make({1}, {Color::infinity()}, 0);
  CHECK(contains(deg, {{{kInf, q(3)}}, {}}) != Containment::outside);
  CHECK(contains(deg, {{{q(1), q(3)}}, {}}) == Containment::outside);
  auto half = ExtendedPolySimplex::point(1);
  CHECK(contains(half, {{}, {q(2)}}) == Containment::interior);
  CHECK(contains(half, {{}, {kInf}}) == Containment::outside);
  CHECK(contains(half, {{}, {kInf}, true}) == Containment::boundary);
  CHECK(contains(ExtendedPolySimplex::point(0), {}) == Containment::interior);
  CHECK_THROWS_AS(contains(seg, {{{q(1)}}, {}}), DescriptorError);
}

TEST_CASE("realize_morphism examples") {
  auto seg = ExtendedPolySimplex::make({1}, {Color(1)}, 0);
  auto tri = ExtendedPolySimplex::make({2}, {Color(1)}, 0);
  RealizationPoint p{{{q(1, 3), q(2, 3)}}, {}};
  CHECK(realize_morphism(PSMorphism::identity(seg), p) == p);

  PSMorphism collapse;
  collapse.source = ExtendedPolySimplex::point();
  collapse.target = ExtendedPolySimplex::make({1}, {Color(5)}, 0);
  collapse.c = {{0}};
  collapse.g = {0};
  CHECK(realize_morphism(collapse, {}) == RealizationPoint{{{q(5), q(0)}}, {}});

  PSMorphism inj;
  inj.source = seg;
  inj.target = tri;
  inj.f = {0};
  inj.c = {{0, 2}};
  inj.g = {0};
  auto image = realize_morphism(inj, p);
  CHECK(image == RealizationPoint{{{q(1, 3), q(0), q(2, 3)}}, {}});
  auto back = preimage(inj, image);
  REQUIRE(back);
  CHECK(*back == p);
  CHECK_FALSE(preimage(inj, RealizationPoint{{{q(1, 3), q(1, 3), q(1, 3)}}, {}}));
}

TEST_CASE("affine function examples") {
  auto seg = ExtendedPolySimplex::make({1}, {Color(1)}, 0);
  AffineLinearFunction c2{2, {{0, 0}}, {}};
  CHECK(eval_affine(seg, c2, {{{q(1, 4), q(3, 4)}}, {}}) == q(2));
  AffineLinearFunction a10{0, {{1, 0}}, {}};
  CHECK(eval_affine(seg, a10, {{{q(1, 2), q(1, 2)}}, {}}) == q(1, 2));
  auto ray = ExtendedPolySimplex::point(1);
  AffineLinearFunction b{1, {}, {3}};
  CHECK(eval_affine(ray, b, {{}, {q(2)}}) == q(7));

  auto n = normalize_affine(seg, AffineLinearFunction{1, {{2, 3}}, {}});
  CHECK(n == AffineLinearFunction{3, {{0, 1}}, {}});

  PSMorphism collapse;
  collapse.source = ExtendedPolySimplex::point();
  collapse.target = ExtendedPolySimplex::make({1}, {Color(5)}, 0);
  collapse.c = {{0}};
  collapse.g = {0};
  auto pb = pullback_affine(collapse, AffineLinearFunction{1, {{1, 0}}, {}});
  CHECK(pb.lambda == 6);
  auto pc = pullback_affine(collapse, c2);
  CHECK(pc.lambda == 2);

  PSMorphism to_inf = collapse;
  to_inf.target = ExtendedPolySimplex::make({1}, {Color::infinity()}, 0);
  CHECK_THROWS_AS(pullback_affine(to_inf, AffineLinearFunction{0, {{1, 0}}, {}}), DescriptorError);

  PSMorphism swap = PSMorphism::identity(seg);
  swap.c = {{1, 0}};
  auto ps = pullback_affine(swap, a10);
  CHECK(ps == AffineLinearFunction{0, {{0, 1}}, {}});
}

TEST_CASE("property: realization is functorial") {
  gen::Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    auto c = gen::shape(rng, 2, 3, 2, true);
    PSMorphism g = gen::morphism_into(rng, c);
    PSMorphism f = gen::morphism_into(rng, g.source);
    PSMorphism gf = compose(g, f);
    for (int k = 0; k < 100; ++k) {
      auto pt = random_point(rng, f.source);
      REQUIRE(contains(f.source, pt) != Containment::outside);
      auto lhs = realize_morphism(gf, pt);
      CHECK(lhs == realize_morphism(g, realize_morphism(f, pt)));
      CHECK(contains(c, lhs) != Containment::outside);
    }
  }
}

TEST_CASE("property: isomorphisms preserve interior and boundary") {
  gen::Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    auto e = gen::shape(rng, 3, 2, 2);
    auto a = gen::automorphism(rng, e);
    for (int k = 0; k < 20; ++k) {
      auto pt = random_point(rng, e);
      CHECK(contains(e, realize_morphism(a, pt)) == contains(e, pt));
    }
    auto b = barycenter(e);
    CHECK(contains(e, b) == Containment::interior);
  }
}

TEST_CASE("property: pullback commutes with evaluation") {
  gen::Rng rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    auto c = gen::shape(rng, 2, 3, 2);
    PSMorphism m = gen::morphism_into(rng, c);
    AffineLinearFunction h;
    h.lambda = Rational(gen::uniform(rng, 0, 4), 2);
    for (int i = 0; i < c.factors(); ++i) {
      std::vector<long> row;
      for (int j = 0; j <= c.n(i); ++j) row.push_back(gen::uniform(rng, 0, 3));
      h.a.push_back(row);
    }
    for (int j = 0; j < c.s; ++j) h.b.push_back(gen::uniform(rng, 0, 3));
    h = normalize_affine(c, h);
    auto pb = pullback_affine(m, h);
    for (const auto& v : vertices(m.source)) {
      CHECK(eval_affine(m.source, pb, v) == eval_affine(c, h, realize_morphism(m, v)));
    }
    for (int k = 0; k < 10; ++k) {
      auto pt = random_point(rng, m.source);
      CHECK(eval_affine(m.source, pb, pt) == eval_affine(c, h, realize_morphism(m, pt)));
    }
    if (classify(m) != MorphismClass::general) {
      for (const auto& v : vertices(m.source)) {
        auto im = realize_morphism(m, v);
        bool is_vertex = std::find(vertices(c).begin(), vertices(c).end(), im) != vertices(c).end();
        if (m.source.s == 0 && c.s == 0) CHECK(is_vertex);
      }
    }
  }
}

TEST_CASE("lattice points") {
  auto tri = ExtendedPolySimplex::make({2}, {Color(1)}, 1);
  auto pts = lattice_points(tri, 2, Rational(1));
  CHECK(pts.size() == 6 * 3);
  for (const auto& pt : pts) CHECK(contains(tri, pt) != Containment::outside);
}

}  // TEST_SUITE
