#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dualcx/rational.hpp"

namespace dualcx {

using Color = ExtRational;
using Tuple = std::vector<int>;

// Product of simplices [n_1] x ... x [n_p]. The empty product is stored
// as n = {0} with no factors, so factors() == 0.
struct PolySimplex {
  std::vector<int> n;

  int factors() const;
  bool is_point() const;
  int dimension() const;
  std::size_t carrier_size() const;
  int factor_size(int i) const { return n[i] + 1; }
  std::size_t flat_index(std::span<const int> tuple) const;
  Tuple tuple_at(std::size_t index) const;
  std::vector<Tuple> carrier() const;

  bool operator==(const PolySimplex&) const = default;
};

// [n, r, s]: a colored poly-simplex with s extra half-line directions.
struct ExtendedPolySimplex {
  PolySimplex base;
  std::vector<Color> r;
  int s = 0;

  static ExtendedPolySimplex make(std::vector<int> n, std::vector<Color> r, int s);
  static ExtendedPolySimplex point(int s = 0);

  int factors() const { return base.factors(); }
  int n(int i) const { return base.n[i]; }
  int simplex_dimension() const { return base.dimension(); }
  int dimension() const { return base.dimension() + s; }
  std::size_t carrier_size() const { return base.carrier_size(); }
  void validate() const;
  std::string to_string() const;

  bool operator==(const ExtendedPolySimplex&) const = default;
};

// Morphism [n,r,s] -> [n',r',s'].
//   f[i]  target factor of source factor i, or -1 when i is outside J
//   c[l]  for l in im f: table on [n_{f^-1(l)}]; otherwise the single value c_l(0)
//   g     map {0..s} -> {0..s'} with g[0] == 0
struct PSMorphism {
  ExtendedPolySimplex source;
  ExtendedPolySimplex target;
  std::vector<int> f;
  std::vector<std::vector<int>> c;
  std::vector<int> g;

  static PSMorphism identity(const ExtendedPolySimplex& e);

  void validate() const;
  std::optional<int> preimage_factor(int l) const;
  Tuple apply(std::span<const int> tuple) const;
  std::vector<std::size_t> carrier_map() const;

  bool operator==(const PSMorphism&) const = default;
};

enum class MorphismClass { injective, isomorphism, general };

std::string to_string(MorphismClass k);

Tuple apply_morphism(const PSMorphism& m, std::span<const int> tuple);
// second after first
PSMorphism compose(const PSMorphism& second, const PSMorphism& first);
MorphismClass classify(const PSMorphism& m);
bool carrier_injective(const PSMorphism& m);
bool divisor_injective(const PSMorphism& m);
PSMorphism inverse(const PSMorphism& iso);

// Recovers morphism data from a carrier map (given as flat indices) and a
// divisor map. Throws DescriptorError with code "IsomorphIsometric" when
// the carrier map is not of product form, "ColorChangeProp" on bad colors.
PSMorphism morphism_from_carrier_map(const ExtendedPolySimplex& source,
                                     const ExtendedPolySimplex& target,
                                     std::span<const std::size_t> map,
                                     std::vector<int> g);

struct Face {
  ExtendedPolySimplex shape;
  PSMorphism embedding;
};

// One representative per face, embedding order preserving.
std::vector<Face> enumerate_faces(const ExtendedPolySimplex& e);
std::size_t face_count(const ExtendedPolySimplex& e);

// Image key used to identify faces: sorted carrier image and divisor image.
struct ImageKey {
  std::vector<std::size_t> carrier;
  std::vector<int> divisor;
  auto operator<=>(const ImageKey&) const = default;
};
ImageKey image_key(const PSMorphism& m);

struct Canonical {
  ExtendedPolySimplex shape;
  std::vector<int> permutation;  // canonical factor k is original factor permutation[k]
  PSMorphism to_canonical;
};
Canonical canonicalize(const ExtendedPolySimplex& e);
bool isomorphic(const ExtendedPolySimplex& a, const ExtendedPolySimplex& b);

struct IntegerMetricSpace {
  std::vector<std::string> labels;
  std::vector<std::vector<long>> dist;

  std::size_t size() const { return dist.size(); }
  bool valid() const;
};

int hamming(std::span<const int> a, std::span<const int> b);

struct MetricFactorization {
  PolySimplex shape;
  std::vector<Tuple> coordinates;  // per point of the metric space
};

// Finds a poly-simplex whose Hamming carrier is isometric to the space.
std::optional<MetricFactorization> factorize_metric(const IntegerMetricSpace& m);

}  // namespace dualcx
