#pragma once

#include <optional>
#include <vector>

#include "dualcx/polysimplex.hpp"

namespace dualcx {

// Point of Delta(n, r, s): x[i][j] for the simplex factors, y[j] for the
// half-lines. In closure mode the y coordinates may be inf.
struct RealizationPoint {
  std::vector<std::vector<ExtRational>> x;
  std::vector<ExtRational> y;
  bool closure = false;

  bool operator==(const RealizationPoint& o) const { return x == o.x && y == o.y; }
};

enum class Containment { outside, boundary, interior };

std::string to_string(Containment c);

// Throws DomainError when the coordinate layout does not fit the shape.
Containment contains(const ExtendedPolySimplex& e, const RealizationPoint& pt);

RealizationPoint realize_morphism(const PSMorphism& m, const RealizationPoint& pt);

// Inverse of an injective morphism on its image.
std::optional<RealizationPoint> preimage(const PSMorphism& m, const RealizationPoint& pt);

RealizationPoint barycenter(const ExtendedPolySimplex& e);
std::vector<RealizationPoint> vertices(const ExtendedPolySimplex& e);

// Points with x coordinates in (r_i/den)N and y coordinates in
// {0, 1/den, ..., y_max}. Finite colors only.
std::vector<RealizationPoint> lattice_points(const ExtendedPolySimplex& e, int den,
                                             const Rational& y_max);

// lambda + sum a_ij x_ij + sum b_j y_j with lambda >= 0 and a, b natural.
struct AffineLinearFunction {
  Rational lambda = 0;
  std::vector<std::vector<long>> a;
  std::vector<long> b;

  bool operator==(const AffineLinearFunction&) const = default;
};

// Rewrites h so that each factor has some a_ij == 0.
AffineLinearFunction normalize_affine(const ExtendedPolySimplex& e, AffineLinearFunction h);
ExtRational eval_affine(const ExtendedPolySimplex& e, const AffineLinearFunction& h,
                        const RealizationPoint& pt);
AffineLinearFunction pullback_affine(const PSMorphism& m, const AffineLinearFunction& h);

}  // namespace dualcx
