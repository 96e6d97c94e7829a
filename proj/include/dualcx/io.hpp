#pragma once

#include <string>

#include <json.hpp>

#include "dualcx/complex.hpp"
#include "dualcx/skeleton.hpp"

// JSON forms. Rationals are "p/q" strings, infinity is "inf"; object keys
// are emitted sorted so identical inputs give identical bytes. Schema
// problems raise DescriptorError("Schema").
namespace dualcx::io {

using json = nlohmann::json;

json to_json(const ExtRational& q);
ExtRational ext_rational_from_json(const json& j);
Rational rational_from_json(const json& j);

json to_json(const ExtendedPolySimplex& e);
ExtendedPolySimplex shape_from_json(const json& j);
json to_json(const PSMorphism& m);
PSMorphism morphism_from_json(const json& j);
json to_json(const ChartData& c);
ChartData chart_from_json(const json& j);
json to_json(const RealizationPoint& p);
RealizationPoint realization_from_json(const json& j);

// {"kind":"standard", n, r, d, s} or {"kind":"abstract", components, strata, order, charts}
PairDescriptor descriptor_from_json(const json& j);
// abstract form, accepted back by descriptor_from_json
json descriptor_to_json(const PairDescriptor& desc);
// {"kind":"descent", base, classes, witnesses}
DescentData descent_from_json(const json& j);

json strata_table(const PairDescriptor& desc);
std::string strata_csv(const PairDescriptor& desc);
// faces, dims, embeddings, intersections, order, f_vector
json lattice_json(const StrictDualComplex& cx);
PairDescriptor lattice_from_json(const json& j);
json glued_json(const GluedComplex& g);
// Vertex/edge/face listing; complexes of dimension <= 3 only.
std::string off_dump(const StrictDualComplex& cx);

// {n, a | r, d, s}; a_i are coefficients, r_i shorthand for a_i = t^{r_i}
StandardPairModel model_from_json(const json& j, Mode mode);
json to_json(const Coefficient& c);
Coefficient coefficient_from_json(const json& j);
json to_json(const SkeletalPoint& x);
SkeletalPoint point_from_json(const json& j);
json to_json(const ValuedPolynomial& f);
ValuedPolynomial poly_from_json(const StandardPairModel& m, const json& j);

}  // namespace dualcx::io
