#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dualcx/coefficient.hpp"
#include "dualcx/geometry.hpp"
#include "dualcx/strata.hpp"

namespace dualcx {

enum class Mode { standard, closure };

// S(n, a, d) with divisor G(s). Variables are laid out as
// T_{10..1n_1}, ..., T_{p0..pn_p}, T_1, ..., T_d; the divisor is T_1..T_s.
// n = {0} means there is no torus factor.
struct StandardPairModel {
  std::vector<int> n{0};
  std::vector<Coefficient> a;
  int d = 0;
  int s = 0;
  Mode mode = Mode::standard;

  // Standard mode needs val(a_i) > 0; closure mode also admits a_i = 0.
  static StandardPairModel make(std::vector<int> n, std::vector<Coefficient> a, int d, int s,
                                Mode mode = Mode::standard);

  int factors() const;
  int torus_variables() const;
  int variables() const { return torus_variables() + d; }
  int torus_var(int i, int j) const;
  // j = 1..d
  int disc_var(int j) const { return torus_variables() + j - 1; }
  std::vector<Color> r() const;
  ExtendedPolySimplex shape() const;
  // standard_descriptor of the model; finite r only
  PairDescriptor descriptor() const;
};

using Exponent = std::vector<int>;

// Normal form: no monomial divisible by T_{i0}...T_{in_i}.
struct ValuedPolynomial {
  std::map<Exponent, Coefficient> terms;

  bool is_zero() const { return terms.empty(); }
  int total_degree() const;
  bool operator==(const ValuedPolynomial&) const = default;
};

ValuedPolynomial normalize_poly(const StandardPairModel& m,
                                const std::map<Exponent, Coefficient>& raw);
ValuedPolynomial poly_variable(const StandardPairModel& m, int var);
ValuedPolynomial poly_constant(const StandardPairModel& m, const Coefficient& c);
ValuedPolynomial poly_add(const StandardPairModel& m, const ValuedPolynomial& f,
                          const ValuedPolynomial& g);
ValuedPolynomial poly_sub(const StandardPairModel& m, const ValuedPolynomial& f,
                          const ValuedPolynomial& g);
ValuedPolynomial poly_mul(const StandardPairModel& m, const ValuedPolynomial& f,
                          const ValuedPolynomial& g);

// Closed disc about center with radius exp(-u), in valuation form.
struct DiscCoordinate {
  Coefficient center;
  ExtRational u = 0;

  bool operator==(const DiscCoordinate&) const = default;
};

struct SkeletalPoint {
  std::vector<std::vector<ExtRational>> v;  // monomial parameters per torus factor
  std::vector<DiscCoordinate> discs;        // T_1..T_d

  bool operator==(const SkeletalPoint&) const = default;
};

// Truncates every center below its radius valuation, so equal discs
// compare equal.
SkeletalPoint canonical_point(const SkeletalPoint& x);
// Throws DescriptorError("Shape") on a layout mismatch and
// DomainError("Point") on out-of-range parameters.
void validate_point(const StandardPairModel& m, const SkeletalPoint& x);

// val |f(x)|
ExtRational seminorm_eval(const StandardPairModel& m, const SkeletalPoint& x,
                          const ValuedPolynomial& f);

// nu is indexed by variable; the T_{i0} entries must be zero. Torus and
// divisor directions are multiplicative, ball directions additive.
ValuedPolynomial hasse_derivative(const StandardPairModel& m, const ValuedPolynomial& f,
                                  const Exponent& nu);

// min over nu of seminorm(x, d_nu f) + |nu| tau
ExtRational star_eval(const StandardPairModel& m, const SkeletalPoint& x, const ExtRational& tau,
                      const ValuedPolynomial& f);

RealizationPoint trop(const StandardPairModel& m, const SkeletalPoint& x);
SkeletalPoint sigma(const StandardPairModel& m, const RealizationPoint& w);
SkeletalPoint tau(const StandardPairModel& m, const SkeletalPoint& x);
bool is_skeleton_point(const StandardPairModel& m, const SkeletalPoint& x);

// tau_t = -log t; tau_t = inf is the identity, tau_t = 0 the retraction.
SkeletalPoint flow(const StandardPairModel& m, const SkeletalPoint& x, const ExtRational& tau_t);
ExtRational flow_injectivity_window(const StandardPairModel& m, const SkeletalPoint& x);

struct Reduction {
  std::string stratum;
  bool generic = false;
};

Reduction reduction_stratum(const StandardPairModel& m, const SkeletalPoint& x);

// Levels are stored as valuations: level = -log eps. A divisor coordinate
// of S_eps lives on the annulus T_0 T_1 = b_eps with coordinates
// (x0, x1) = (level - val T, val T).
struct EpsilonData {
  Rational level;
  Rational outer;

  bool contains(const StandardPairModel& m, const SkeletalPoint& x) const;
  std::vector<std::pair<Rational, Rational>> level_coordinates(const StandardPairModel& m,
                                                               const SkeletalPoint& x) const;
  // Delta(1, level) -> Delta(1, outer)
  std::pair<Rational, Rational> include(const std::pair<Rational, Rational>& p) const;
  bool on_level_skeleton(const StandardPairModel& m, const SkeletalPoint& x) const;
  bool on_outer_skeleton(const StandardPairModel& m, const SkeletalPoint& x) const;
};

// Throws DomainError("Epsilon") unless 0 <= level <= outer.
EpsilonData epsilon_data(const StandardPairModel& m, const Rational& level, const Rational& outer);

enum class ClosureClass { skeleton, divisor_skeleton, outside };
std::string to_string(ClosureClass c);

ClosureClass closure_membership(const StandardPairModel& m, const RealizationPoint& p);

}  // namespace dualcx
