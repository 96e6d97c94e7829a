#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dualcx/error.hpp"
#include "dualcx/polysimplex.hpp"

namespace dualcx {

using Label = std::string;
using LabelSet = std::set<Label>;

struct ComponentTable {
  LabelSet x_components;
  LabelSet h_components;
  std::map<Label, Label> container;  // H-component -> X-component
};

// Chart of a stratum: alpha labels the carrier (flat index order) by
// X-components, gamma lists the D-blocks in index order 1..s.
struct ChartData {
  ExtendedPolySimplex shape;
  std::vector<Label> alpha;
  std::vector<LabelSet> gamma;

  LabelSet x_set() const;
  LabelSet h_set() const;
  std::optional<std::size_t> alpha_index(const Label& l) const;
  // 1-based block index containing l, 0 if none
  int block_of(const Label& h) const;

  bool operator==(const ChartData&) const = default;
};

enum class StratumKind { x, h };
std::string to_string(StratumKind k);

struct StratumRecord {
  std::string id;
  StratumKind kind = StratumKind::x;
  LabelSet a;
  std::vector<ChartData> charts;  // first is the reference chart

  const ChartData& chart() const { return charts.front(); }
};

class PairDescriptor {
 public:
  PairDescriptor() = default;
  // Throws DescriptorError on duplicate ids, unknown ids in the order,
  // or strata without a chart. Other axioms are checked by validate_descriptor.
  PairDescriptor(ComponentTable components, std::vector<StratumRecord> strata,
                 std::vector<std::pair<std::string, std::string>> order);

  const ComponentTable& components() const { return components_; }
  const std::vector<StratumRecord>& strata() const { return strata_; }
  const std::vector<std::pair<std::string, std::string>>& generators() const { return order_; }
  std::size_t size() const { return strata_.size(); }

  bool contains(const std::string& id) const { return index_.count(id) != 0; }
  std::size_t index(const std::string& id) const;
  const StratumRecord& stratum(const std::string& id) const { return strata_[index(id)]; }
  const StratumRecord& at(std::size_t i) const { return strata_[i]; }

  // reflexive transitive closure of the generators
  bool leq(std::size_t x, std::size_t y) const { return leq_[x][y] != 0; }
  bool leq(const std::string& x, const std::string& y) const { return leq(index(x), index(y)); }
  std::vector<std::string> upper_set(const std::string& x) const;
  // x < y with nothing strictly between
  std::vector<std::pair<std::string, std::string>> covers() const;

 private:
  ComponentTable components_;
  std::vector<StratumRecord> strata_;
  std::vector<std::pair<std::string, std::string>> order_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<char>> leq_;
};

std::string standard_stratum_id(const std::vector<std::vector<int>>& z, const std::vector<int>& w);
std::string standard_x_label(const std::vector<int>& k);
std::string standard_h_label(const std::vector<int>& k, int j);

// Strata of the standard pair S(n, a, d) with divisor G(s), r = val(a).
PairDescriptor standard_descriptor(const std::vector<int>& n, const std::vector<Rational>& r,
                                   int d, int s);

PairDescriptor disjoint_union(const PairDescriptor& a, const PairDescriptor& b,
                              const std::string& prefix_a = "a.",
                              const std::string& prefix_b = "b.");

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

ValidationReport validate_descriptor(const PairDescriptor& desc);

std::optional<std::string> least_stratum(const PairDescriptor& desc,
                                         const std::optional<std::string>& restrict_to = {});

struct RestrictionMaps {
  std::vector<Label> inclusion;  // irr(X, y) in the carrier order of chart(y)
  PSMorphism embedding;          // chart(y).shape -> chart(x).shape
  std::vector<int> j;            // D_y -> D_x, 1-based, j[0] = 0
  std::vector<int> k;            // D_x -> D_y on D_{x,y}, 0 elsewhere
};

// Throws DomainError if x is not <= y, DescriptorError (axiom code) if the
// charts do not fit together.
RestrictionMaps restriction_maps(const PairDescriptor& desc, const std::string& x,
                                 const std::string& y);

// Restriction data between a chart cy of y and a chart cx of x <= y.
RestrictionMaps chart_restriction(const ChartData& cx, const ChartData& cy);

// The chart C' on iso.target with h_{C,C'} == iso.
ChartData transport_chart(const ChartData& c, const PSMorphism& iso);

// Isomorphism h_{C,C'} between two charts of the same stratum.
PSMorphism chart_change(const ChartData& c, const ChartData& c2);

}  // namespace dualcx
