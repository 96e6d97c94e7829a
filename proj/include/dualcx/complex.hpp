#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dualcx/geometry.hpp"
#include "dualcx/strata.hpp"

namespace dualcx {

// Point of the face Delta(x), in the reference chart of x.
struct ComplexPoint {
  std::string stratum;
  RealizationPoint point;
};

// Open face containing a point together with its coordinates there.
struct OpenFacePoint {
  std::string stratum;
  RealizationPoint point;

  bool operator==(const OpenFacePoint& o) const { return stratum == o.stratum && point == o.point; }
};

class StrictDualComplex {
 public:
  // Throws ValidationError when the descriptor fails validation.
  explicit StrictDualComplex(PairDescriptor desc);

  const PairDescriptor& descriptor() const { return desc_; }
  const ChartData& reference_chart(const std::string& x) const { return desc_.stratum(x).chart(); }
  const ExtendedPolySimplex& shape(const std::string& x) const { return reference_chart(x).shape; }

  // iota_{y,x}: Delta(y) -> Delta(x) for x <= y.
  const PSMorphism& face_embedding(const std::string& y, const std::string& x) const;
  std::vector<std::string> face_intersection(const std::string& x, const std::string& y) const;

  std::string open_face_of(const ComplexPoint& p) const;
  OpenFacePoint canonical(const ComplexPoint& p) const;
  // Literal search over common upper bounds.
  bool points_equal(const ComplexPoint& p, const ComplexPoint& q) const;

  std::vector<std::size_t> f_vector() const;

 private:
  void check_point(const ComplexPoint& p) const;

  PairDescriptor desc_;
  std::map<std::pair<std::size_t, std::size_t>, PSMorphism> embeddings_;  // (y, x)
  std::vector<std::map<ImageKey, std::size_t>> face_keys_;
};

// Embedding of a chart D of y into a chart C of x <= y.
PSMorphism chart_face_embedding(const ChartData& c, const ChartData& d);

struct Witness {
  std::string from;
  std::string to;
  PSMorphism h;  // chart(from).shape -> chart(to).shape
};

struct DescentData {
  std::shared_ptr<const StrictDualComplex> base;
  std::vector<std::vector<std::string>> classes;
  std::vector<Witness> witnesses;
};

struct QuotientEmbedding {
  std::size_t face;     // larger stratum class (the smaller face)
  std::size_t into;     // class it embeds into
  std::string via;      // member of `face` used for the attachment
  PSMorphism morphism;  // rep shape of `face` -> rep shape of `into`
};

struct GluedPoint {
  std::size_t face;
  RealizationPoint point;  // interior point of the representative's face

  bool operator==(const GluedPoint& o) const { return face == o.face && point == o.point; }
};

class GluedComplex {
 public:
  const DescentData& descent() const { return descent_; }
  const StrictDualComplex& base() const { return *descent_.base; }

  std::size_t size() const { return classes_.size(); }
  const std::vector<std::string>& members(std::size_t i) const { return classes_[i]; }
  const std::string& representative(std::size_t i) const { return classes_[i].front(); }
  std::size_t class_of(const std::string& id) const { return class_of_.at(id); }
  const ExtendedPolySimplex& shape(std::size_t i) const { return base().shape(representative(i)); }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a][b] != 0; }
  // iso Delta(y) -> Delta(rep of the class of y)
  const PSMorphism& transport(const std::string& y) const { return transport_.at(y); }
  const std::vector<QuotientEmbedding>& embeddings() const { return embeddings_; }

  GluedPoint project(const ComplexPoint& p) const;
  std::vector<std::size_t> f_vector() const;

 private:
  friend GluedComplex coequalize(DescentData descent);

  DescentData descent_;
  std::vector<std::vector<std::string>> classes_;
  std::map<std::string, std::size_t> class_of_;
  std::map<std::string, PSMorphism> transport_;
  std::vector<std::vector<char>> leq_;
  std::vector<QuotientEmbedding> embeddings_;
};

// Throws ValidationError when the descent data is inconsistent.
GluedComplex coequalize(DescentData descent);

}  // namespace dualcx
