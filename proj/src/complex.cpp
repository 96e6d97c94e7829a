#include "dualcx/complex.hpp"

#include <algorithm>

namespace dualcx {

StrictDualComplex::StrictDualComplex(PairDescriptor desc) : desc_(std::move(desc)) {
  auto report = validate_descriptor(desc_);
  if (!report.ok()) throw ValidationError(report.issues);
  face_keys_.resize(desc_.size());
  for (std::size_t x = 0; x < desc_.size(); ++x) {
    for (std::size_t y = 0; y < desc_.size(); ++y) {
      if (!desc_.leq(x, y)) continue;
      auto m = restriction_maps(desc_, desc_.at(x).id, desc_.at(y).id).embedding;
      face_keys_[x][image_key(m)] = y;
      embeddings_.emplace(std::make_pair(y, x), std::move(m));
    }
  }
}

const PSMorphism& StrictDualComplex::face_embedding(const std::string& y, const std::string& x) const {
  auto it = embeddings_.find({desc_.index(y), desc_.index(x)});
  if (it == embeddings_.end()) throw DomainError("Order", x + " is not <= " + y);
  return it->second;
}

std::vector<std::string> StrictDualComplex::face_intersection(const std::string& x,
                                                              const std::string& y) const {
  const std::size_t xi = desc_.index(x), yi = desc_.index(y);
  std::vector<std::string> out;
  for (std::size_t z = 0; z < desc_.size(); ++z) {
    if (desc_.leq(xi, z) && desc_.leq(yi, z)) out.push_back(desc_.at(z).id);
  }
  return out;
}

void StrictDualComplex::check_point(const ComplexPoint& p) const {
  if (contains(shape(p.stratum), p.point) == Containment::outside) {
    throw DomainError("Realization", "point is not in the face of " + p.stratum);
  }
}

std::string StrictDualComplex::open_face_of(const ComplexPoint& p) const {
  check_point(p);
  const auto& e = shape(p.stratum);
  std::vector<int> sizes;
  std::vector<std::vector<int>> support(e.factors());
  for (int i = 0; i < e.factors(); ++i) {
    for (int j = 0; j <= e.n(i); ++j) {
      if (!p.point.x[i][j].is_zero()) support[i].push_back(j);
    }
  }
  ImageKey key;
  std::vector<int> idx(e.factors(), 0);
  for (;;) {
    Tuple t(e.factors());
    for (int i = 0; i < e.factors(); ++i) t[i] = support[i][idx[i]];
    key.carrier.push_back(e.base.flat_index(t));
    int i = e.factors() - 1;
    while (i >= 0 && ++idx[i] == static_cast<int>(support[i].size())) idx[i--] = 0;
    if (i < 0) break;
  }
  std::sort(key.carrier.begin(), key.carrier.end());
  for (int j = 0; j < e.s; ++j) {
    if (!p.point.y[j].is_zero()) key.divisor.push_back(j + 1);
  }
  const auto& keys = face_keys_[desc_.index(p.stratum)];
  auto it = keys.find(key);
  if (it == keys.end()) throw Error("Internal", "support pattern matches no face");
  return desc_.at(it->second).id;
}

OpenFacePoint StrictDualComplex::canonical(const ComplexPoint& p) const {
  std::string z = open_face_of(p);
  auto b = preimage(face_embedding(z, p.stratum), p.point);
  if (!b) throw Error("Internal", "point is not in the image of its open face");
  return {z, *b};
}

bool StrictDualComplex::points_equal(const ComplexPoint& p, const ComplexPoint& q) const {
  check_point(p);
  check_point(q);
  for (const auto& z : face_intersection(p.stratum, q.stratum)) {
    auto a = preimage(face_embedding(z, p.stratum), p.point);
    if (!a) continue;
    auto b = preimage(face_embedding(z, q.stratum), q.point);
    if (b && *a == *b) return true;
  }
  return false;
}

std::vector<std::size_t> StrictDualComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (const auto& s : desc_.strata()) {
    const auto d = static_cast<std::size_t>(s.chart().shape.dimension());
    if (f.size() <= d) f.resize(d + 1, 0);
    ++f[d];
  }
  return f;
}

PSMorphism chart_face_embedding(const ChartData& c, const ChartData& d) {
  return chart_restriction(c, d).embedding;
}

GluedPoint GluedComplex::project(const ComplexPoint& p) const {
  auto c = base().canonical(p);
  return {class_of(c.stratum), realize_morphism(transport(c.stratum), c.point)};
}

std::vector<std::size_t> GluedComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (std::size_t i = 0; i < size(); ++i) {
    const auto d = static_cast<std::size_t>(shape(i).dimension());
    if (f.size() <= d) f.resize(d + 1, 0);
    ++f[d];
  }
  return f;
}

GluedComplex coequalize(DescentData descent) {
  if (!descent.base) throw DescriptorError("Descent", "descent data without a base complex");
  const StrictDualComplex& base = *descent.base;
  const PairDescriptor& d = base.descriptor();
  std::vector<ValidationIssue> issues;
  auto fail = [&](const std::string& code, const std::string& msg) { issues.push_back({code, msg}); };

  GluedComplex out;
  for (const auto& cls : descent.classes) {
    if (cls.empty()) {
      fail("Descent", "empty class");
      continue;
    }
    for (const auto& id : cls) {
      if (!d.contains(id)) {
        fail("Descent", "unknown stratum " + id);
      } else if (!out.class_of_.emplace(id, out.classes_.size()).second) {
        fail("Descent", "stratum " + id + " lies in two classes");
      }
    }
    out.classes_.push_back(cls);
  }
  for (const auto& s : d.strata()) {
    if (!out.class_of_.count(s.id)) fail("Descent", "stratum " + s.id + " lies in no class");
  }
  if (!issues.empty()) throw ValidationError(issues);

  std::vector<const Witness*> good;
  for (const auto& w : descent.witnesses) {
    const std::string where = "witness " + w.from + " -> " + w.to;
    if (!d.contains(w.from) || !d.contains(w.to)) {
      fail("Descent", where + ": unknown stratum");
      continue;
    }
    if (out.class_of_[w.from] != out.class_of_[w.to]) {
      fail("Descent", where + ": strata lie in different classes");
      continue;
    }
    try {
      w.h.validate();
    } catch (const DescriptorError& e) {
      fail("IntersectionComplexMap", where + ": " + e.what());
      continue;
    }
    if (!(w.h.source == base.shape(w.from)) || !(w.h.target == base.shape(w.to)) ||
        classify(w.h) != MorphismClass::isomorphism) {
      fail("IntersectionComplexMap", where + ": not an isomorphism of the chart shapes");
      continue;
    }
    good.push_back(&w);
  }
  if (!issues.empty()) throw ValidationError(issues);

  for (const auto& cls : out.classes_) out.transport_.emplace(cls.front(), PSMorphism::identity(base.shape(cls.front())));
  for (bool changed = true; changed;) {
    changed = false;
    for (const Witness* w : good) {
      auto a = out.transport_.find(w->from);
      auto b = out.transport_.find(w->to);
      if (a != out.transport_.end() && b == out.transport_.end()) {
        out.transport_.emplace(w->to, compose(a->second, inverse(w->h)));
        changed = true;
      } else if (a == out.transport_.end() && b != out.transport_.end()) {
        out.transport_.emplace(w->from, compose(b->second, w->h));
        changed = true;
      }
    }
  }
  for (const auto& s : d.strata()) {
    if (!out.transport_.count(s.id)) fail("Descent", "stratum " + s.id + " is not linked to its class by witnesses");
  }
  if (!issues.empty()) throw ValidationError(issues);
  for (const Witness* w : good) {
    if (!(compose(out.transport_.at(w->to), w->h) == out.transport_.at(w->from))) {
      fail("IntersectionComplexMap", "witnesses " + w->from + " -> " + w->to + " do not form a groupoid");
    }
  }
  if (!issues.empty()) throw ValidationError(issues);

  // h_{z,z'} between members of one class
  auto between = [&](const std::string& z, const std::string& z2) {
    return compose(inverse(out.transport_.at(z2)), out.transport_.at(z));
  };
  for (const Witness* w : good) {
    for (const auto& z : d.upper_set(w->from)) {
      const PSMorphism lhs = compose(w->h, base.face_embedding(z, w->from));
      bool found = false;
      for (const auto& z2 : out.classes_[out.class_of_[z]]) {
        if (!d.leq(w->to, z2)) continue;
        if (compose(base.face_embedding(z2, w->to), between(z, z2)) == lhs) {
          found = true;
          break;
        }
      }
      if (!found) {
        fail("IntersectionComplexMap", "face " + z + " of " + w->from + " has no matching face of " + w->to);
      }
    }
  }

  const std::size_t k = out.classes_.size();
  out.leq_.assign(k, std::vector<char>(k, 0));
  for (std::size_t x = 0; x < d.size(); ++x) {
    for (std::size_t y = 0; y < d.size(); ++y) {
      if (d.leq(x, y)) out.leq_[out.class_of_[d.at(x).id]][out.class_of_[d.at(y).id]] = 1;
    }
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a != b && out.leq_[a][b] && out.leq_[b][a]) {
        if (a < b) fail("StrataFaceCorresp", "quotient order is not antisymmetric");
      }
      for (std::size_t c = 0; c < k; ++c) {
        if (out.leq_[a][b] && out.leq_[b][c] && !out.leq_[a][c]) {
          fail("StrataFaceCorresp", "quotient order is not transitive");
        }
      }
      if (!out.leq_[a][b]) continue;
      for (const auto& y : out.classes_[a]) {
        bool lifted = std::any_of(out.classes_[b].begin(), out.classes_[b].end(),
                                  [&](const std::string& y2) { return d.leq(y, y2); });
        if (!lifted) fail("StrataFaceCorresp", "relation does not lift to " + y);
      }
    }
  }
  if (!issues.empty()) throw ValidationError(issues);

  for (std::size_t i = 0; i < k; ++i) {
    const std::string& rep = out.classes_[i].front();
    for (const auto& z : d.upper_set(rep)) {
      if (z == rep) continue;
      const std::size_t face = out.class_of_[z];
      out.embeddings_.push_back(
          {face, i, z, compose(base.face_embedding(z, rep), inverse(out.transport_.at(z)))});
    }
  }
  out.descent_ = std::move(descent);
  return out;
}

}  // namespace dualcx
