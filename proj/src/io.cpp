#include "dualcx/io.hpp"

#include <algorithm>
#include <sstream>

#include "dualcx/error.hpp"

namespace dualcx::io {

namespace {

[[noreturn]] void schema(const std::string& what) { throw DescriptorError("Schema", what); }

const json& req(const json& j, const char* key) {
  if (!j.is_object()) schema("expected an object with key '" + std::string(key) + "'");
  auto it = j.find(key);
  if (it == j.end()) schema("missing key '" + std::string(key) + "'");
  return *it;
}

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) schema(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<int> int_list(const json& j, const char* what) {
  if (!j.is_array()) schema(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) out.push_back(as_int(v, what));
  return out;
}

std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) schema(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) schema(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& v : j) out.push_back(as_string(v, what));
  return out;
}

const json& array(const json& j, const char* what) {
  if (!j.is_array()) schema(std::string(what) + " must be an array");
  return j;
}

}  // namespace

json to_json(const ExtRational& q) { return to_string(q); }

ExtRational ext_rational_from_json(const json& j) {
  if (j.is_number_integer()) return ExtRational(j.get<long>());
  if (!j.is_string()) schema("rationals are written as strings");
  return parse_ext_rational(j.get<std::string>());
}

Rational rational_from_json(const json& j) {
  ExtRational q = ext_rational_from_json(j);
  if (q.is_inf()) schema("expected a finite rational");
  return q.value();
}

json to_json(const ExtendedPolySimplex& e) {
  json r = json::array();
  for (const auto& c : e.r) r.push_back(to_json(c));
  return {{"n", e.base.n}, {"r", r}, {"s", e.s}};
}

ExtendedPolySimplex shape_from_json(const json& j) {
  std::vector<Color> r;
  for (const auto& c : array(req(j, "r"), "r")) r.push_back(ext_rational_from_json(c));
  return ExtendedPolySimplex::make(int_list(req(j, "n"), "n"), r, as_int(req(j, "s"), "s"));
}

json to_json(const PSMorphism& m) {
  return {{"source", to_json(m.source)}, {"target", to_json(m.target)}, {"f", m.f}, {"c", m.c}, {"g", m.g}};
}

PSMorphism morphism_from_json(const json& j) {
  PSMorphism m;
  m.source = shape_from_json(req(j, "source"));
  m.target = shape_from_json(req(j, "target"));
  m.f = int_list(req(j, "f"), "f");
  for (const auto& row : array(req(j, "c"), "c")) m.c.push_back(int_list(row, "c"));
  m.g = int_list(req(j, "g"), "g");
  m.validate();
  return m;
}

json to_json(const ChartData& c) {
  json gamma = json::array();
  for (const auto& block : c.gamma) gamma.push_back(std::vector<std::string>(block.begin(), block.end()));
  return {{"shape", to_json(c.shape)}, {"alpha", c.alpha}, {"gamma", gamma}};
}

ChartData chart_from_json(const json& j) {
  ChartData c;
  c.shape = shape_from_json(req(j, "shape"));
  c.alpha = string_list(req(j, "alpha"), "alpha");
  for (const auto& block : array(req(j, "gamma"), "gamma")) {
    auto labels = string_list(block, "gamma");
    c.gamma.emplace_back(labels.begin(), labels.end());
  }
  return c;
}

json to_json(const RealizationPoint& p) {
  json x = json::array();
  for (const auto& row : p.x) {
    json r = json::array();
    for (const auto& v : row) r.push_back(to_json(v));
    x.push_back(r);
  }
  json y = json::array();
  for (const auto& v : p.y) y.push_back(to_json(v));
  return {{"x", x}, {"y", y}};
}

RealizationPoint realization_from_json(const json& j) {
  RealizationPoint p;
  for (const auto& row : array(req(j, "x"), "x")) {
    std::vector<ExtRational> r;
    for (const auto& v : array(row, "x")) r.push_back(ext_rational_from_json(v));
    p.x.push_back(r);
  }
  for (const auto& v : array(req(j, "y"), "y")) p.y.push_back(ext_rational_from_json(v));
  for (const auto& v : p.y) p.closure = p.closure || v.is_inf();
  return p;
}

namespace {

ComponentTable components_from_json(const json& j) {
  ComponentTable t;
  for (const auto& x : string_list(req(j, "x"), "components.x")) t.x_components.insert(x);
  if (auto it = j.find("h"); it != j.end()) {
    if (!it->is_object()) schema("components.h maps H-components to their X-component");
    for (const auto& [h, x] : it->items()) {
      t.h_components.insert(h);
      t.container[h] = as_string(x, "components.h");
    }
  }
  return t;
}

json components_to_json(const ComponentTable& t) {
  json h = json::object();
  for (const auto& [k, v] : t.container) h[k] = v;
  return {{"x", std::vector<std::string>(t.x_components.begin(), t.x_components.end())}, {"h", h}};
}

StratumKind kind_from_json(const json& j) {
  std::string k = as_string(j, "kind");
  if (k == "x" || k == "X") return StratumKind::x;
  if (k == "h" || k == "H") return StratumKind::h;
  schema("stratum kind must be \"x\" or \"h\"");
}

std::vector<std::pair<std::string, std::string>> order_from_json(const json& j) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& pair : array(j, "order")) {
    auto ids = string_list(pair, "order");
    if (ids.size() != 2) schema("order entries are [x, y] pairs meaning x <= y");
    out.emplace_back(ids[0], ids[1]);
  }
  return out;
}

PairDescriptor abstract_from_json(const json& j, const char* strata_key) {
  ComponentTable comps = components_from_json(req(j, "components"));
  const json* charts = j.contains("charts") ? &j.at("charts") : nullptr;
  std::vector<StratumRecord> strata;
  for (const auto& s : array(req(j, strata_key), strata_key)) {
    StratumRecord r;
    r.id = as_string(req(s, "id"), "id");
    r.kind = kind_from_json(req(s, "kind"));
    for (const auto& l : string_list(req(s, "a"), "a")) r.a.insert(l);
    const json* list = s.contains("charts") ? &s.at("charts") : nullptr;
    if (!list && charts && charts->is_object() && charts->contains(r.id)) list = &charts->at(r.id);
    if (!list) schema("stratum '" + r.id + "' has no charts");
    for (const auto& c : array(*list, "charts")) r.charts.push_back(chart_from_json(c));
    strata.push_back(std::move(r));
  }
  return PairDescriptor(std::move(comps), std::move(strata), order_from_json(req(j, "order")));
}

json strata_list(const PairDescriptor& desc) {
  json out = json::array();
  for (const auto& s : desc.strata()) {
    out.push_back({{"id", s.id},
                   {"kind", to_string(s.kind)},
                   {"a", std::vector<std::string>(s.a.begin(), s.a.end())}});
  }
  return out;
}

json charts_map(const PairDescriptor& desc) {
  json out = json::object();
  for (const auto& s : desc.strata()) {
    json list = json::array();
    for (const auto& c : s.charts) list.push_back(to_json(c));
    out[s.id] = list;
  }
  return out;
}

json pairs(const std::vector<std::pair<std::string, std::string>>& v) {
  json out = json::array();
  for (const auto& [a, b] : v) out.push_back({a, b});
  return out;
}

}  // namespace

PairDescriptor descriptor_from_json(const json& j) {
  const std::string kind = as_string(req(j, "kind"), "kind");
  if (kind == "standard") {
    std::vector<Rational> r;
    for (const auto& v : array(req(j, "r"), "r")) r.push_back(rational_from_json(v));
    return standard_descriptor(int_list(req(j, "n"), "n"), r, as_int(req(j, "d"), "d"),
                               as_int(req(j, "s"), "s"));
  }
  if (kind == "abstract") return abstract_from_json(j, "strata");
  if (kind == "lattice") return lattice_from_json(j);
  schema("descriptor kind must be \"standard\" or \"abstract\"");
}

json descriptor_to_json(const PairDescriptor& desc) {
  return {{"kind", "abstract"},
          {"components", components_to_json(desc.components())},
          {"strata", strata_list(desc)},
          {"charts", charts_map(desc)},
          {"order", pairs(desc.generators())}};
}

DescentData descent_from_json(const json& j) {
  if (as_string(req(j, "kind"), "kind") != "descent") schema("expected kind \"descent\"");
  DescentData d;
  d.base = std::make_shared<StrictDualComplex>(descriptor_from_json(req(j, "base")));
  for (const auto& c : array(req(j, "classes"), "classes")) d.classes.push_back(string_list(c, "classes"));
  for (const auto& w : array(req(j, "witnesses"), "witnesses")) {
    d.witnesses.push_back({as_string(req(w, "from"), "from"), as_string(req(w, "to"), "to"),
                           morphism_from_json(req(w, "h"))});
  }
  return d;
}

json strata_table(const PairDescriptor& desc) {
  json rows = json::array();
  for (const auto& s : desc.strata()) {
    const auto& e = s.chart().shape;
    rows.push_back({{"id", s.id},
                    {"kind", to_string(s.kind)},
                    {"dim", e.dimension()},
                    {"codim", e.simplex_dimension() + e.s},
                    {"shape", e.to_string()},
                    {"components", std::vector<std::string>(s.a.begin(), s.a.end())},
                    {"upper_set", desc.upper_set(s.id).size()},
                    {"charts", s.charts.size()}});
  }
  return {{"count", desc.size()}, {"strata", rows}};
}

std::string strata_csv(const PairDescriptor& desc) {
  std::ostringstream os;
  os << "id,kind,dim,codim,shape,components,upper_set\n";
  for (const auto& s : desc.strata()) {
    const auto& e = s.chart().shape;
    std::string comps;
    for (const auto& l : s.a) comps += (comps.empty() ? "" : " ") + l;
    os << '"' << s.id << "\"," << to_string(s.kind) << ',' << e.dimension() << ','
       << e.simplex_dimension() + e.s << ",\"" << e.to_string() << "\",\"" << comps << "\","
       << desc.upper_set(s.id).size() << '\n';
  }
  return os.str();
}

json lattice_json(const StrictDualComplex& cx) {
  const auto& desc = cx.descriptor();
  json faces = json::array();
  for (const auto& s : desc.strata()) {
    json charts = json::array();
    for (const auto& c : s.charts) charts.push_back(to_json(c));
    faces.push_back({{"id", s.id},
                     {"kind", to_string(s.kind)},
                     {"dim", s.chart().shape.dimension()},
                     {"a", std::vector<std::string>(s.a.begin(), s.a.end())},
                     {"charts", charts}});
  }
  json embeddings = json::array();
  json intersections = json::array();
  for (std::size_t a = 0; a < desc.size(); ++a) {
    for (std::size_t b = 0; b < desc.size(); ++b) {
      const auto& x = desc.at(a).id;
      const auto& y = desc.at(b).id;
      if (a != b && desc.leq(a, b)) {
        embeddings.push_back({{"face", y}, {"into", x}, {"morphism", to_json(cx.face_embedding(y, x))}});
      }
      if (a < b) intersections.push_back({{"faces", {x, y}}, {"intersection", cx.face_intersection(x, y)}});
    }
  }
  return {{"kind", "lattice"},
          {"components", components_to_json(desc.components())},
          {"faces", faces},
          {"order", pairs(desc.covers())},
          {"embeddings", embeddings},
          {"intersections", intersections},
          {"f_vector", cx.f_vector()}};
}

PairDescriptor lattice_from_json(const json& j) {
  if (as_string(req(j, "kind"), "kind") != "lattice") schema("expected kind \"lattice\"");
  return abstract_from_json(j, "faces");
}

json glued_json(const GluedComplex& g) {
  json faces = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    faces.push_back({{"class", i},
                     {"representative", g.representative(i)},
                     {"members", g.members(i)},
                     {"dim", g.shape(i).dimension()},
                     {"shape", to_json(g.shape(i))}});
  }
  json order = json::array();
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      if (a != b && g.leq(a, b)) order.push_back({a, b});
    }
  }
  json embeddings = json::array();
  for (const auto& e : g.embeddings()) {
    embeddings.push_back({{"face", e.face}, {"into", e.into}, {"via", e.via}, {"morphism", to_json(e.morphism)}});
  }
  return {{"kind", "glued"},
          {"faces", faces},
          {"order", order},
          {"embeddings", embeddings},
          {"f_vector", g.f_vector()}};
}

std::string off_dump(const StrictDualComplex& cx) {
  const auto& desc = cx.descriptor();
  std::vector<std::string> vertices;
  std::vector<std::size_t> edges, higher;
  for (std::size_t i = 0; i < desc.size(); ++i) {
    const int dim = desc.at(i).chart().shape.dimension();
    if (dim > 3) throw DomainError("Export", "OFF export needs dimension <= 3, face " + desc.at(i).id + " has " + std::to_string(dim));
    if (dim == 0) vertices.push_back(desc.at(i).id);
    else if (dim == 1) edges.push_back(i);
    else higher.push_back(i);
  }
  auto vertex_index = [&](const std::string& id) {
    return std::find(vertices.begin(), vertices.end(), id) - vertices.begin();
  };
  auto corners = [&](std::size_t i) {
    std::vector<long> out;
    for (const auto& y : desc.upper_set(desc.at(i).id)) {
      if (desc.stratum(y).chart().shape.dimension() == 0) out.push_back(vertex_index(y));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  std::ostringstream os;
  os << "DCXOFF\n" << vertices.size() << ' ' << edges.size() << ' ' << higher.size() << '\n';
  for (std::size_t v = 0; v < vertices.size(); ++v) os << "v " << v << ' ' << vertices[v] << '\n';
  // a half-line has a single corner and is written as a ray
  for (std::size_t i : edges) {
    auto c = corners(i);
    os << (c.size() == 2 ? "e " : "r ") << desc.at(i).id;
    for (long v : c) os << ' ' << v;
    os << '\n';
  }
  for (std::size_t i : higher) {
    auto c = corners(i);
    os << "f " << desc.at(i).id << ' ' << desc.at(i).chart().shape.dimension() << ' ' << c.size();
    for (long v : c) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

json to_json(const Coefficient& c) { return to_string(c); }

Coefficient coefficient_from_json(const json& j) {
  if (j.is_number_integer()) return Coefficient(j.get<long>());
  if (j.is_string()) return parse_coefficient(j.get<std::string>());
  if (j.is_array()) {
    Coefficient c;
    for (const auto& term : j) {
      if (!term.is_array() || term.size() != 2) schema("coefficient terms are [q, e] pairs");
      c += Coefficient::t_power(rational_from_json(term[1]), rational_from_json(term[0]));
    }
    return c;
  }
  schema("coefficients are strings or arrays of [q, e] pairs");
}

StandardPairModel model_from_json(const json& j, Mode mode) {
  std::vector<int> n = int_list(req(j, "n"), "n");
  std::vector<Coefficient> a;
  if (j.contains("a")) {
    for (const auto& c : array(j.at("a"), "a")) a.push_back(coefficient_from_json(c));
  } else if (j.contains("r")) {
    for (const auto& v : array(j.at("r"), "r")) {
      ExtRational r = ext_rational_from_json(v);
      a.push_back(r.is_inf() ? Coefficient() : Coefficient::t_power(r.value()));
    }
  } else if (!(n.empty() || (n.size() == 1 && n[0] == 0))) {
    schema("missing key 'a'");
  }
  return StandardPairModel::make(n, a, as_int(req(j, "d"), "d"), as_int(req(j, "s"), "s"), mode);
}

json to_json(const SkeletalPoint& x) {
  json v = json::array();
  for (const auto& row : x.v) {
    json r = json::array();
    for (const auto& q : row) r.push_back(to_json(q));
    v.push_back(r);
  }
  json discs = json::array();
  for (const auto& d : x.discs) discs.push_back({{"center", to_json(d.center)}, {"u", to_json(d.u)}});
  return {{"v", v}, {"discs", discs}};
}

SkeletalPoint point_from_json(const json& j) {
  SkeletalPoint x;
  for (const auto& row : array(req(j, "v"), "v")) {
    std::vector<ExtRational> r;
    for (const auto& q : array(row, "v")) r.push_back(ext_rational_from_json(q));
    x.v.push_back(r);
  }
  for (const auto& d : array(req(j, "discs"), "discs")) {
    Coefficient c = d.contains("center") ? coefficient_from_json(d.at("center")) : Coefficient();
    x.discs.push_back({c, ext_rational_from_json(req(d, "u"))});
  }
  return canonical_point(x);
}

json to_json(const ValuedPolynomial& f) {
  json out = json::array();
  for (const auto& [e, c] : f.terms) out.push_back({{"exp", e}, {"coef", to_json(c)}});
  return out;
}

ValuedPolynomial poly_from_json(const StandardPairModel& m, const json& j) {
  std::map<Exponent, Coefficient> raw;
  for (const auto& term : array(j, "poly")) {
    Exponent e = int_list(req(term, "exp"), "exp");
    raw[e] += coefficient_from_json(req(term, "coef"));
  }
  std::erase_if(raw, [](const auto& kv) { return kv.second.is_zero(); });
  return normalize_poly(m, raw);
}

}  // namespace dualcx::io
