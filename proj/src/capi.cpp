#include "dualcx/dualcx.h"

#include <cstring>
#include <optional>
#include <random>
#include <sstream>
#include <variant>

#include "dualcx/error.hpp"
#include "dualcx/io.hpp"

using namespace dualcx;
using io::json;

struct dcx_document {
  std::shared_ptr<const StrictDualComplex> complex;
  std::optional<GluedComplex> glued;
};

namespace {

thread_local std::string last_error = "{}";

struct ArgumentError : Error {
  explicit ArgumentError(const std::string& what) : Error("Argument", what) {}
};

void set_error(const char* status, const std::vector<ValidationIssue>& issues) {
  json errors = json::array();
  for (const auto& i : issues) errors.push_back({{"code", i.code}, {"message", i.message}});
  last_error = json{{"status", status}, {"errors", errors}}.dump();
}

template <class F>
dcx_status guarded(F&& body) {
  try {
    body();
    last_error = "{}";
    return DCX_OK;
  } catch (const json::parse_error& e) {
    set_error("parse", {{"JSON", e.what()}});
    return DCX_ERR_PARSE;
  } catch (const json::exception& e) {
    set_error("validation", {{"Schema", e.what()}});
    return DCX_ERR_VALIDATION;
  } catch (const ValidationError& e) {
    set_error("validation", e.issues());
    return DCX_ERR_VALIDATION;
  } catch (const DescriptorError& e) {
    set_error("validation", {{e.code(), e.what()}});
    return DCX_ERR_VALIDATION;
  } catch (const DomainError& e) {
    set_error("domain", {{e.code(), e.what()}});
    return DCX_ERR_DOMAIN;
  } catch (const ArgumentError& e) {
    set_error("argument", {{e.code(), e.what()}});
    return DCX_ERR_ARGUMENT;
  } catch (const Error& e) {
    set_error("internal", {{e.code(), e.what()}});
    return DCX_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error("internal", {{"Internal", e.what()}});
    return DCX_ERR_INTERNAL;
  }
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void emit(char** out, const std::string& s) { *out = copy_out(s); }
void emit(char** out, const json& j) { *out = copy_out(j.dump(2) + "\n"); }

json parse_text(const char* text, std::size_t length) {
  if (!text) throw ArgumentError("null input");
  return json::parse(std::string_view(text, length));
}

void require(const void* p, const char* what) {
  if (!p) throw ArgumentError(std::string("null ") + what);
}

Mode to_mode(dcx_mode m) { return m == DCX_MODE_CLOSURE ? Mode::closure : Mode::standard; }

std::vector<ExtRational> tau_list(const json& req) {
  std::vector<ExtRational> taus;
  if (req.contains("tau")) {
    const json& t = req.at("tau");
    if (t.is_array()) {
      for (const auto& v : t) taus.push_back(io::ext_rational_from_json(v));
    } else {
      taus.push_back(io::ext_rational_from_json(t));
    }
  } else {
    taus = {ExtRational::infinity(), ExtRational(3), ExtRational(1), ExtRational(0)};
  }
  // t increasing from 0 to 1
  std::sort(taus.begin(), taus.end(), [](const auto& a, const auto& b) { return b < a; });
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
  return taus;
}

const json& field(const json& req, const char* key) {
  if (!req.is_object() || !req.contains(key)) {
    throw DescriptorError("Schema", std::string("missing key '") + key + "'");
  }
  return req.at(key);
}

struct Trajectory {
  StandardPairModel model;
  SkeletalPoint start;
  std::vector<std::pair<ExtRational, SkeletalPoint>> rows;
};

Trajectory trajectory(const json& req, Mode mode) {
  Trajectory t{io::model_from_json(field(req, "model"), mode), io::point_from_json(field(req, "point")), {}};
  validate_point(t.model, t.start);
  for (const auto& tt : tau_list(req)) t.rows.emplace_back(tt, flow(t.model, t.start, tt));
  return t;
}

std::string trajectory_csv(const Trajectory& t) {
  const auto& m = t.model;
  std::ostringstream os;
  os << "tau";
  for (int i = 0; i < m.factors(); ++i) {
    for (int j = 0; j <= m.n[i]; ++j) os << ",v" << i + 1 << '_' << j;
  }
  for (int j = 1; j <= m.d; ++j) os << ",center" << j << ",u" << j;
  for (int i = 0; i < m.factors(); ++i) {
    for (int j = 0; j <= m.n[i]; ++j) os << ",trop_x" << i + 1 << '_' << j;
  }
  for (int j = 1; j <= m.s; ++j) os << ",trop_y" << j;
  os << '\n';
  for (const auto& [tt, x] : t.rows) {
    os << to_string(tt);
    for (const auto& row : x.v) {
      for (const auto& v : row) os << ',' << to_string(v);
    }
    for (const auto& d : x.discs) os << ',' << to_string(d.center) << ',' << to_string(d.u);
    const auto w = trop(m, x);
    for (const auto& row : w.x) {
      for (const auto& v : row) os << ',' << to_string(v);
    }
    for (const auto& y : w.y) os << ',' << to_string(y);
    os << '\n';
  }
  return os.str();
}

// Random normal-form polynomial for the eval self-check.
ValuedPolynomial sample_poly(std::mt19937_64& rng, const StandardPairModel& m) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::map<Exponent, Coefficient> raw;
  const int terms = pick(1, 3);
  for (int k = 0; k < terms; ++k) {
    Exponent e(m.variables(), 0);
    const int deg = pick(0, 3);
    for (int i = 0; i < deg && m.variables() > 0; ++i) ++e[pick(0, m.variables() - 1)];
    raw[e] += Coefficient::t_power(make_rational(pick(0, 6), pick(1, 2)), pick(-3, 3));
  }
  std::erase_if(raw, [](const auto& kv) { return kv.second.is_zero(); });
  return normalize_poly(m, raw);
}

json skeleton_json(const std::string& op, const json& req, Mode mode, std::uint64_t seed) {
  const StandardPairModel m = io::model_from_json(field(req, "model"), mode);
  if (op == "sigma") {
    SkeletalPoint x = sigma(m, io::realization_from_json(field(req, "w")));
    return {{"point", io::to_json(x)}};
  }
  if (op == "flow") {
    Trajectory t = trajectory(req, mode);
    json rows = json::array();
    for (const auto& [tt, x] : t.rows) {
      rows.push_back({{"tau", io::to_json(tt)}, {"point", io::to_json(x)}, {"trop", io::to_json(trop(m, x))}});
    }
    return {{"window", io::to_json(flow_injectivity_window(m, t.start))}, {"trajectory", rows}};
  }
  const SkeletalPoint x = io::point_from_json(field(req, "point"));
  validate_point(m, x);
  if (op == "trop") return {{"trop", io::to_json(trop(m, x))}};
  if (op == "tau") {
    return {{"point", io::to_json(tau(m, x))}, {"skeleton", is_skeleton_point(m, x)}};
  }
  if (op == "reduce") {
    Reduction r = reduction_stratum(m, x);
    return {{"stratum", r.stratum}, {"generic", r.generic}};
  }
  if (op == "eval") {
    json out = json::object();
    if (req.contains("poly")) {
      const ValuedPolynomial f = io::poly_from_json(m, req.at("poly"));
      out["poly"] = io::to_json(f);
      out["seminorm"] = io::to_json(seminorm_eval(m, x, f));
      if (req.contains("tau")) {
        json rows = json::array();
        for (const auto& tt : tau_list(req)) {
          rows.push_back({{"tau", io::to_json(tt)},
                          {"star", io::to_json(star_eval(m, x, tt, f))},
                          {"flow", io::to_json(seminorm_eval(m, flow(m, x, tt), f))}});
        }
        out["star"] = rows;
      }
    }
    if (req.contains("samples")) {
      std::mt19937_64 rng(seed);
      const int count = field(req, "samples").get<int>();
      const std::vector<ExtRational> grid = {ExtRational::infinity(), ExtRational(2), ExtRational(1),
                                             ExtRational(make_rational(1, 2)), ExtRational(0)};
      int agree = 0;
      for (int k = 0; k < count; ++k) {
        const ValuedPolynomial f = sample_poly(rng, m);
        const ExtRational& tt = grid[rng() % grid.size()];
        if (star_eval(m, x, tt, f) == seminorm_eval(m, flow(m, x, tt), f)) ++agree;
      }
      out["samples"] = {{"count", count}, {"agree", agree}, {"seed", seed}};
    }
    if (out.empty()) throw DescriptorError("Schema", "eval needs 'poly' or 'samples'");
    return out;
  }
  throw ArgumentError("unknown skeleton operation '" + op + "'");
}

}  // namespace

extern "C" {

const char* dcx_version(void) { return "0.1.0"; }

dcx_status dcx_document_parse(const char* text, size_t length, dcx_document** out) {
  return guarded([&] {
    require(out, "output handle");
    *out = nullptr;
    const json j = parse_text(text, length);
    auto doc = std::make_unique<dcx_document>();
    const json& kind = field(j, "kind");
    if (kind == "descent") {
      DescentData d = io::descent_from_json(j);
      doc->complex = d.base;
      doc->glued = coequalize(std::move(d));
    } else {
      doc->complex = std::make_shared<StrictDualComplex>(io::descriptor_from_json(j));
    }
    *out = doc.release();
  });
}

void dcx_document_free(dcx_document* doc) { delete doc; }

dcx_kind dcx_document_kind(const dcx_document* doc) {
  return doc && doc->glued ? DCX_KIND_DESCENT : DCX_KIND_DESCRIPTOR;
}

size_t dcx_document_size(const dcx_document* doc) {
  if (!doc) return 0;
  return doc->glued ? doc->glued->size() : doc->complex->descriptor().size();
}

dcx_status dcx_strata(const dcx_document* doc, dcx_format format, char** out) {
  return guarded([&] {
    require(doc, "document");
    require(out, "output");
    const auto& desc = doc->complex->descriptor();
    if (format == DCX_FORMAT_CSV) {
      emit(out, io::strata_csv(desc));
    } else if (format == DCX_FORMAT_JSON) {
      emit(out, io::strata_table(desc));
    } else {
      throw ArgumentError("strata supports json and csv");
    }
  });
}

dcx_status dcx_complex(const dcx_document* doc, dcx_format format, char** out) {
  return guarded([&] {
    require(doc, "document");
    require(out, "output");
    if (format == DCX_FORMAT_OFF) {
      emit(out, io::off_dump(*doc->complex));
    } else if (format == DCX_FORMAT_JSON) {
      emit(out, io::lattice_json(*doc->complex));
    } else {
      throw ArgumentError("complex supports json and off");
    }
  });
}

dcx_status dcx_glue(const dcx_document* doc, char** out) {
  return guarded([&] {
    require(doc, "document");
    require(out, "output");
    if (!doc->glued) throw ArgumentError("glue needs a descent document");
    emit(out, io::glued_json(*doc->glued));
  });
}

dcx_status dcx_skeleton(const char* op, const char* request, size_t length, dcx_mode mode,
                        uint64_t seed, dcx_format format, char** out) {
  return guarded([&] {
    require(op, "operation");
    require(out, "output");
    const json req = parse_text(request, length);
    const std::string name(op);
    if (format == DCX_FORMAT_CSV) {
      if (name != "flow") throw ArgumentError("csv output is only available for flow");
      emit(out, trajectory_csv(trajectory(req, to_mode(mode))));
    } else if (format == DCX_FORMAT_JSON) {
      emit(out, skeleton_json(name, req, to_mode(mode), seed));
    } else {
      throw ArgumentError("skeleton supports json and csv");
    }
  });
}

dcx_status dcx_closure(const char* request, size_t length, uint64_t seed, char** out) {
  return guarded([&] {
    require(out, "output");
    const json req = parse_text(request, length);
    const StandardPairModel m = io::model_from_json(field(req, "model"), Mode::closure);
    std::vector<RealizationPoint> points;
    if (req.contains("points")) {
      for (const auto& p : req.at("points")) points.push_back(io::realization_from_json(p));
    } else {
      // sample the shape: simplex coordinates from a barycentric grid, y in {0..4, inf}
      std::mt19937_64 rng(seed);
      const int count = req.contains("samples") ? req.at("samples").get<int>() : 16;
      const auto grid = lattice_points(ExtendedPolySimplex::make(m.n, std::vector<Color>(m.factors(), Color(1)), 0), 2, 0);
      const auto r = m.r();
      for (int k = 0; k < count; ++k) {
        RealizationPoint p = grid[rng() % grid.size()];
        for (int i = 0; i < m.factors(); ++i) {
          for (auto& v : p.x[i]) v = v * r[i];
        }
        for (int j = 0; j < m.s; ++j) {
          const int pick = static_cast<int>(rng() % 6);
          p.y.push_back(pick == 5 ? ExtRational::infinity() : ExtRational(pick));
        }
        points.push_back(p);
      }
    }
    json rows = json::array();
    for (const auto& p : points) {
      rows.push_back({{"point", io::to_json(p)}, {"class", to_string(closure_membership(m, p))}});
    }
    emit(out, json{{"points", rows}});
  });
}

dcx_status dcx_export(const char* text, size_t length, dcx_mode mode, dcx_format format, char** out) {
  return guarded([&] {
    require(out, "output");
    const json j = parse_text(text, length);
    if (format == DCX_FORMAT_CSV) {
      emit(out, trajectory_csv(trajectory(j, to_mode(mode))));
      return;
    }
    StrictDualComplex cx(io::descriptor_from_json(j));
    if (format == DCX_FORMAT_OFF) {
      emit(out, io::off_dump(cx));
    } else {
      emit(out, io::descriptor_to_json(cx.descriptor()));
    }
  });
}

const char* dcx_last_error(void) { return last_error.c_str(); }

void dcx_string_free(char* s) { std::free(s); }

}  // extern "C"
