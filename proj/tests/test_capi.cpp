#include <doctest.h>

#include <string>

#include "dualcx/dualcx.h"
#include "dualcx/io.hpp"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  dcx_string_free(s);
  return out;
}

dcx_status parse(const std::string& text, dcx_document** doc) {
  return dcx_document_parse(text.data(), text.size(), doc);
}

const std::string kStandard = R"({"kind":"standard","n":[2],"r":["1"],"d":1,"s":1})";

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("descriptor documents") {
  dcx_document* doc = nullptr;
  REQUIRE(parse(kStandard, &doc) == DCX_OK);
  CHECK(dcx_document_kind(doc) == DCX_KIND_DESCRIPTOR);
  CHECK(dcx_document_size(doc) == 14);

  char* out = nullptr;
  REQUIRE(dcx_complex(doc, DCX_FORMAT_JSON, &out) == DCX_OK);
  auto lattice = dualcx::io::json::parse(take(out));
  long total = 0;
  for (long v : lattice["f_vector"]) total += v;
  CHECK(total == 14);

  REQUIRE(dcx_strata(doc, DCX_FORMAT_CSV, &out) == DCX_OK);
  CHECK(take(out).rfind("id,kind,dim,codim", 0) == 0);
  CHECK(dcx_glue(doc, &out) == DCX_ERR_ARGUMENT);
  CHECK(std::string(dcx_last_error()).find("descent") != std::string::npos);
  dcx_document_free(doc);
}

TEST_CASE("errors") {
  dcx_document* doc = nullptr;
  CHECK(parse("{", &doc) == DCX_ERR_PARSE);
  CHECK(doc == nullptr);
  CHECK(parse(R"({"kind":"standard","n":[2],"r":["1"],"d":1})", &doc) == DCX_ERR_VALIDATION);
  auto err = dualcx::io::json::parse(dcx_last_error());
  CHECK(err["status"] == "validation");
  CHECK(err["errors"][0]["code"] == "Schema");
  CHECK(parse(R"({"kind":"standard","n":[2],"r":["1/0"],"d":1,"s":1})", &doc) == DCX_ERR_VALIDATION);
  CHECK(dcx_document_parse(nullptr, 0, &doc) == DCX_ERR_ARGUMENT);

  const std::string on_divisor = R"({"model":{"n":[0],"d":1,"s":1},"point":{"v":[],"discs":[{"u":"inf"}]}})";
  char* out = nullptr;
  CHECK(dcx_skeleton("trop", on_divisor.data(), on_divisor.size(), DCX_MODE_STANDARD, 0, DCX_FORMAT_JSON, &out) ==
        DCX_ERR_DOMAIN);
  CHECK(dcx_skeleton("trop", on_divisor.data(), on_divisor.size(), DCX_MODE_CLOSURE, 0, DCX_FORMAT_JSON, &out) ==
        DCX_OK);
  auto trop = dualcx::io::json::parse(take(out));
  CHECK(trop["trop"]["y"][0] == "inf");
  CHECK(dcx_skeleton("spin", on_divisor.data(), on_divisor.size(), DCX_MODE_CLOSURE, 0, DCX_FORMAT_JSON, &out) ==
        DCX_ERR_ARGUMENT);
}

TEST_CASE("descent and glue") {
  const std::string nodal = R"({"kind":"descent",
    "base":{"kind":"standard","n":[1],"r":["1"],"d":0,"s":0},
    "classes":[["S[0,1]/[]"],["S[0]/[]","S[1]/[]"]],
    "witnesses":[{"from":"S[0]/[]","to":"S[1]/[]",
      "h":{"source":{"n":[0],"r":[],"s":0},"target":{"n":[0],"r":[],"s":0},"f":[],"c":[],"g":[0]}}]})";
  dcx_document* doc = nullptr;
  REQUIRE(parse(nodal, &doc) == DCX_OK);
  CHECK(dcx_document_kind(doc) == DCX_KIND_DESCENT);
  CHECK(dcx_document_size(doc) == 2);
  char* out = nullptr;
  REQUIRE(dcx_glue(doc, &out) == DCX_OK);
  auto g = dualcx::io::json::parse(take(out));
  CHECK(g["f_vector"] == dualcx::io::json::array({1, 1}));
  dcx_document_free(doc);
}

TEST_CASE("skeleton requests") {
  const std::string ball = R"({"model":{"n":[0],"d":1,"s":0},
    "point":{"v":[],"discs":[{"center":"t^2","u":"inf"}]},"tau":["0","inf","3","1"]})";
  char* out = nullptr;
  REQUIRE(dcx_skeleton("flow", ball.data(), ball.size(), DCX_MODE_STANDARD, 0, DCX_FORMAT_JSON, &out) == DCX_OK);
  auto flow = dualcx::io::json::parse(take(out));
  REQUIRE(flow["trajectory"].size() == 4);
  CHECK(flow["trajectory"][0]["tau"] == "inf");
  CHECK(flow["trajectory"][3]["point"]["discs"][0] == dualcx::io::json({{"center", "0"}, {"u", "0"}}));
  CHECK(flow["window"] == "inf");

  REQUIRE(dcx_skeleton("flow", ball.data(), ball.size(), DCX_MODE_STANDARD, 0, DCX_FORMAT_CSV, &out) == DCX_OK);
  auto csv = take(out);
  CHECK(csv == "tau,center1,u1\ninf,t^2,inf\n3,t^2,3\n1,0,1\n0,0,0\n");

  const std::string eval = R"({"model":{"n":[1],"a":["t"],"d":0,"s":0},"point":{"v":[["1/4","3/4"]],"discs":[]},
    "poly":[{"exp":[1,0],"coef":"1"},{"exp":[0,1],"coef":"1"}]})";
  REQUIRE(dcx_skeleton("eval", eval.data(), eval.size(), DCX_MODE_STANDARD, 0, DCX_FORMAT_JSON, &out) == DCX_OK);
  CHECK(dualcx::io::json::parse(take(out))["seminorm"] == "1/4");

  const std::string reduce = R"({"model":{"n":[2],"r":["1"],"d":1,"s":1},
    "point":{"v":[["1/3","1/3","1/3"]],"discs":[{"u":"2"}]}})";
  REQUIRE(dcx_skeleton("reduce", reduce.data(), reduce.size(), DCX_MODE_STANDARD, 0, DCX_FORMAT_JSON, &out) == DCX_OK);
  auto r = dualcx::io::json::parse(take(out));
  CHECK(r["stratum"] == "S[0,1,2]/[1]");
  CHECK(r["generic"] == true);

  const std::string sampled = R"({"model":{"n":[0],"d":2,"s":2},"samples":10})";
  REQUIRE(dcx_closure(sampled.data(), sampled.size(), 3, &out) == DCX_OK);
  auto first = take(out);
  REQUIRE(dcx_closure(sampled.data(), sampled.size(), 3, &out) == DCX_OK);
  CHECK(take(out) == first);
  CHECK(dualcx::io::json::parse(first)["points"].size() == 10);
}

TEST_CASE("export") {
  char* out = nullptr;
  REQUIRE(dcx_export(kStandard.data(), kStandard.size(), DCX_MODE_STANDARD, DCX_FORMAT_JSON, &out) == DCX_OK);
  const std::string abstract = take(out);
  dcx_document* doc = nullptr;
  REQUIRE(parse(abstract, &doc) == DCX_OK);
  CHECK(dcx_document_size(doc) == 14);
  dcx_document_free(doc);
  REQUIRE(dcx_export(kStandard.data(), kStandard.size(), DCX_MODE_STANDARD, DCX_FORMAT_OFF, &out) == DCX_OK);
  CHECK(take(out).rfind("DCXOFF\n3 6 5\n", 0) == 0);
  const std::string big = R"({"kind":"standard","n":[2,2],"r":["1","1"],"d":0,"s":0})";
  CHECK(dcx_export(big.data(), big.size(), DCX_MODE_STANDARD, DCX_FORMAT_OFF, &out) == DCX_ERR_DOMAIN);
}

}  // TEST_SUITE
