// dualcx command line front end; talks to the library through the C API only.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>

#include "dualcx/dualcx.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 4;

struct Options {
  std::string input;
  std::string output;
  std::string format = "json";
  std::string mode = "standard";
  std::uint64_t seed = 0;
};

struct DocumentDeleter {
  void operator()(dcx_document* d) const { dcx_document_free(d); }
};
using Document = std::unique_ptr<dcx_document, DocumentDeleter>;

bool read_input(const std::string& path, std::string& text) {
  if (path.empty() || path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  text.assign(std::istreambuf_iterator<char>(in), {});
  return true;
}

int exit_code(dcx_status s) {
  switch (s) {
    case DCX_OK: return 0;
    case DCX_ERR_PARSE:
    case DCX_ERR_VALIDATION: return 2;
    case DCX_ERR_DOMAIN: return 3;
    case DCX_ERR_ARGUMENT: return kExitUsage;
    case DCX_ERR_INTERNAL: return kExitIo;
  }
  return kExitIo;
}

dcx_format format_of(const std::string& f) {
  if (f == "csv") return DCX_FORMAT_CSV;
  if (f == "off") return DCX_FORMAT_OFF;
  return DCX_FORMAT_JSON;
}

int finish(dcx_status status, char* result, const Options& opt) {
  if (status != DCX_OK) {
    std::cerr << dcx_last_error() << '\n';
    return exit_code(status);
  }
  std::unique_ptr<char, void (*)(char*)> owned(result, dcx_string_free);
  if (opt.output.empty() || opt.output == "-") {
    std::fputs(result, stdout);
    return 0;
  }
  std::ofstream out(opt.output, std::ios::binary);
  out << result;
  if (!out) {
    std::cerr << "cannot write " << opt.output << '\n';
    return kExitIo;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual intersection complexes and skeletons of standard pairs"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--input,-i", opt.input, "input file (default: stdin)");
  app.add_option("--output,-o", opt.output, "output file (default: stdout)");
  app.add_option("--format,-f", opt.format, "output format")->check(CLI::IsMember({"json", "csv", "off"}));
  app.add_option("--seed", opt.seed, "seed for sampling commands");
  app.add_option("--mode", opt.mode, "point mode")->check(CLI::IsMember({"standard", "closure"}));

  auto* strata = app.add_subcommand("strata", "strata table of a descriptor");
  auto* complex = app.add_subcommand("complex", "face lattice of a descriptor");
  auto* glue = app.add_subcommand("glue", "apply descent data and print the quotient lattice");
  auto* skeleton = app.add_subcommand("skeleton", "operate on a skeletal point");
  std::string op;
  skeleton->add_option("op", op, "operation")
      ->required()
      ->check(CLI::IsMember({"trop", "sigma", "tau", "flow", "reduce", "eval"}));
  auto* closure = app.add_subcommand("closure", "closure membership queries");
  auto* exporter = app.add_subcommand("export", "CSV trajectories or OFF-like complex dumps");
  for (auto* sub : {strata, complex, glue, skeleton, closure, exporter}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  std::string text;
  if (!read_input(opt.input, text)) {
    std::cerr << "cannot read " << opt.input << '\n';
    return kExitIo;
  }
  const dcx_format format = format_of(opt.format);
  const dcx_mode mode = opt.mode == "closure" ? DCX_MODE_CLOSURE : DCX_MODE_STANDARD;
  char* result = nullptr;

  if (*skeleton) {
    const dcx_status status = dcx_skeleton(op.c_str(), text.data(), text.size(), mode, opt.seed, format, &result);
    return finish(status, result, opt);
  }
  if (*closure) {
    const dcx_status status = dcx_closure(text.data(), text.size(), opt.seed, &result);
    return finish(status, result, opt);
  }
  if (*exporter) {
    const dcx_status status = dcx_export(text.data(), text.size(), mode, format, &result);
    return finish(status, result, opt);
  }

  dcx_document* raw = nullptr;
  dcx_status status = dcx_document_parse(text.data(), text.size(), &raw);
  if (status != DCX_OK) return finish(status, nullptr, opt);
  Document doc(raw);
  if (*strata) status = dcx_strata(doc.get(), format, &result);
  else if (*complex) status = dcx_complex(doc.get(), format, &result);
  else status = dcx_glue(doc.get(), &result);
  return finish(status, result, opt);
}
