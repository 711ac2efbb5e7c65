#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "multifol/api.hpp"
#include "multifol/checks/acceptance.hpp"
#include "multifol/error.hpp"
#include "multifol/json_io.hpp"

namespace {

using nlohmann::json;
using multifol::Error;
using multifol::ErrorCode;

struct Common {
  std::string output;
  bool pretty = false;
  std::uint64_t seed = multifol::checks::kDefaultSeed;
  std::size_t max_poset = multifol::kDefaultAntichainLimit;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--output,-o", c.output, "Write the result to this file instead of stdout");
  cmd->add_flag("--pretty", c.pretty, "Indent JSON output");
  cmd->add_option("--seed", c.seed, "Seed for randomized property sampling");
  cmd->add_option("--max-poset", c.max_poset, "Largest accepted poset")->capture_default_str();
}

json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path, json{{"file", path}});
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON in ") + path,
                json{{"file", path}, {"byte", e.byte}});
  }
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + c.output, json{{"file", c.output}});
  out << text;
}

std::string render(const Common& c, const json& j) { return j.dump(c.pretty ? 2 : -1) + "\n"; }

int exit_code_for(ErrorCode code) {
  return code == ErrorCode::SchemaError || code == ErrorCode::ParseError ? 2 : 1;
}

int selftest(const Common& c, const std::vector<std::string>& faults) {
  multifol::checks::SuiteOptions opts;
  opts.seed = c.seed;
  for (const auto& f : faults) {
    const auto& known = multifol::checks::known_faults();
    if (std::find(known.begin(), known.end(), f) == known.end())
      throw Error(ErrorCode::SchemaError, "unknown fault \"" + f + "\"", json{{"fault", f}});
    opts.faults.insert(f);
  }
  std::ostringstream os;
  os << "seed " << opts.seed << "\n";
  bool all = true;
  for (const auto& r : multifol::checks::run_acceptance(opts)) {
    os << multifol::checks::format_line(r) << "\n";
    all = all && r.passed();
  }
  os << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
  emit(c, os.str());
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projective systems, multifoliate structures and Weil functors over finite posets"};
  app.require_subcommand(1);
  Common c;
  std::vector<std::string> files;
  std::string kind = "auto";
  std::vector<std::string> faults;

  auto* validate = app.add_subcommand("validate", "Validate a document and summarize it");
  validate->add_option("file", files, "Input document")->required()->expected(1);
  validate->add_option("--kind", kind, "poset, system, structure, weil-algebra, weil-system, object or auto");
  auto* complete = app.add_subcommand("complete", "Complete a projective system");
  complete->add_option("system", files, "System document")->required()->expected(1);
  auto* classify = app.add_subcommand("classify", "Classify a projective system by a multifoliate structure");
  classify->add_option("system", files, "System document")->required()->expected(1);
  auto* equiv = app.add_subcommand("equiv", "Decide equivalence of two multifoliate structures");
  equiv->add_option("structures", files, "Two structure documents")->required()->expected(2);
  auto* product = app.add_subcommand("product", "Product of two structures, systems or objects");
  product->add_option("factors", files, "Two documents of one kind")->required()->expected(2);
  auto* dual = app.add_subcommand("dual", "Dual inductive system of a complete system");
  dual->add_option("system", files, "System document")->required()->expected(1);
  auto* weil_eval = app.add_subcommand("weil-eval", "Evaluate a polynomial map on algebra points");
  weil_eval->add_option("files", files, "Algebra document and evaluation document")->required()->expected(2);
  auto* fiber_dim = app.add_subcommand("fiber-dim", "Fiber product of a Weil system over a Cartesian object");
  fiber_dim->add_option("files", files, "Weil system document and object document")->required()->expected(2);
  auto* self = app.add_subcommand("selftest", "Run the acceptance criteria");
  self->add_option("--inject-fault", faults, "Corrupt a named component (weil-table)");
  for (auto* cmd : {validate, complete, classify, equiv, product, dual, weil_eval, fiber_dim, self})
    add_common(cmd, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  multifol::io::ReadOptions opts{c.max_poset};
  try {
    if (self->parsed()) return selftest(c, faults);
    std::vector<json> docs;
    for (const auto& f : files) docs.push_back(read_document(f));
    json result;
    if (validate->parsed()) result = multifol::api::validate(docs[0], kind, opts);
    else if (complete->parsed()) result = multifol::api::complete(docs[0], opts);
    else if (classify->parsed()) result = multifol::api::classify(docs[0], opts);
    else if (equiv->parsed()) result = multifol::api::equiv(docs[0], docs[1], opts);
    else if (product->parsed()) result = multifol::api::product(docs[0], docs[1], opts);
    else if (dual->parsed()) result = multifol::api::dual(docs[0], opts);
    else if (weil_eval->parsed()) result = multifol::api::weil_eval(docs[0], docs[1]);
    else if (fiber_dim->parsed()) result = multifol::api::fiber_dim(docs[0], docs[1], opts);
    emit(c, render(c, result));
    return 0;
  } catch (const Error& e) {
    std::cerr << "multifol: " << multifol::to_string(e.code()) << ": " << e.what() << "\n";
    try {
      emit(c, render(c, multifol::io::error_payload(e)));
    } catch (const Error&) {
    }
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    std::cerr << "multifol: SchemaError: " << e.what() << "\n";
    emit(c, render(c, multifol::io::error_payload(ErrorCode::SchemaError, e.what())));
    return 2;
  }
}
