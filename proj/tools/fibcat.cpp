// Command-line driver: parses a document, dispatches one command and prints
// the JSON (or a text summary). Exit codes: 0 all verdicts pass, 1 a verdict
// failed, 2 usage or parse error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fibcat/commands.hpp"

namespace {

int fail_usage(const std::string& msg) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["usage_error"] = msg;
  std::cerr << j.dump(2) << "\n";
  return 2;
}

void print_text(const nlohmann::json& report, std::ostream& os) {
  os << "command: " << report["command"].get<std::string>() << "\n";
  for (const auto& v : report["verdicts"]) {
    os << (v["pass"].get<bool>() ? "  PASS " : "  FAIL ") << v["name"].get<std::string>();
    if (v.contains("detail")) os << " — " << v["detail"].get<std::string>();
    os << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification engine for finite fibred-category models"};
  app.require_subcommand(1);

  std::string input, out_file;
  bool as_text = false;
  fibcat::cmd::CommandOptions opts;

  app.add_option("--input", input, "input document")->required();
  app.add_flag("--text", as_text, "text summary instead of JSON");
  app.add_option("--out", out_file, "write the produced document (or report) here");
  app.add_option("--seed", opts.seed, "seed for randomized suites");
  app.add_option("--max-size", opts.max_size, "enumeration bound for strength checks");

  std::string command;
  auto set = [&command](const std::string& name) {
    return [&command, name]() { command = name; };
  };

  app.add_subcommand("check", "validate every declaration")->callback(set("check"));

  auto* analyze = app.add_subcommand("analyze", "Cartesian table, fibration verdict, cleavage");
  analyze->add_option("--functor", opts.functor)->required();
  analyze->callback(set("analyze"));

  auto* dualize = app.add_subcommand("dualize", "construct the fibrewise dual");
  dualize->add_option("--functor", opts.functor)->required();
  dualize->callback(set("dualize"));

  auto* ddual = app.add_subcommand("doubledual", "verify X ~ X** over the base");
  ddual->add_option("--functor", opts.functor)->required();
  ddual->callback(set("doubledual"));

  auto* glue = app.add_subcommand("glue", "glue fiberwise and Cartesian data");
  glue->add_option("--data", opts.data)->required();
  glue->callback(set("glue"));

  auto* finset = app.add_subcommand("finset", "finite-set family operations");
  finset->require_subcommand(1);
  auto* pb = finset->add_subcommand("pullback");
  pb->add_option("--map", opts.map)->required();
  pb->add_option("--family", opts.family)->required();
  pb->callback(set("finset-pullback"));
  auto* pi = finset->add_subcommand("pi");
  pi->add_option("--map", opts.map)->required();
  pi->add_option("--family", opts.family)->required();
  pi->callback(set("finset-pi"));
  auto* comp = finset->add_subcommand("compose");
  comp->add_option("--first", opts.first)->required();
  comp->add_option("--second", opts.second)->required();
  comp->callback(set("finset-compose"));

  auto* jet = app.add_subcommand("jet", "jet fibers and comorphism action");
  jet->add_option("--relation", opts.relation)->required();
  jet->add_option("--family", opts.family)->required();
  jet->add_option("--comorphism", opts.comorphism);
  jet->add_option("--relation2", opts.relation2);
  jet->callback(set("jet"));

  auto* strength = app.add_subcommand("strength", "strength and flow on built-ins");
  strength->require_subcommand(1);
  auto* sc = strength->add_subcommand("check");
  sc->add_option("--functor-name", opts.builtin)->required();
  sc->callback(set("strength-check"));
  auto* sf = strength->add_subcommand("flow");
  sf->add_option("--functor-name", opts.builtin)->required();
  sf->add_option("--d-size", opts.d_size);
  sf->add_option("--b-size", opts.b_size);
  sf->callback(set("strength-flow"));
  auto* sp = strength->add_subcommand("prolong");
  sp->add_option("--functor-name", opts.builtin)->required();
  sp->add_option("--d-size", opts.d_size);
  sp->add_option("--xi", opts.xi)->required();
  sp->callback(set("strength-prolong"));

  auto* vect = app.add_subcommand("vect", "vector bundles and dualization");
  vect->require_subcommand(1);
  auto* vd = vect->add_subcommand("dagger");
  vd->add_option("--bundle", opts.bundle)->required();
  vd->callback(set("vect-dagger"));
  auto* vt = vect->add_subcommand("tangent");
  vt->add_option("--relation", opts.relation)->required();
  vt->add_option("--field", opts.field);
  vt->add_option("--map", opts.map);
  vt->add_option("--relation2", opts.relation2);
  vt->callback(set("vect-tangent"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  std::ifstream in(input);
  if (!in) return fail_usage("cannot open input file '" + input + "'");
  std::stringstream buf;
  buf << in.rdbuf();

  fibcat::dsl::ParseResult parsed = fibcat::dsl::parse_document(buf.str());
  if (!parsed.ok()) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["command"] = command;
    j["diagnostics"] = nlohmann::json::array();
    for (const auto& d : parsed.diagnostics) {
      j["diagnostics"].push_back(
          {{"severity", d.severity == fibcat::dsl::Diagnostic::Severity::error
                            ? "error"
                            : "warning"},
           {"line", d.line},
           {"column", d.column},
           {"message", d.message},
           {"suggestion", d.suggestion}});
    }
    std::cerr << j.dump(2) << "\n";
    return 2;
  }

  std::string artifact;
  nlohmann::json report =
      fibcat::cmd::run_command(command, *parsed.doc, opts, &artifact);

  // Surface load-time warnings (auto-completed reflexive pairs and the like).
  if (!parsed.diagnostics.empty()) {
    report["diagnostics"] = nlohmann::json::array();
    for (const auto& d : parsed.diagnostics)
      report["diagnostics"].push_back({{"severity", "warning"},
                                       {"line", d.line},
                                       {"column", d.column},
                                       {"message", d.message}});
  }

  if (as_text)
    print_text(report, std::cout);
  else
    std::cout << report.dump(2) << "\n";

  if (!out_file.empty()) {
    std::ofstream out(out_file);
    out << (artifact.empty() ? report.dump(2) + "\n" : artifact);
  }
  return fibcat::cmd::exit_code_for(report);
}
