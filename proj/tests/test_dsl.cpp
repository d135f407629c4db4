#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fibcat/commands.hpp"
#include "fibcat/fixtures.hpp"

using namespace fibcat;
namespace fx = fibcat::fixtures;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fixtures_path() { return std::string(FIBCAT_TEST_DATA) + "/fixtures.fib"; }

bool has_error(const dsl::ParseResult& r) { return !r.ok(); }

const dsl::Diagnostic* first_error(const dsl::ParseResult& r) {
  for (const auto& d : r.diagnostics)
    if (d.severity == dsl::Diagnostic::Severity::error) return &d;
  return nullptr;
}

}  // namespace

TEST_CASE("empty document") {
  dsl::ParseResult r = dsl::parse_document("");
  REQUIRE(r.ok());
  CHECK(r.doc->categories.empty());
  CHECK(dsl::emit_document(*r.doc).empty());
}

TEST_CASE("the shipped corpus parses to the fixtures bit-identically") {
  dsl::ParseResult r = dsl::parse_document(read_file(fixtures_path()));
  REQUIRE(r.ok());
  CHECK(r.diagnostics.empty());

  auto w = fx::walking_fibration();
  const dsl::CategoryDecl* e = r.doc->category("E");
  REQUIRE(e != nullptr);
  CHECK(e->cat.arrows.size() == w.total->arrows.size());
  CHECK(e->cat.comp == w.total->comp);
  CHECK(e->cat.identity == w.total->identity);
  for (size_t i = 0; i < e->cat.arrows.size(); ++i) {
    CHECK(e->cat.arrows[i].dom == w.total->arrows[i].dom);
    CHECK(e->cat.arrows[i].cod == w.total->arrows[i].cod);
  }
  const dsl::FunctorDecl* pi = r.doc->functor_decl("pi");
  REQUIRE(pi != nullptr);
  CHECK(pi->fun.obj_map == w.pi.obj_map);
  CHECK(pi->fun.arr_map == w.pi.arr_map);
}

TEST_CASE("golden file is byte-stable under canonicalization") {
  std::string text = read_file(fixtures_path());
  dsl::ParseResult r1 = dsl::parse_document(text);
  REQUIRE(r1.ok());
  std::string canon = dsl::emit_document(*r1.doc);
  dsl::ParseResult r2 = dsl::parse_document(canon);
  REQUIRE(r2.ok());
  CHECK(dsl::emit_document(*r2.doc) == canon);

  std::string golden = read_file(std::string(FIBCAT_TEST_DATA) + "/fixtures_canonical.fib");
  CHECK(canon == golden);
}

TEST_CASE("diagnostics carry positions and do not abort parsing") {
  std::string text =
      "category C {\n"
      "  objects: a, b;\n"
      "  arrow f: a -> missing;\n"
      "}\n"
      "family F over 2 = [1, 2];\n";
  dsl::ParseResult r = dsl::parse_document(text);
  CHECK(has_error(r));
  const dsl::Diagnostic* d = first_error(r);
  REQUIRE(d != nullptr);
  CHECK(d->line == 3);
  CHECK(d->column == 17);  // the token `missing`
  CHECK(d->message.find("missing") != std::string::npos);
}

TEST_CASE("unknown keywords, dangling references, bad compositions") {
  dsl::ParseResult r1 = dsl::parse_document("flurble X over 2 = [1, 1];\n");
  CHECK(has_error(r1));
  CHECK(first_error(r1)->message.find("unknown keyword") != std::string::npos);

  dsl::ParseResult r2 = dsl::parse_document(
      "functor F: A -> B { object a |-> b; }\n");
  CHECK(has_error(r2));

  // Non-composable compose entry.
  dsl::ParseResult r3 = dsl::parse_document(
      "category C { objects: a, b; arrow f: a -> b; arrow g: a -> b; compose f.g = f; }\n");
  CHECK(has_error(r3));
  CHECK(first_error(r3)->message.find("not composable") != std::string::npos);

  // Missing composition entry.
  dsl::ParseResult r4 = dsl::parse_document(
      "category C { objects: a, b, c; arrow f: a -> b; arrow g: b -> c; }\n");
  CHECK(has_error(r4));
  CHECK(first_error(r4)->message.find("missing composition") != std::string::npos);

  // Reserved identity prefix.
  dsl::ParseResult r5 = dsl::parse_document(
      "category C { objects: a; arrow id_a: a -> a; }\n");
  CHECK(has_error(r5));

  // Duplicate declaration names.
  dsl::ParseResult r6 = dsl::parse_document(
      "family F over 1 = [1];\nfamily F over 1 = [2];\n");
  CHECK(has_error(r6));
}

TEST_CASE("relations auto-complete reflexive pairs with a warning") {
  dsl::ParseResult r = dsl::parse_document("relation R on 2 = { (0, 1) };\n");
  REQUIRE(r.ok());
  bool warned = false;
  for (const auto& d : r.diagnostics)
    warned = warned || (d.severity == dsl::Diagnostic::Severity::warning &&
                        d.message.find("reflexive") != std::string::npos);
  CHECK(warned);
  CHECK(r.doc->relation("R")->rel.contains(0, 0));
  CHECK(r.doc->relation("R")->rel.contains(1, 1));
}

TEST_CASE("comorphism component validation") {
  std::string prefix =
      "finmap a: 1 -> 1 = [0];\n"
      "family X over 1 = [2];\n"
      "family Y over 1 = [2];\n";
  dsl::ParseResult bad1 =
      dsl::parse_document(prefix + "comorphism c over a from X to Y { at 0: [0]; }\n");
  CHECK(has_error(bad1));  // wrong component length
  dsl::ParseResult bad2 =
      dsl::parse_document(prefix + "comorphism c over a from X to Y { at 0: [0, 5]; }\n");
  CHECK(has_error(bad2));  // value out of range
  dsl::ParseResult ok =
      dsl::parse_document(prefix + "comorphism c over a from X to Y { at 0: [0, 1]; }\n");
  CHECK(ok.ok());
}

TEST_CASE("check command: all-pass report on the corpus") {
  dsl::ParseResult r = dsl::parse_document(read_file(fixtures_path()));
  REQUIRE(r.ok());
  cmd::CommandOptions opts;
  nlohmann::json report = cmd::run_command("check", *r.doc, opts);
  CHECK(report["schema_version"] == 1);
  for (const auto& v : report["verdicts"]) CHECK(v["pass"].get<bool>());
  CHECK(cmd::exit_code_for(report) == 0);
}

TEST_CASE("analyze command matches the engine on the fixture") {
  dsl::ParseResult r = dsl::parse_document(read_file(fixtures_path()));
  REQUIRE(r.ok());
  cmd::CommandOptions opts;
  opts.functor = "pi";
  nlohmann::json report = cmd::run_command("analyze", *r.doc, opts);
  CHECK(cmd::exit_code_for(report) == 0);
  CHECK(report["witnesses"]["fibration"] == true);
  for (const auto& row : report["witnesses"]["arrows"]) {
    if (row["arrow"] == "h0") CHECK(row["cartesian"] == true);
    if (row["arrow"] == "vh") {
      CHECK(row["cartesian"] == false);
      CHECK(row["witness"]["object"] == "X1");
    }
  }
}

TEST_CASE("dualize and the full pipeline") {
  dsl::ParseResult r = dsl::parse_document(read_file(fixtures_path()));
  REQUIRE(r.ok());
  cmd::CommandOptions opts;
  opts.functor = "pi";
  std::string artifact;
  nlohmann::json report = cmd::run_command("dualize", *r.doc, opts, &artifact);
  CHECK(cmd::exit_code_for(report) == 0);
  REQUIRE(!artifact.empty());
  CHECK(report["witnesses"]["classification"].size() == 5);

  // The emitted dual reparses, revalidates, and its double dual verifies.
  dsl::ParseResult dual = dsl::parse_document(artifact);
  REQUIRE(dual.ok());
  cmd::CommandOptions opts2;
  nlohmann::json check2 = cmd::run_command("check", *dual.doc, opts2);
  CHECK(cmd::exit_code_for(check2) == 0);
  opts2.functor = "pi_star";
  nlohmann::json dd = cmd::run_command("doubledual", *dual.doc, opts2);
  CHECK(cmd::exit_code_for(dd) == 0);
}

TEST_CASE("glue command reproduces the identity restriction") {
  dsl::ParseResult r = dsl::parse_document(read_file(fixtures_path()));
  REQUIRE(r.ok());
  cmd::CommandOptions opts;
  opts.data = "G";
  std::string artifact;
  nlohmann::json report = cmd::run_command("glue", *r.doc, opts, &artifact);
  CHECK(cmd::exit_code_for(report) == 0);
  REQUIRE(!artifact.empty());
  // The glued functor is the identity on E: reparse it next to the corpus.
  std::string text = read_file(fixtures_path()) + "\n" + artifact;
  dsl::ParseResult merged = dsl::parse_document(text);
  REQUIRE(merged.ok());
  const dsl::FunctorDecl* glued = merged.doc->functor_decl("G_glued");
  REQUIRE(glued != nullptr);
  for (size_t i = 0; i < glued->fun.arr_map.size(); ++i)
    CHECK(glued->fun.arr_map[i] == static_cast<int>(i));
}

TEST_CASE("finset, jet, strength and vect commands run green on the corpus") {
  dsl::ParseResult r = dsl::parse_document(read_file(fixtures_path()));
  REQUIRE(r.ok());

  cmd::CommandOptions o1;
  o1.map = "collapse";
  o1.family = "Y1";
  CHECK(cmd::exit_code_for(cmd::run_command("finset-pullback", *r.doc, o1)) == 0);

  cmd::CommandOptions o2;
  o2.map = "collapse";
  o2.family = "X2";
  CHECK(cmd::exit_code_for(cmd::run_command("finset-pi", *r.doc, o2)) == 0);

  cmd::CommandOptions o3;
  o3.first = "f";
  o3.second = "g";
  nlohmann::json comp = cmd::run_command("finset-compose", *r.doc, o3);
  CHECK(cmd::exit_code_for(comp) == 0);

  cmd::CommandOptions o4;
  o4.relation = "chain3";
  o4.family = "E3";
  o4.comorphism = "jc";
  nlohmann::json jet = cmd::run_command("jet", *r.doc, o4);
  CHECK(cmd::exit_code_for(jet) == 0);

  for (const std::string name : {"identity", "square", "option", "power2", "const2"}) {
    cmd::CommandOptions so;
    so.builtin = name;
    so.max_size = 2;
    CHECK(cmd::exit_code_for(cmd::run_command("strength-check", *r.doc, so)) == 0);
  }

  cmd::CommandOptions o5;
  o5.builtin = "square";
  o5.d_size = 2;
  o5.b_size = 2;
  CHECK(cmd::exit_code_for(cmd::run_command("strength-flow", *r.doc, o5)) == 0);

  cmd::CommandOptions o6;
  o6.builtin = "square";
  o6.d_size = 2;
  o6.xi = "xi";
  CHECK(cmd::exit_code_for(cmd::run_command("strength-prolong", *r.doc, o6)) == 0);

  cmd::CommandOptions o7;
  o7.bundle = "V";
  CHECK(cmd::exit_code_for(cmd::run_command("vect-dagger", *r.doc, o7)) == 0);

  cmd::CommandOptions o8;
  o8.relation = "chain3";
  o8.field = 2;
  o8.map = "lip";
  nlohmann::json tangent = cmd::run_command("vect-tangent", *r.doc, o8);
  CHECK(cmd::exit_code_for(tangent) == 0);
  CHECK(tangent["witnesses"]["cotangent_dims"] == nlohmann::json({1, 2, 1}));
}

TEST_CASE("unknown commands and unresolved names exit with usage errors") {
  dsl::ParseResult r = dsl::parse_document("");
  REQUIRE(r.ok());
  cmd::CommandOptions opts;
  CHECK(cmd::exit_code_for(cmd::run_command("frobnicate", *r.doc, opts)) == 2);
  opts.functor = "nope";
  CHECK(cmd::exit_code_for(cmd::run_command("analyze", *r.doc, opts)) == 2);
}
