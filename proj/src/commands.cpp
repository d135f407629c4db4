#include "fibcat/commands.hpp"

#include <chrono>

#include "fibcat/dual.hpp"
#include "fibcat/generator.hpp"
#include "fibcat/glue.hpp"
#include "fibcat/strength.hpp"
#include "fibcat/vect.hpp"

namespace fibcat::cmd {

using nlohmann::json;

namespace {

struct Report {
  json j;
  std::chrono::steady_clock::time_point start;

  explicit Report(const std::string& command) : start(std::chrono::steady_clock::now()) {
    j["schema_version"] = 1;
    j["command"] = command;
    j["verdicts"] = json::array();
    j["witnesses"] = json::object();
  }

  void verdict(const std::string& name, bool pass, const std::string& detail = "") {
    json v;
    v["name"] = name;
    v["pass"] = pass;
    if (!detail.empty()) v["detail"] = detail;
    j["verdicts"].push_back(v);
  }

  void usage(const std::string& message) {
    j["usage_error"] = message;
  }

  json finish() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    j["timing_ms"] = static_cast<long long>(ms);
    return j;
  }
};

json finfunction_json(const FinFunction& f) {
  return json{{"dom", f.dom_size}, {"cod", f.cod_size}, {"values", f.values}};
}

json matrix_json(const Matrix& m) {
  return json{{"rows", m.rows}, {"cols", m.cols}, {"entries", m.entries}};
}

const char* classify_name(DualArrowClass c) {
  switch (c) {
    case DualArrowClass::vertical: return "vertical";
    case DualArrowClass::cartesian: return "cartesian";
    case DualArrowClass::both: return "both";
    default: return "neither";
  }
}

void cmd_check(Report& r, const dsl::Document& doc, const CommandOptions& opts) {
  for (const auto& c : doc.categories) {
    ValidationReport v = validate_category(c->cat);
    r.verdict("category/" + c->name, v.pass, v.pass ? "" : v.rule);
  }
  for (const auto& f : doc.functors) {
    ValidationReport v = validate_functor(f->fun);
    r.verdict("functor/" + f->name, v.pass, v.pass ? "" : v.rule);
  }
  for (const auto& g : doc.gluedata) {
    ValidationReport v = verify_glue_conditions(g->data);
    r.verdict("gluedata/" + g->name, v.pass, v.pass ? "" : v.rule);
  }

  // A small randomized factorization suite, deterministic under --seed.
  std::mt19937_64 rng(opts.seed);
  int failures = 0, instances = 10;
  for (int i = 0; i < instances; ++i) {
    GeneratedFibration g = generate_fibration(rng);
    CleavageBuild cb = make_cleavage(g.pi);
    if (!cb.cleavage) {
      ++failures;
      continue;
    }
    for (ArrowId z = 0; z < g.total->n_arrows(); ++z) {
      VhPair p = vh_factorize(g.pi, *cb.cleavage, z);
      if (p.composite() != z) ++failures;
    }
  }
  r.verdict("random-fibrations", failures == 0,
            std::to_string(instances) + " instances, " + std::to_string(failures) +
                " failures");
  r.j["witnesses"]["random_instances"] = instances;
}

void cmd_analyze(Report& r, const dsl::Document& doc, const CommandOptions& opts) {
  const dsl::FunctorDecl* fd = doc.functor_decl(opts.functor);
  if (!fd) {
    r.usage("unknown functor '" + opts.functor + "'");
    return;
  }
  const dsl::CategoryDecl* src = doc.category(fd->source);
  const dsl::CategoryDecl* dst = doc.category(fd->target);
  ValidationReport v = validate_functor(fd->fun);
  r.verdict("functor-valid", v.pass, v.pass ? "" : v.rule);
  if (!v.pass) return;

  json table = json::array();
  for (ArrowId f = 0; f < src->cat.n_arrows(); ++f) {
    CartesianCheck cc = is_cartesian(fd->fun, f);
    json row;
    row["arrow"] = src->arrow_names[f];
    row["vertical"] = is_vertical(fd->fun, f);
    row["cartesian"] = cc.value;
    row["precartesian"] = is_precartesian(fd->fun, f, PreSide::cartesian).value;
    row["precocartesian"] = is_precartesian(fd->fun, f, PreSide::cocartesian).value;
    if (!cc.value && cc.witness) {
      row["witness"]["base_arrow"] = dst->arrow_names[cc.witness->xi];
      row["witness"]["object"] = src->obj_names[cc.witness->Z];
    }
    table.push_back(row);
  }
  r.j["witnesses"]["arrows"] = table;

  CleavageBuild cb = make_cleavage(fd->fun);
  r.j["witnesses"]["fibration"] = cb.cleavage.has_value();
  if (cb.cleavage) {
    json cl = json::array();
    for (ArrowId alpha = 0; alpha < dst->cat.n_arrows(); ++alpha)
      for (ObjId Y = 0; Y < src->cat.n_objects; ++Y) {
        ArrowId lift = cb.cleavage->at(alpha, Y);
        if (lift == kNone) continue;
        cl.push_back(json{{"base_arrow", dst->arrow_names[alpha]},
                          {"object", src->obj_names[Y]},
                          {"lift", src->arrow_names[lift]}});
      }
    r.j["witnesses"]["cleavage"] = cl;
  } else {
    r.j["witnesses"]["missing_lift"] =
        json{{"base_arrow", dst->arrow_names[cb.missing_alpha]},
             {"object", src->obj_names[cb.missing_Y]}};
  }
}

void cmd_dualize(Report& r, const dsl::Document& doc, const CommandOptions& opts,
                 std::string* artifact) {
  const dsl::FunctorDecl* fd = doc.functor_decl(opts.functor);
  if (!fd) {
    r.usage("unknown functor '" + opts.functor + "'");
    return;
  }
  const dsl::CategoryDecl* src = doc.category(fd->source);
  const dsl::CategoryDecl* dst = doc.category(fd->target);
  ValidationReport v = validate_functor(fd->fun);
  r.verdict("functor-valid", v.pass, v.pass ? "" : v.rule);
  if (!v.pass) return;

  CleavageBuild cb = make_cleavage(fd->fun);
  r.verdict("is-fibration", cb.cleavage.has_value(),
            cb.cleavage ? ""
                        : "NotAFibration: no Cartesian lift over " +
                              dst->arrow_names[cb.missing_alpha] + " with codomain " +
                              src->obj_names[cb.missing_Y]);
  if (!cb.cleavage) return;

  DualFibration dual = build_dual(fd->fun, *cb.cleavage);
  ValidationReport vc = validate_category(*dual.category);
  ValidationReport vf = validate_functor(dual.projection);
  r.verdict("dual-category-valid", vc.pass, vc.pass ? "" : vc.rule);
  r.verdict("dual-projection-valid", vf.pass, vf.pass ? "" : vf.rule);

  dsl::CategoryReindex re =
      dsl::decl_from_category(src->name + "_star", *dual.category, &src->obj_names);

  bool classify_ok = true;
  json table = json::array();
  for (int g = 0; g < dual.category->n_arrows(); ++g) {
    DualArrowClass cls = classify_dual_arrow(dual, g);
    bool brute = is_cartesian(dual.projection, g).value;
    bool rep = cls == DualArrowClass::cartesian || cls == DualArrowClass::both;
    classify_ok = classify_ok && (rep == brute);
    table.push_back(json{{"arrow", re.decl->arrow_names[re.arrow_to_decl[g]]},
                         {"class", classify_name(cls)},
                         {"representatives",
                          static_cast<int>(dual.classes[g].representatives.size())}});
  }
  r.verdict("classification-matches-brute-force", classify_ok);
  r.j["witnesses"]["classification"] = table;

  // Emitted document: the base category, the dual and its projection.
  dsl::Document out;
  auto base_copy = std::make_unique<dsl::CategoryDecl>(*dst);
  out.categories.push_back(std::move(base_copy));
  auto fun = std::make_unique<dsl::FunctorDecl>();
  fun->name = fd->name + "_star";
  fun->source = re.decl->name;
  fun->target = dst->name;
  fun->fun.source = &re.decl->cat;
  fun->fun.target = &out.categories[0]->cat;
  fun->fun.obj_map = dual.projection.obj_map;
  fun->fun.arr_map.assign(dual.category->n_arrows(), kNone);
  for (int g = 0; g < dual.category->n_arrows(); ++g)
    fun->fun.arr_map[re.arrow_to_decl[g]] = dual.projection.arr_map[g];
  out.categories.push_back(std::move(re.decl));
  out.functors.push_back(std::move(fun));
  std::string text = dsl::emit_document(out);
  r.j["witnesses"]["dual_document"] = text;
  if (artifact) *artifact = text;
}

void cmd_doubledual(Report& r, const dsl::Document& doc, const CommandOptions& opts) {
  const dsl::FunctorDecl* fd = doc.functor_decl(opts.functor);
  if (!fd) {
    r.usage("unknown functor '" + opts.functor + "'");
    return;
  }
  const dsl::CategoryDecl* src = doc.category(fd->source);
  ValidationReport v = validate_functor(fd->fun);
  r.verdict("functor-valid", v.pass, v.pass ? "" : v.rule);
  if (!v.pass) return;
  CleavageBuild cb = make_cleavage(fd->fun);
  r.verdict("is-fibration", cb.cleavage.has_value());
  if (!cb.cleavage) return;

  DoubleDual dd = double_dual_iso(fd->fun, *cb.cleavage);
  r.verdict("double-dual-iso", dd.verification.pass,
            dd.verification.pass ? "" : dd.verification.rule);
  if (!dd.verification.pass) return;

  dsl::CategoryReindex re = dsl::decl_from_category(src->name + "_star_star",
                                                    *dd.double_dual.category,
                                                    &src->obj_names);
  json table = json::array();
  for (ArrowId f = 0; f < src->cat.n_arrows(); ++f)
    table.push_back(json{{"arrow", src->arrow_names[f]},
                         {"image", re.decl->arrow_names[re.arrow_to_decl[dd.y.arr_map[f]]]}});
  r.j["witnesses"]["arrow_bijection"] = table;
}

void cmd_glue(Report& r, const dsl::Document& doc, const CommandOptions& opts,
              std::string* artifact) {
  const dsl::GlueDataDecl* gd = doc.gluedata_decl(opts.data);
  if (!gd) {
    r.usage("unknown gluedata '" + opts.data + "'");
    return;
  }
  const dsl::FunctorDecl* pi = doc.functor_decl(gd->fibration);
  const dsl::CategoryDecl* src = doc.category(pi->source);
  const dsl::CategoryDecl* target = doc.category(gd->target);

  ValidationReport cond = verify_glue_conditions(gd->data);
  std::string detail;
  if (!cond.pass) {
    detail = cond.rule;
    if (!cond.witness.empty()) {
      detail += " at";
      for (int w : cond.witness) detail += " " + src->arrow_names[w];
    }
  }
  r.verdict("glue-conditions", cond.pass, detail);
  CleavageBuild cb = make_cleavage(pi->fun);
  r.verdict("is-fibration", cb.cleavage.has_value());
  if (!cond.pass || !cb.cleavage) return;

  CatFunctor glued = glue_functor(gd->data, *cb.cleavage);
  r.verdict("glued-functor-valid", validate_functor(glued).pass);
  std::string text = dsl::emit_functor_block(gd->name + "_glued", *src, *target,
                                             glued.obj_map, glued.arr_map);
  r.j["witnesses"]["functor_document"] = text;
  if (artifact) *artifact = text;
}

void cmd_finset_pullback(Report& r, const dsl::Document& doc, const CommandOptions& opts) {
  const dsl::FinMapDecl* m = doc.finmap(opts.map);
  const dsl::FamilyDecl* y = doc.family(opts.family);
  if (!m || !y) {
    r.usage("finset pullback needs --map and --family");
    return;
  }
  if (m->fn.cod_size != y->bundle.base_size) {
    r.verdict("sizes-compatible", false, "cod of map != base of family");
    return;
  }
  r.verdict("sizes-compatible", true);
  PullbackResult pb = pullback(m->fn, y->bundle);
  r.j["witnesses"]["fibers"] = pb.bundle.fibers;
  r.j["witnesses"]["total"] = pb.bundle.total();
  json comps = json::array();
  for (const FinFunction& c : pb.to_target.components) comps.push_back(finfunction_json(c));
  r.j["witnesses"]["projection_components"] = comps;
}

void cmd_finset_pi(Report& r, const dsl::Document& doc, const CommandOptions& opts) {
  const dsl::FinMapDecl* m = doc.finmap(opts.map);
  const dsl::FamilyDecl* x = doc.family(opts.family);
  if (!m || !x) {
    r.usage("finset pi needs --map and --family");
    return;
  }
  if (m->fn.dom_size != x->bundle.base_size) {
    r.verdict("sizes-compatible", false, "dom of map != base of family");
    return;
  }
  r.verdict("sizes-compatible", true);
  PiResult pi = pi_along(m->fn, x->bundle);
  r.j["witnesses"]["fibers"] = pi.bundle.fibers;
  json counit = json::array();
  for (const FinFunction& c : pi.counit.components) counit.push_back(finfunction_json(c));
  r.j["witnesses"]["counit_components"] = counit;

  // Triangle identities as a gating verdict.
  bool tri = transpose_to_pi(m->fn, pi.bundle, x->bundle, pi.counit) ==
             identity_family_map(pi.bundle);
  tri = tri && transpose_from_pi(m->fn, pi.bundle, x->bundle,
                                 identity_family_map(pi.bundle)) == pi.counit;
  r.verdict("adjunction-triangles", tri);
}

void cmd_finset_compose(Report& r, const dsl::Document& doc, const CommandOptions& opts) {
  const dsl::ComorphismDecl* f = doc.comorphism(opts.first);
  const dsl::ComorphismDecl* g = doc.comorphism(opts.second);
  if (!f || !g) {
    r.usage("finset compose needs --first and --second comorphisms");
    return;
  }
  if (f->to != g->from) {
    r.verdict("composable", false, "target family of first != source family of second");
    return;
  }
  r.verdict("composable", true);
  FamilyComorphism h = compose_family_comorphisms(f->com, g->com);

  const dsl::FamilyDecl* x = doc.family(f->from);
  const dsl::FamilyDecl* y = doc.family(f->to);
  const dsl::FamilyDecl* z = doc.family(g->to);
  FamilyComorphism oracle =
      compose_comorphisms_by_spans(f->com, g->com, x->bundle, y->bundle, z->bundle);
  r.verdict("span-oracle-agrees", h == oracle);

  r.j["witnesses"]["base_map"] = finfunction_json(h.base_map);
  json comps = json::array();
  for (const FinFunction& c : h.components) comps.push_back(finfunction_json(c));
  r.j["witnesses"]["components"] = comps;
}

void cmd_jet(Report& r, const dsl::Document& doc, const CommandOptions& opts) {
  const dsl::RelationDecl* rel = doc.relation(opts.relation);
  const dsl::FamilyDecl* fam = doc.family(opts.family);
  if (!rel || !fam) {
    r.usage("jet needs --relation and --family");
    return;
  }
  if (rel->rel.base_size != fam->bundle.base_size) {
    r.verdict("base-match", false);
    return;
  }
  r.verdict("base-match", true);

  JetBundle j = jet_object(rel->rel, fam->bundle);
  bool count_law = true;
  for (int b = 0; b < rel->rel.base_size; ++b) {
    long long prod = 1;
    for (int bp : rel->rel.neighbors(b)) prod *= fam->bundle.fibers[bp];
    count_law = count_law && j.bundle.fibers[b] == prod;
  }
  r.verdict("count-law", count_law);

  RelationSpans sp = relation_spans(rel->rel);
  PiResult oracle = pi_along(sp.d, pullback(sp.c, fam->bundle).bundle);
  r.verdict("dependent-product-oracle", oracle.bundle == j.bundle);

  json fibers = json::array();
  for (int b = 0; b < rel->rel.base_size; ++b) {
    json row;
    row["base_point"] = b;
    row["neighbors"] = rel->rel.neighbors(b);
    row["sections"] = j.bundle.fibers[b];
    fibers.push_back(row);
  }
  r.j["witnesses"]["fibers"] = fibers;

  if (!opts.comorphism.empty()) {
    const dsl::ComorphismDecl* cd = doc.comorphism(opts.comorphism);
    const dsl::RelationDecl* rel2 =
        opts.relation2.empty() ? rel : doc.relation(opts.relation2);
    if (!cd || !rel2) {
      r.usage("jet --comorphism needs a known comorphism (and --relation2)");
      return;
    }
    RelationCheck rc = relation_preserved(rel->rel, rel2->rel, cd->com.base_map);
    r.verdict("relation-preserved", rc.preserved,
              rc.preserved ? ""
                           : "violating pair (" + std::to_string(rc.violation.first) +
                                 ", " + std::to_string(rc.violation.second) + ")");
    if (!rc.preserved) return;
    const dsl::FamilyDecl* from = doc.family(cd->from);
    const dsl::FamilyDecl* to = doc.family(cd->to);
    FamilyComorphism jf =
        jet_comorphism(rel->rel, rel2->rel, cd->com, from->bundle, to->bundle);
    json comps = json::array();
    for (const FinFunction& c : jf.components) comps.push_back(finfunction_json(c));
    r.j["witnesses"]["jet_comorphism"] = comps;

    FamilyComorphism idj = jet_comorphism(rel->rel, rel->rel,
                                          identity_comorphism(from->bundle),
                                          from->bundle, from->bundle);
    r.verdict("preserves-identities",
              idj == identity_comorphism(jet_object(rel->rel, from->bundle).bundle));
  }
}

struct BuiltinStrength {
  FinEndofunctor functor;
  std::optional<BundleFunctor> bundle;
  StrengthData strength;
};

std::optional<BuiltinStrength> resolve_builtin(const std::string& name) {
  BuiltinStrength out;
  if (name == "identity") {
    out.bundle = identity_bundle_functor();
    out.functor = out.bundle->f0;
    out.strength = zero_section_strength(*out.bundle, identity_section());
    return out;
  }
  if (name == "square") {
    out.bundle = square_bundle_functor();
    out.functor = out.bundle->f0;
    out.strength = zero_section_strength(*out.bundle, diagonal_section());
    return out;
  }
  if (name == "option") {
    out.functor = option_endofunctor();
    out.strength = option_strength();
    return out;
  }
  if (name.rfind("power", 0) == 0) {
    int d = std::atoi(name.c_str() + 5);
    if (d < 1 || d > 4) return std::nullopt;
    out.bundle = power_bundle_functor(d);
    out.functor = out.bundle->f0;
    out.strength = zero_section_strength(*out.bundle, constant_function_section(d));
    return out;
  }
  if (name.rfind("const", 0) == 0) {
    int k = std::atoi(name.c_str() + 5);
    if (k < 1 || k > 4) return std::nullopt;
    out.bundle = constant_bundle_functor(k);
    out.functor = out.bundle->f0;
    out.strength = strength_from_cartesian(*out.bundle);
    return out;
  }
  return std::nullopt;
}

void cmd_strength_check(Report& r, const CommandOptions& opts) {
  auto b = resolve_builtin(opts.builtin);
  if (!b) {
    r.usage("unknown built-in functor '" + opts.builtin + "'");
    return;
  }
  ValidationReport v = check_tensorial_strength(b->functor, b->strength, opts.max_size);
  r.verdict("strength-laws", v.pass, v.pass ? "" : v.rule);
  if (!v.pass) r.j["witnesses"]["failing_instance"] = v.witness;
  if (b->bundle) {
    ValidationReport br = tensorial_fibrational_bridge(*b->bundle, b->strength,
                                                       opts.max_size);
    r.verdict("fibrational-bridge", br.pass, br.pass ? "" : br.rule);
  }
}

void cmd_strength_flow(Report& r, const CommandOptions& opts) {
  auto b = resolve_builtin(opts.builtin);
  if (!b) {
    r.usage("unknown built-in functor '" + opts.builtin + "'");
    return;
  }
  FinFunction lam = flow_transform(b->functor, b->strength, opts.d_size, opts.b_size);
  r.j["witnesses"]["lambda"] = finfunction_json(lam);

  FinFunction lam1 = flow_transform(b->functor, b->strength, 1, opts.b_size);
  r.verdict("unit-identity", lam1 == FinFunction::identity(b->functor.size0(opts.b_size)));
  FinFunction lhs = lam.then(eval_at(opts.d_size, b->functor.size0(opts.b_size), 0));
  r.verdict("bundle-condition", lhs == b->functor.map0(eval_at(opts.d_size, opts.b_size, 0)));
}

void cmd_strength_prolong(Report& r, const dsl::Document& doc, const CommandOptions& opts) {
  auto b = resolve_builtin(opts.builtin);
  if (!b) {
    r.usage("unknown built-in functor '" + opts.builtin + "'");
    return;
  }
  const dsl::FinMapDecl* xi = doc.finmap(opts.xi);
  if (!xi) {
    r.usage("strength prolong needs --xi naming a finmap");
    return;
  }
  int m = xi->fn.dom_size;
  bool is_section = xi->fn.cod_size == exp_size(m, opts.d_size) &&
                    xi->fn.then(eval_at(opts.d_size, m, 0)) == FinFunction::identity(m);
  r.verdict("xi-is-section", is_section);
  if (!is_section) return;
  FinFunction pr = prolong_field(b->functor, b->strength, opts.d_size, xi->fn);
  int fm = b->functor.size0(m);
  r.verdict("prolonged-is-section",
            pr.then(eval_at(opts.d_size, fm, 0)) == FinFunction::identity(fm));
  r.j["witnesses"]["prolonged"] = finfunction_json(pr);
}

void cmd_vect_dagger(Report& r, const dsl::Document& doc, const CommandOptions& opts) {
  const dsl::VectBundleDecl* v = doc.vectbundle(opts.bundle);
  if (!v) {
    r.usage("vect dagger needs --bundle");
    return;
  }
  FinVectorBundle dual = dagger_object(v->bundle);
  r.verdict("dagger-computed", true);
  r.j["witnesses"]["dims"] = dual.dims;
  r.j["witnesses"]["field"] = dual.field_order;
  json elems = json::array();
  for (int a = 0; a < dual.base_size; ++a) elems.push_back(dual.fiber_elems(a));
  r.j["witnesses"]["fiber_elements"] = elems;
}

void cmd_vect_tangent(Report& r, const dsl::Document& doc, const CommandOptions& opts) {
  const dsl::RelationDecl* rel = doc.relation(opts.relation);
  if (!rel) {
    r.usage("vect tangent needs --relation");
    return;
  }
  TangentData t = tangent_from_omega(rel->rel, opts.field);
  r.verdict("tangent-computed", true);
  r.j["witnesses"]["cotangent_dims"] = t.cotangent.dims;
  r.j["witnesses"]["tangent_dims"] = t.tangent.dims;

  if (!opts.map.empty()) {
    const dsl::FinMapDecl* m = doc.finmap(opts.map);
    const dsl::RelationDecl* rel2 =
        opts.relation2.empty() ? rel : doc.relation(opts.relation2);
    if (!m || !rel2) {
      r.usage("vect tangent --map needs a known finmap (and --relation2)");
      return;
    }
    RelationCheck rc = relation_preserved(rel->rel, rel2->rel, m->fn);
    r.verdict("relation-preserved", rc.preserved);
    if (!rc.preserved) return;
    LinearComorphism ct = cotangent_comorphism(rel->rel, rel2->rel, m->fn, opts.field);
    LinearBundleMap tn = tangent_map(rel->rel, rel2->rel, m->fn, opts.field);
    json cm = json::array(), tm = json::array();
    for (const Matrix& mat : ct.mats) cm.push_back(matrix_json(mat));
    for (const Matrix& mat : tn.mats) tm.push_back(matrix_json(mat));
    r.j["witnesses"]["cotangent_matrices"] = cm;
    r.j["witnesses"]["tangent_matrices"] = tm;
    r.verdict("transpose-roundtrip", reverse_dagger(dagger_morphism(tn)) == tn);
  }
}

}  // namespace

json run_command(const std::string& command, const dsl::Document& doc,
                 const CommandOptions& opts, std::string* artifact) {
  Report r(command);
  try {
    if (command == "check") {
      cmd_check(r, doc, opts);
    } else if (command == "analyze") {
      cmd_analyze(r, doc, opts);
    } else if (command == "dualize") {
      cmd_dualize(r, doc, opts, artifact);
    } else if (command == "doubledual") {
      cmd_doubledual(r, doc, opts);
    } else if (command == "glue") {
      cmd_glue(r, doc, opts, artifact);
    } else if (command == "finset-pullback") {
      cmd_finset_pullback(r, doc, opts);
    } else if (command == "finset-pi") {
      cmd_finset_pi(r, doc, opts);
    } else if (command == "finset-compose") {
      cmd_finset_compose(r, doc, opts);
    } else if (command == "jet") {
      cmd_jet(r, doc, opts);
    } else if (command == "strength-check") {
      cmd_strength_check(r, opts);
    } else if (command == "strength-flow") {
      cmd_strength_flow(r, opts);
    } else if (command == "strength-prolong") {
      cmd_strength_prolong(r, doc, opts);
    } else if (command == "vect-dagger") {
      cmd_vect_dagger(r, doc, opts);
    } else if (command == "vect-tangent") {
      cmd_vect_tangent(r, doc, opts);
    } else {
      r.usage("unknown command '" + command + "'");
    }
  } catch (const std::exception& e) {
    r.verdict("exception-free", false, e.what());
  }
  return r.finish();
}

int exit_code_for(const json& report) {
  if (report.contains("usage_error")) return 2;
  for (const auto& v : report["verdicts"])
    if (!v["pass"].get<bool>()) return 1;
  return 0;
}

}  // namespace fibcat::cmd
