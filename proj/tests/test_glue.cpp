#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fibcat/fixtures.hpp"
#include "fibcat/generator.hpp"
#include "fibcat/glue.hpp"

using namespace fibcat;
namespace fx = fibcat::fixtures;

TEST_CASE("restricting the identity functor glues back to the identity") {
  auto w = fx::walking_fibration();
  CatFunctor id = identity_functor(*w.total);
  GlueData d = restrict_functor(w.pi, id, *w.total, &w.pi);
  CHECK(verify_glue_conditions(d).pass);
  Cleavage c = *make_cleavage(w.pi).cleavage;
  CatFunctor glued = glue_functor(d, c);
  CHECK(same_functor(glued, id));
}

TEST_CASE("restrict-then-glue round trips arbitrary functors") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    GeneratedFibration g = generate_fibration(rng);
    Cleavage c = *make_cleavage(g.pi).cleavage;

    // The projection itself, as a functor over the base via id_B.
    CatFunctor idB = identity_functor(*g.base);
    GlueData dp = restrict_functor(g.pi, g.pi, *g.base, &idB);
    REQUIRE(verify_glue_conditions(dp).pass);
    CHECK(same_functor(glue_functor(dp, c), g.pi));

    // A random iso relabel of the total category.
    RelabeledCategory rel = random_relabel(*g.total, rng);
    GlueData dr = restrict_functor(g.pi, rel.iso, *rel.cat);
    REQUIRE(verify_glue_conditions(dr).pass);
    CHECK(same_functor(glue_functor(dr, c), rel.iso));
  }
}

TEST_CASE("gluing is independent of the cleavage") {
  std::mt19937_64 rng(29);
  int observed_difference = 0;
  for (int trial = 0; trial < 30; ++trial) {
    GeneratedFibration g = generate_fibration(rng);
    Cleavage lo = *make_cleavage(g.pi).cleavage;
    Cleavage hi = *make_cleavage(g.pi, true).cleavage;
    if (lo.choice != hi.choice) ++observed_difference;

    RelabeledCategory rel = random_relabel(*g.total, rng);
    GlueData d = restrict_functor(g.pi, rel.iso, *rel.cat);
    REQUIRE(verify_glue_conditions(d).pass);
    CHECK(same_functor(glue_functor(d, lo), glue_functor(d, hi)));
  }
  // The generator must sometimes produce genuinely distinct cleavages, or
  // the property above is vacuous.
  CHECK(observed_difference > 0);
}

TEST_CASE("collapse into a one-object target") {
  auto w = fx::walking_fibration();
  FiniteCategory pt = fx::terminal_category();
  GlueData d;
  d.pi = &w.pi;
  d.target = &pt;
  d.obj_map = {0, 0, 0};
  d.vert_map = {0, 0, 0, 0, kNone, kNone};
  d.cart_map = {0, 0, 0, kNone, 0, kNone};
  CHECK(verify_glue_conditions(d).pass);
  Cleavage c = *make_cleavage(w.pi).cleavage;
  CatFunctor F = glue_functor(d, c);
  // F(v.h0) = F_a(v).Fbar(h0), hand-evaluated: everything collapses.
  for (ArrowId f = 0; f < w.total->n_arrows(); ++f) CHECK(F.arr_map[f] == 0);
}

TEST_CASE("condition-4 mutation is detected with an explicit square") {
  auto w = fx::parallel_pair_fibration();
  CatFunctor id = identity_functor(*w.total);
  GlueData d = restrict_functor(w.pi, id, *w.total, &w.pi);
  REQUIRE(verify_glue_conditions(d).pass);

  // Swapping the fiberwise images of the parallel verticals keeps each part
  // functorial (they never compose with each other) and touches no vertical
  // Cartesian, so only the square v0.hQ1 = hP0.w0 can notice.
  GlueData bad = d;
  bad.vert_map[w.v0] = w.v1;
  bad.vert_map[w.v1] = w.v0;
  ValidationReport r = verify_glue_conditions(bad);
  CHECK_FALSE(r.pass);
  CHECK(r.rule == "condition-4");
  CHECK(r.witness.size() == 4);
}

TEST_CASE("a Cartesian-part mutation that survives all checks is a functor") {
  // On the involution fixture, swapping Fbar on the parallel Cartesians h1
  // and z together with the identity fiberwise part satisfies every glue
  // condition: it is the restriction of the conjugation automorphism, and
  // gluing recovers exactly that functor.
  auto w = fx::involution_fibration();
  CatFunctor id = identity_functor(*w.total);
  GlueData d = restrict_functor(w.pi, id, *w.total, &w.pi);
  d.cart_map[w.h1] = w.z;
  d.cart_map[w.z] = w.h1;
  CHECK(verify_glue_conditions(d).pass);
  Cleavage c = *make_cleavage(w.pi).cleavage;
  CatFunctor g = glue_functor(d, c);
  CHECK(g.arr_map[w.h1] == w.z);
  CHECK(g.arr_map[w.t] == w.t);
  CHECK(validate_functor(g).pass);
}

TEST_CASE("condition-3 mutation is detected") {
  auto w = fx::involution_fibration();
  CatFunctor id = identity_functor(*w.total);
  GlueData d = restrict_functor(w.pi, id, *w.total, &w.pi);

  GlueData bad = d;
  bad.cart_map[w.t] = w.id_X1;  // t is vertical Cartesian; parts now disagree
  ValidationReport r = verify_glue_conditions(bad);
  CHECK_FALSE(r.pass);
  // Either caught as the parts disagreeing or as a broken square, depending
  // on check order; both name the defect.
  CHECK((r.rule == "condition-3" || r.rule == "cartesian/composition"));
}

TEST_CASE("uniqueness: the glued functor is the only extension of its data") {
  auto w = fx::walking_fibration();
  CatFunctor id = identity_functor(*w.total);
  GlueData d = restrict_functor(w.pi, id, *w.total);
  Cleavage c = *make_cleavage(w.pi).cleavage;
  CatFunctor glued = glue_functor(d, c);
  int extensions = 0;
  for (const CatFunctor& F : all_functors(*w.total, *w.total)) {
    bool agrees = F.obj_map == d.obj_map;
    for (ArrowId f = 0; agrees && f < w.total->n_arrows(); ++f) {
      if (d.vert_map[f] != kNone && F.arr_map[f] != d.vert_map[f]) agrees = false;
      if (d.cart_map[f] != kNone && F.arr_map[f] != d.cart_map[f]) agrees = false;
    }
    if (agrees) {
      ++extensions;
      CHECK(same_functor(F, glued));
    }
  }
  CHECK(extensions == 1);
}

TEST_CASE("extract_comparison: identity functor gives identity comparisons") {
  auto w = fx::walking_fibration();
  Cleavage c = *make_cleavage(w.pi).cleavage;
  CatFunctor id = identity_functor(*w.total);
  ComparisonFamily fam = extract_comparison(id, w.pi, c, w.pi, c);
  CHECK(fam.naturality.pass);
  for (ArrowId alpha = 0; alpha < w.base->n_arrows(); ++alpha)
    for (ObjId X = 0; X < w.total->n_objects; ++X) {
      ArrowId v = fam.at(alpha, X, w.total->n_objects);
      if (v == kNone) continue;
      CHECK(w.total->is_identity(v));
    }
}

TEST_CASE("extract_comparison: collapsing a Cartesian arrow") {
  auto w = fx::walking_fibration();
  Cleavage c = *make_cleavage(w.pi).cleavage;

  // F sends X1 to X0 and h0 to vh: a functor over W2 that does not preserve
  // Cartesian arrows.
  CatFunctor F;
  F.source = w.total.get();
  F.target = w.total.get();
  F.obj_map = {w.X0, w.X0, w.Y0};
  F.arr_map = {w.id_X0, w.id_X0, w.id_Y0, w.id_X0, w.vh, w.vh};
  REQUIRE(validate_functor(F).pass);

  ComparisonFamily fam = extract_comparison(F, w.pi, c, w.pi, c);
  CHECK(fam.naturality.pass);
  ArrowId vc = fam.at(w.u, w.Y0, w.total->n_objects);
  CHECK(vc == w.v);
  CHECK_FALSE(inverse(*w.total, vc).has_value());

  // A Cartesian-preserving functor has invertible comparisons throughout.
  std::mt19937_64 rng(31);
  GeneratedFibration g = generate_fibration(rng);
  Cleavage cg = *make_cleavage(g.pi).cleavage;
  CatFunctor idg = identity_functor(*g.total);
  ComparisonFamily famg = extract_comparison(idg, g.pi, cg, g.pi, cg);
  CHECK(famg.naturality.pass);
  for (size_t i = 0; i < famg.entries.size(); ++i)
    if (famg.entries[i] != kNone) CHECK(inverse(*g.total, famg.entries[i]).has_value());
}
