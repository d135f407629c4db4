#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fibcat/core.hpp"
#include "fibcat/fixtures.hpp"

using namespace fibcat;
namespace fx = fibcat::fixtures;

TEST_CASE("category axioms on the stock fixtures") {
  CHECK(validate_category(fx::terminal_category()).pass);
  CHECK(validate_category(fx::walking_arrow()).pass);
  CHECK(validate_category(fx::chain_poset(3)).pass);
  CHECK(validate_category(fx::diamond_poset()).pass);
  auto w = fx::walking_fibration();
  CHECK(validate_category(*w.total).pass);
}

TEST_CASE("unit-law mutation is caught") {
  FiniteCategory w2 = fx::walking_arrow();
  // remap comp(u, id_b) to id_a
  w2.set_comp(2, 1, 0);
  ValidationReport r = validate_category(w2);
  CHECK_FALSE(r.pass);
  CHECK(r.rule == "unit-law");
}

TEST_CASE("structural errors are distinct from axiom failures") {
  FiniteCategory w2 = fx::walking_arrow();
  w2.arrows[2].cod = 7;
  ValidationReport r = validate_category(w2);
  CHECK_FALSE(r.pass);
  CHECK(r.rule.substr(0, 10) == "structure/");
}

TEST_CASE("functor laws") {
  auto w = fx::walking_fibration();
  FiniteCategory w2 = fx::walking_arrow();
  CatFunctor id = identity_functor(w2);
  CHECK(validate_functor(id).pass);
  CHECK(validate_functor(w.pi).pass);

  CatFunctor broken = w.pi;
  broken.arr_map[w.h0] = w.id_a;
  ValidationReport r = validate_functor(broken);
  CHECK_FALSE(r.pass);
  CHECK(r.rule == "functor/endpoints");
}

TEST_CASE("hom_over on the fixture fibration") {
  auto w = fx::walking_fibration();
  HomSet hs = hom_over(w.pi, w.u, w.X1, w.Y0);
  CHECK(hs.members == std::vector<ArrowId>{w.h0});
  CHECK(hom_over(w.pi, w.u, w.X0, w.Y0).members == std::vector<ArrowId>{w.vh});

  auto t = fx::identity_fibration(fx::terminal_category());
  CHECK(hom_over(t.pi, 0, 0, 0).members == std::vector<ArrowId>{0});

  CHECK_THROWS_AS(hom_over(w.pi, w.u, w.Y0, w.X0), std::invalid_argument);
}

TEST_CASE("hom_over partitions the arrows of the total category") {
  auto w = fx::walking_fibration();
  const FiniteCategory& base = *w.base;
  const FiniteCategory& total = *w.total;
  int counted = 0;
  for (ArrowId alpha = 0; alpha < base.n_arrows(); ++alpha)
    for (ObjId X = 0; X < total.n_objects; ++X)
      for (ObjId Y = 0; Y < total.n_objects; ++Y) {
        if (w.pi.obj_map[X] != base.dom(alpha) || w.pi.obj_map[Y] != base.cod(alpha))
          continue;
        counted += static_cast<int>(hom_over(w.pi, alpha, X, Y).members.size());
      }
  CHECK(counted == total.n_arrows());
}

TEST_CASE("composition closure across hom_over sets") {
  auto w = fx::walking_fibration();
  const FiniteCategory& base = *w.base;
  const FiniteCategory& total = *w.total;
  for (ArrowId f = 0; f < total.n_arrows(); ++f)
    for (ArrowId g = 0; g < total.n_arrows(); ++g) {
      if (!total.composable(f, g)) continue;
      ArrowId fg = total.compose(f, g);
      ArrowId ab = base.compose(w.pi.arr_map[f], w.pi.arr_map[g]);
      CHECK(w.pi.arr_map[fg] == ab);
      auto hs = hom_over(w.pi, ab, total.dom(f), total.cod(g));
      bool found = false;
      for (ArrowId m : hs.members) found = found || m == fg;
      CHECK(found);
    }
}

TEST_CASE("fibers of the fixture fibration") {
  auto w = fx::walking_fibration();
  FiberCategory fa = fiber(w.pi, w.a);
  CHECK(fa.cat.n_objects == 2);
  CHECK(fa.cat.n_arrows() == 3);
  CHECK(validate_category(fa.cat).pass);
  CHECK(fa.obj_embed == std::vector<ObjId>{w.X0, w.X1});

  FiberCategory fb = fiber(w.pi, w.b);
  CHECK(fb.cat.n_objects == 1);
  CHECK(fb.cat.n_arrows() == 1);
  CHECK(fb.obj_embed == std::vector<ObjId>{w.Y0});

  auto t = fx::identity_fibration(fx::diamond_poset());
  for (ObjId A = 0; A < t.cat->n_objects; ++A) {
    FiberCategory f = fiber(t.pi, A);
    CHECK(f.cat.n_objects == 1);
    CHECK(f.cat.n_arrows() == 1);
  }
}

TEST_CASE("opposite is involutive and lawful") {
  FiniteCategory d = fx::diamond_poset();
  FiniteCategory op = opposite(d);
  CHECK(validate_category(op).pass);
  FiniteCategory opop = opposite(op);
  CHECK(opop.comp == d.comp);
  for (ArrowId f = 0; f < d.n_arrows(); ++f) {
    CHECK(opop.dom(f) == d.dom(f));
    CHECK(opop.cod(f) == d.cod(f));
  }
}
