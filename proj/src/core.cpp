#include "fibcat/core.hpp"

#include <stdexcept>

namespace fibcat {

namespace {

bool obj_in_range(const FiniteCategory& cat, ObjId o) {
  return o >= 0 && o < cat.n_objects;
}
bool arr_in_range(const FiniteCategory& cat, ArrowId f) {
  return f >= 0 && f < cat.n_arrows();
}

}  // namespace

ValidationReport validate_category(const FiniteCategory& cat) {
  const int na = cat.n_arrows();

  // Structural checks first: everything below indexes blindly.
  if (static_cast<int>(cat.identity.size()) != cat.n_objects)
    return ValidationReport::fail("structure/identity-table",
                                  "identity table size != object count");
  if (cat.comp.size() != static_cast<size_t>(na) * na)
    return ValidationReport::fail("structure/comp-table",
                                  "composition table size != n_arrows^2");
  for (ArrowId f = 0; f < na; ++f) {
    if (!obj_in_range(cat, cat.arrows[f].dom) || !obj_in_range(cat, cat.arrows[f].cod))
      return ValidationReport::fail("structure/arrow-endpoints",
                                    "arrow endpoint out of range", {f});
  }
  for (ObjId o = 0; o < cat.n_objects; ++o) {
    if (!arr_in_range(cat, cat.identity[o]))
      return ValidationReport::fail("structure/identity-range",
                                    "identity arrow index out of range", {o});
  }
  for (size_t i = 0; i < cat.comp.size(); ++i) {
    ArrowId v = cat.comp[i];
    if (v != kNone && !arr_in_range(cat, v))
      return ValidationReport::fail("structure/comp-range",
                                    "composite index out of range",
                                    {static_cast<int>(i / na), static_cast<int>(i % na)});
  }

  // identity(o) must be an endomorphism of o.
  for (ObjId o = 0; o < cat.n_objects; ++o) {
    ArrowId id = cat.identity[o];
    if (cat.dom(id) != o || cat.cod(id) != o)
      return ValidationReport::fail("identity-endpoints",
                                    "identity arrow of object has wrong endpoints", {o, id});
  }

  // Unit laws (checked before the comp-table shape so that a remapped
  // identity composite reports as a unit-law violation).
  for (ArrowId f = 0; f < na; ++f) {
    if (cat.compose(cat.identity[cat.dom(f)], f) != f)
      return ValidationReport::fail("unit-law", "identity.f != f", {f});
    if (cat.compose(f, cat.identity[cat.cod(f)]) != f)
      return ValidationReport::fail("unit-law", "f.identity != f", {f});
  }

  // Definedness: comp(f,g) defined iff cod(f) = dom(g), with matching
  // composite endpoints.
  for (ArrowId f = 0; f < na; ++f) {
    for (ArrowId g = 0; g < na; ++g) {
      ArrowId fg = cat.compose(f, g);
      bool should = cat.cod(f) == cat.dom(g);
      if (should && fg == kNone)
        return ValidationReport::fail("comp-definedness",
                                      "composable pair has no composite", {f, g});
      if (!should && fg != kNone)
        return ValidationReport::fail("comp-definedness",
                                      "non-composable pair has a composite", {f, g});
      if (fg != kNone && (cat.dom(fg) != cat.dom(f) || cat.cod(fg) != cat.cod(g)))
        return ValidationReport::fail("comp-endpoints",
                                      "composite has wrong endpoints", {f, g, fg});
    }
  }

  // Associativity over genuinely composable triples.
  std::vector<std::vector<ArrowId>> by_dom(cat.n_objects);
  for (ArrowId f = 0; f < na; ++f) by_dom[cat.dom(f)].push_back(f);
  for (ArrowId f = 0; f < na; ++f) {
    for (ArrowId g : by_dom[cat.cod(f)]) {
      ArrowId fg = cat.compose(f, g);
      for (ArrowId h : by_dom[cat.cod(g)]) {
        ArrowId gh = cat.compose(g, h);
        if (cat.compose(fg, h) != cat.compose(f, gh))
          return ValidationReport::fail("associativity", "(f.g).h != f.(g.h)", {f, g, h});
      }
    }
  }

  return ValidationReport::ok();
}

ValidationReport validate_functor(const CatFunctor& F) {
  if (F.source == nullptr || F.target == nullptr)
    return ValidationReport::fail("structure/functor-refs", "missing source or target");
  const FiniteCategory& S = *F.source;
  const FiniteCategory& T = *F.target;

  if (static_cast<int>(F.obj_map.size()) != S.n_objects)
    return ValidationReport::fail("structure/obj-map", "object map size mismatch");
  if (static_cast<int>(F.arr_map.size()) != S.n_arrows())
    return ValidationReport::fail("structure/arr-map", "arrow map size mismatch");
  for (ObjId o = 0; o < S.n_objects; ++o)
    if (!obj_in_range(T, F.obj_map[o]))
      return ValidationReport::fail("structure/obj-range", "object image out of range", {o});
  for (ArrowId f = 0; f < S.n_arrows(); ++f)
    if (!arr_in_range(T, F.arr_map[f]))
      return ValidationReport::fail("structure/arr-range", "arrow image out of range", {f});

  for (ArrowId f = 0; f < S.n_arrows(); ++f) {
    ArrowId Ff = F.arr_map[f];
    if (T.dom(Ff) != F.obj_map[S.dom(f)] || T.cod(Ff) != F.obj_map[S.cod(f)])
      return ValidationReport::fail("functor/endpoints",
                                    "image arrow endpoints do not match image objects",
                                    {f, Ff});
  }
  for (ObjId o = 0; o < S.n_objects; ++o) {
    if (F.arr_map[S.identity[o]] != T.identity[F.obj_map[o]])
      return ValidationReport::fail("functor/identity",
                                    "identity not mapped to identity", {o});
  }
  for (ArrowId f = 0; f < S.n_arrows(); ++f) {
    for (ArrowId g = 0; g < S.n_arrows(); ++g) {
      if (!S.composable(f, g)) continue;
      ArrowId lhs = F.arr_map[S.compose(f, g)];
      ArrowId rhs = T.compose(F.arr_map[f], F.arr_map[g]);
      if (lhs != rhs)
        return ValidationReport::fail("functor/composition",
                                      "F(f.g) != F(f).F(g)", {f, g});
    }
  }
  return ValidationReport::ok();
}

HomSet hom_over(const CatFunctor& pi, ArrowId alpha, ObjId X, ObjId Y) {
  const FiniteCategory& total = *pi.source;
  const FiniteCategory& base = *pi.target;
  if (pi.obj_map[X] != base.dom(alpha) || pi.obj_map[Y] != base.cod(alpha))
    throw std::invalid_argument("hom_over: endpoints do not lie over the base arrow");
  HomSet hs;
  hs.base_arrow = alpha;
  hs.X = X;
  hs.Y = Y;
  for (ArrowId h = 0; h < total.n_arrows(); ++h) {
    if (total.dom(h) == X && total.cod(h) == Y && pi.arr_map[h] == alpha)
      hs.members.push_back(h);
  }
  return hs;
}

FiberCategory fiber(const CatFunctor& pi, ObjId A) {
  const FiniteCategory& total = *pi.source;
  const FiniteCategory& base = *pi.target;
  if (A < 0 || A >= base.n_objects)
    throw std::invalid_argument("fiber: base object out of range");
  ArrowId idA = base.identity[A];

  FiberCategory fc;
  std::vector<int> obj_index(total.n_objects, kNone);
  for (ObjId x = 0; x < total.n_objects; ++x) {
    if (pi.obj_map[x] == A) {
      obj_index[x] = fc.cat.add_object();
      fc.obj_embed.push_back(x);
    }
  }
  std::vector<int> arr_index(total.n_arrows(), kNone);
  for (ArrowId f = 0; f < total.n_arrows(); ++f) {
    if (pi.arr_map[f] != idA) continue;
    ObjId d = obj_index[total.dom(f)];
    ObjId c = obj_index[total.cod(f)];
    arr_index[f] = fc.cat.add_arrow(d, c);
    fc.arr_embed.push_back(f);
  }
  for (size_t i = 0; i < fc.obj_embed.size(); ++i)
    fc.cat.identity[i] = arr_index[total.identity[fc.obj_embed[i]]];
  fc.cat.init_comp();
  for (size_t i = 0; i < fc.arr_embed.size(); ++i) {
    for (size_t j = 0; j < fc.arr_embed.size(); ++j) {
      ArrowId f = fc.arr_embed[i];
      ArrowId g = fc.arr_embed[j];
      if (!total.composable(f, g)) continue;
      ArrowId fg = total.compose(f, g);
      // Vertical arrows compose to vertical arrows, so fg is in the fiber.
      fc.cat.set_comp(static_cast<ArrowId>(i), static_cast<ArrowId>(j), arr_index[fg]);
    }
  }
  return fc;
}

CatFunctor identity_functor(const FiniteCategory& cat) {
  CatFunctor F;
  F.source = &cat;
  F.target = &cat;
  F.obj_map.resize(cat.n_objects);
  F.arr_map.resize(cat.n_arrows());
  for (ObjId o = 0; o < cat.n_objects; ++o) F.obj_map[o] = o;
  for (ArrowId f = 0; f < cat.n_arrows(); ++f) F.arr_map[f] = f;
  return F;
}

FiniteCategory opposite(const FiniteCategory& cat) {
  FiniteCategory op;
  op.n_objects = cat.n_objects;
  op.identity = cat.identity;
  op.arrows.resize(cat.arrows.size());
  for (ArrowId f = 0; f < cat.n_arrows(); ++f)
    op.arrows[f] = {cat.arrows[f].cod, cat.arrows[f].dom};
  op.comp.assign(cat.comp.size(), kNone);
  for (ArrowId f = 0; f < cat.n_arrows(); ++f)
    for (ArrowId g = 0; g < cat.n_arrows(); ++g)
      if (cat.compose(g, f) != kNone) op.set_comp(f, g, cat.compose(g, f));
  return op;
}

bool same_functor(const CatFunctor& F, const CatFunctor& G) {
  return F.obj_map == G.obj_map && F.arr_map == G.arr_map;
}

}  // namespace fibcat
