#include "fibcat/dual.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "fibcat/glue.hpp"

namespace fibcat {

std::optional<ArrowId> spans_equivalent(const VhSpan& a, const VhSpan& b) {
  const CatFunctor& pi = *a.pi;
  const FiniteCategory& total = *pi.source;
  if (a.src() != b.src() || a.tgt() != b.tgt() || a.base() != b.base())
    return std::nullopt;
  ArrowId found = kNone;
  for (ArrowId s = 0; s < total.n_arrows(); ++s) {
    if (total.dom(s) != b.apex || total.cod(s) != a.apex) continue;
    if (!is_vertical(pi, s)) continue;
    if (total.compose(s, a.vertical) != b.vertical) continue;
    if (total.compose(s, a.horizontal) != b.horizontal) continue;
    if (found != kNone)
      throw std::logic_error("spans_equivalent: witness not unique");
    found = s;
  }
  if (found == kNone) return std::nullopt;
  if (!inverse(total, found))
    throw std::logic_error("spans_equivalent: witness not invertible");
  return found;
}

namespace {

std::vector<VhSpan> enumerate_spans(const CatFunctor& pi, const std::vector<char>& cart) {
  const FiniteCategory& total = *pi.source;
  std::vector<VhSpan> spans;
  for (ObjId apex = 0; apex < total.n_objects; ++apex) {
    for (ArrowId v = 0; v < total.n_arrows(); ++v) {
      if (total.dom(v) != apex || !is_vertical(pi, v)) continue;
      for (ArrowId h = 0; h < total.n_arrows(); ++h) {
        if (total.dom(h) != apex || !cart[h]) continue;
        spans.push_back({apex, v, h, &pi});
      }
    }
  }
  return spans;
}

// Canonical representative of the class of `span`: unique vertical s with
// s.h = h_c (h_c the cleavage choice), paired with v' = s.v.
VhSpan canonical_of(const CatFunctor& pi, const Cleavage& cleavage, const VhSpan& span) {
  const FiniteCategory& total = *pi.source;
  ArrowId hc = cleavage.at(span.base(), span.tgt());
  ArrowId found = kNone;
  for (ArrowId s = 0; s < total.n_arrows(); ++s) {
    if (total.dom(s) != total.dom(hc) || total.cod(s) != span.apex) continue;
    if (!is_vertical(pi, s)) continue;
    if (total.compose(s, span.horizontal) != hc) continue;
    if (found != kNone)
      throw std::logic_error("canonical_of: comparison not unique");
    found = s;
  }
  if (found == kNone) throw std::logic_error("canonical_of: no comparison to the cleavage lift");
  return {total.dom(hc), total.compose(found, span.vertical), hc, &pi};
}

VhSpan raw_compose(const CatFunctor& pi, const Cleavage& cleavage,
                   const VhSpan& s1, const VhSpan& s2) {
  const FiniteCategory& total = *pi.source;
  if (s1.tgt() != s2.src())
    throw std::invalid_argument("compose_spans: spans not composable");
  ArrowId k = cleavage.at(pi.arr_map[s1.horizontal], s2.apex);
  ArrowId rhs = total.compose(k, s2.vertical);  // k.v2, over pi(h1)
  ArrowId w = kNone;
  for (ArrowId cand = 0; cand < total.n_arrows(); ++cand) {
    if (total.dom(cand) != total.dom(k) || total.cod(cand) != s1.apex) continue;
    if (!is_vertical(pi, cand)) continue;
    if (total.compose(cand, s1.horizontal) != rhs) continue;
    if (w != kNone) throw std::logic_error("compose_spans: interpolant not unique");
    w = cand;
  }
  if (w == kNone) throw std::logic_error("compose_spans: interpolation square cannot be closed");
  return {total.dom(k), total.compose(w, s1.vertical), total.compose(k, s2.horizontal), &pi};
}

}  // namespace

ComorphismClass span_class(const CatFunctor& pi, const Cleavage& cleavage,
                           const VhSpan& span) {
  const FiniteCategory& total = *pi.source;
  ComorphismClass cls;
  cls.src = span.src();
  cls.tgt = span.tgt();
  cls.base_arrow = span.base();

  ObjId A = pi.target->dom(cls.base_arrow);
  for (ObjId apex = 0; apex < total.n_objects; ++apex) {
    if (pi.obj_map[apex] != A) continue;
    for (ArrowId v = 0; v < total.n_arrows(); ++v) {
      if (total.dom(v) != apex || total.cod(v) != cls.src || !is_vertical(pi, v)) continue;
      for (ArrowId h = 0; h < total.n_arrows(); ++h) {
        if (total.dom(h) != apex || total.cod(h) != cls.tgt) continue;
        if (pi.arr_map[h] != cls.base_arrow) continue;
        VhSpan cand{apex, v, h, &pi};
        if (!is_cartesian(pi, h).value) continue;
        if (spans_equivalent(span, cand)) cls.representatives.push_back(cand);
      }
    }
  }

  VhSpan canon = canonical_of(pi, cleavage, span);
  for (size_t i = 0; i < cls.representatives.size(); ++i) {
    if (cls.representatives[i].vertical == canon.vertical &&
        cls.representatives[i].horizontal == canon.horizontal)
      cls.canonical = static_cast<int>(i);
  }
  if (cls.canonical < 0)
    throw std::logic_error("span_class: canonical representative not in class");
  return cls;
}

bool class_contains(const ComorphismClass& cls, const VhSpan& span) {
  return spans_equivalent(cls.representatives.front(), span).has_value();
}

ComorphismClass compose_spans(const CatFunctor& pi, const Cleavage& cleavage,
                              const VhSpan& s1, const VhSpan& s2) {
  return span_class(pi, cleavage, raw_compose(pi, cleavage, s1, s2));
}

DualFibration build_dual(const CatFunctor& pi, const Cleavage& cleavage) {
  const FiniteCategory& total = *pi.source;
  std::vector<char> cart = cartesian_flags(pi);

  // Quotient all spans by (eqx2), bucketed by (source, target, base arrow).
  std::map<std::tuple<ObjId, ObjId, ArrowId>, std::vector<std::vector<VhSpan>>> buckets;
  for (const VhSpan& s : enumerate_spans(pi, cart)) {
    auto& groups = buckets[{s.src(), s.tgt(), s.base()}];
    bool placed = false;
    for (auto& group : groups) {
      if (spans_equivalent(group.front(), s)) {
        group.push_back(s);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({s});
  }

  std::vector<ComorphismClass> classes;
  for (auto& [key, groups] : buckets) {
    for (auto& group : groups) {
      ComorphismClass cls;
      cls.src = std::get<0>(key);
      cls.tgt = std::get<1>(key);
      cls.base_arrow = std::get<2>(key);
      cls.representatives = std::move(group);
      VhSpan canon = canonical_of(pi, cleavage, cls.representatives.front());
      for (size_t i = 0; i < cls.representatives.size(); ++i)
        if (cls.representatives[i].vertical == canon.vertical &&
            cls.representatives[i].horizontal == canon.horizontal)
          cls.canonical = static_cast<int>(i);
      if (cls.canonical < 0)
        throw std::logic_error("build_dual: canonical representative missing from class");
      classes.push_back(std::move(cls));
    }
  }

  std::sort(classes.begin(), classes.end(),
            [](const ComorphismClass& a, const ComorphismClass& b) {
              auto ka = std::make_tuple(a.base_arrow, a.src, a.tgt,
                                        a.representatives[a.canonical].vertical);
              auto kb = std::make_tuple(b.base_arrow, b.src, b.tgt,
                                        b.representatives[b.canonical].vertical);
              return ka < kb;
            });

  DualFibration dual;
  dual.pi = &pi;
  dual.classes = std::move(classes);
  for (size_t i = 0; i < dual.classes.size(); ++i)
    for (const VhSpan& s : dual.classes[i].representatives)
      dual.span_index[{s.vertical, s.horizontal}] = static_cast<int>(i);

  auto cat = std::make_unique<FiniteCategory>();
  cat->n_objects = total.n_objects;
  cat->identity.assign(total.n_objects, kNone);
  for (const ComorphismClass& c : dual.classes) cat->add_arrow(c.src, c.tgt);
  for (ObjId x = 0; x < total.n_objects; ++x) {
    int id = dual.arrow_of_span(total.identity[x], total.identity[x]);
    if (id == kNone) throw std::logic_error("build_dual: identity class missing");
    cat->identity[x] = id;
  }
  cat->init_comp();
  for (size_t i = 0; i < dual.classes.size(); ++i) {
    for (size_t j = 0; j < dual.classes.size(); ++j) {
      const ComorphismClass& c1 = dual.classes[i];
      const ComorphismClass& c2 = dual.classes[j];
      if (c1.tgt != c2.src) continue;
      VhSpan comp = raw_compose(pi, cleavage, c1.representatives[c1.canonical],
                                c2.representatives[c2.canonical]);
      int idx = dual.arrow_of_span(comp.vertical, comp.horizontal);
      if (idx == kNone) throw std::logic_error("build_dual: composite class missing");
      cat->set_comp(static_cast<ArrowId>(i), static_cast<ArrowId>(j), idx);
    }
  }

  dual.category = std::move(cat);
  dual.projection.source = dual.category.get();
  dual.projection.target = pi.target;
  dual.projection.obj_map = pi.obj_map;
  dual.projection.arr_map.reserve(dual.classes.size());
  for (const ComorphismClass& c : dual.classes)
    dual.projection.arr_map.push_back(c.base_arrow);
  return dual;
}

DualArrowClass classify_dual_arrow(const DualFibration& dual, int g) {
  const FiniteCategory& total = *dual.pi->source;
  bool vert = false, cart = false;
  for (const VhSpan& s : dual.classes[g].representatives) {
    if (total.is_identity(s.horizontal)) vert = true;
    if (total.is_identity(s.vertical)) cart = true;
  }
  if (vert && cart) return DualArrowClass::both;
  if (vert) return DualArrowClass::vertical;
  if (cart) return DualArrowClass::cartesian;
  return DualArrowClass::neither;
}

DoubleDual double_dual_iso(const CatFunctor& pi, const Cleavage& cleavage) {
  const FiniteCategory& total = *pi.source;

  DoubleDual out;
  out.dual = build_dual(pi, cleavage);

  CleavageBuild star = make_cleavage(out.dual.projection);
  if (!star.cleavage)
    throw std::logic_error("double_dual_iso: dual projection is not a fibration");
  out.double_dual = build_dual(out.dual.projection, *star.cleavage);

  const FiniteCategory& dual_cat = *out.dual.category;
  const FiniteCategory& ddual_cat = *out.double_dual.category;

  // Glue data for y: X -> X** over B.
  GlueData data;
  data.pi = &pi;
  data.target = &ddual_cat;
  data.target_projection = &out.double_dual.projection;
  data.obj_map.resize(total.n_objects);
  for (ObjId x = 0; x < total.n_objects; ++x) data.obj_map[x] = x;
  data.vert_map.assign(total.n_arrows(), kNone);
  data.cart_map.assign(total.n_arrows(), kNone);
  std::vector<char> cart = cartesian_flags(pi);
  for (ArrowId f = 0; f < total.n_arrows(); ++f) {
    if (is_vertical(pi, f)) {
      // y(v) = ((v,1),1): the class of (v,1) is vertical in X*, and pairing
      // it with an identity h-part gives the X** arrow.
      int vbar = out.dual.arrow_of_span(f, total.identity[total.dom(f)]);
      if (vbar == kNone) throw std::logic_error("double_dual_iso: missing (v,1) class");
      ObjId apex = dual_cat.dom(vbar);
      data.vert_map[f] = out.double_dual.arrow_of_span(vbar, dual_cat.identity[apex]);
      if (data.vert_map[f] == kNone)
        throw std::logic_error("double_dual_iso: missing ((v,1),1) class");
    }
    if (cart[f]) {
      // y(h) = (1,(1,h)).
      int hbar = out.dual.arrow_of_span(total.identity[total.dom(f)], f);
      if (hbar == kNone) throw std::logic_error("double_dual_iso: missing (1,h) class");
      ObjId apex = dual_cat.dom(hbar);
      data.cart_map[f] = out.double_dual.arrow_of_span(dual_cat.identity[apex], hbar);
      if (data.cart_map[f] == kNone)
        throw std::logic_error("double_dual_iso: missing (1,(1,h)) class");
    }
  }

  ValidationReport cond = verify_glue_conditions(data);
  if (!cond.pass) {
    out.verification = cond;
    return out;
  }
  out.y = glue_functor(data, cleavage);

  // y must be bijective on objects and arrows and commute with the
  // projections to the base.
  out.verification = ValidationReport::ok();
  if (ddual_cat.n_objects != total.n_objects || ddual_cat.n_arrows() != total.n_arrows()) {
    out.verification = ValidationReport::fail("double-dual/counts",
                                              "object or arrow counts differ");
    return out;
  }
  std::vector<char> hit(ddual_cat.n_arrows(), 0);
  for (ArrowId f = 0; f < total.n_arrows(); ++f) {
    if (hit[out.y.arr_map[f]]) {
      out.verification = ValidationReport::fail("double-dual/injective",
                                                "y identifies two arrows", {f});
      return out;
    }
    hit[out.y.arr_map[f]] = 1;
  }
  for (ObjId x = 0; x < total.n_objects; ++x) {
    if (out.double_dual.projection.obj_map[out.y.obj_map[x]] != pi.obj_map[x]) {
      out.verification = ValidationReport::fail("double-dual/over-base",
                                                "y does not commute with projections", {x});
      return out;
    }
  }
  for (ArrowId f = 0; f < total.n_arrows(); ++f) {
    if (out.double_dual.projection.arr_map[out.y.arr_map[f]] != pi.arr_map[f]) {
      out.verification = ValidationReport::fail("double-dual/over-base",
                                                "y does not commute with projections on arrows",
                                                {f});
      return out;
    }
  }
  return out;
}

}  // namespace fibcat
