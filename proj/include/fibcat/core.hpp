#pragma once

// Explicit finite categories and functors. Everything is an integer-indexed
// table: objects and arrows are dense indices, composition is a total-where-
// defined lookup table, and every axiom is checkable by enumeration.
//
// Composition is diagrammatic throughout: compose(f, g) means "first f, then
// g" and is defined exactly when cod(f) == dom(g).

#include <optional>
#include <string>
#include <vector>

namespace fibcat {

using ObjId = int;
using ArrowId = int;

inline constexpr int kNone = -1;

struct Arrow {
  ObjId dom = 0;
  ObjId cod = 0;
};

// Result of a validation pass. On failure, `rule` names the violated law and
// `witness` holds the offending indices. Structural problems (indices out of
// range, malformed tables) use rules prefixed "structure/" so they are
// distinguishable from genuine axiom failures.
struct ValidationReport {
  bool pass = true;
  std::string rule;
  std::string detail;
  std::vector<int> witness;

  static ValidationReport ok() { return {}; }
  static ValidationReport fail(std::string rule_, std::string detail_,
                               std::vector<int> witness_ = {}) {
    return {false, std::move(rule_), std::move(detail_), std::move(witness_)};
  }
};

class FiniteCategory {
 public:
  int n_objects = 0;
  std::vector<Arrow> arrows;
  std::vector<ArrowId> identity;  // object -> its identity arrow
  std::vector<ArrowId> comp;      // flattened n_arrows x n_arrows, kNone = undefined

  int n_arrows() const { return static_cast<int>(arrows.size()); }
  ObjId dom(ArrowId f) const { return arrows[f].dom; }
  ObjId cod(ArrowId f) const { return arrows[f].cod; }
  bool is_identity(ArrowId f) const {
    ObjId d = arrows[f].dom;
    return arrows[f].cod == d && identity[d] == f;
  }

  // Diagrammatic composite f.g, or kNone when cod(f) != dom(g).
  ArrowId compose(ArrowId f, ArrowId g) const {
    return comp[static_cast<size_t>(f) * arrows.size() + g];
  }
  bool composable(ArrowId f, ArrowId g) const { return cod(f) == dom(g); }

  // --- construction helpers -------------------------------------------------

  ObjId add_object() {
    identity.push_back(kNone);
    return n_objects++;
  }
  ArrowId add_arrow(ObjId d, ObjId c) {
    arrows.push_back({d, c});
    return n_arrows() - 1;
  }
  ArrowId add_identity(ObjId o) {
    ArrowId f = add_arrow(o, o);
    identity[o] = f;
    return f;
  }
  // Allocates the composition table (call once all arrows exist) and fills
  // the identity-composite entries.
  void init_comp() {
    comp.assign(static_cast<size_t>(n_arrows()) * n_arrows(), kNone);
    for (ArrowId f = 0; f < n_arrows(); ++f) {
      set_comp(identity[arrows[f].dom], f, f);
      set_comp(f, identity[arrows[f].cod], f);
    }
  }
  void set_comp(ArrowId f, ArrowId g, ArrowId fg) {
    comp[static_cast<size_t>(f) * arrows.size() + g] = fg;
  }

  // Arrows listed ascending, grouped for enumeration-heavy callers.
  std::vector<ArrowId> arrows_from(ObjId o) const {
    std::vector<ArrowId> out;
    for (ArrowId f = 0; f < n_arrows(); ++f)
      if (arrows[f].dom == o) out.push_back(f);
    return out;
  }
  std::vector<ArrowId> arrows_into(ObjId o) const {
    std::vector<ArrowId> out;
    for (ArrowId f = 0; f < n_arrows(); ++f)
      if (arrows[f].cod == o) out.push_back(f);
    return out;
  }
  std::vector<ArrowId> hom(ObjId a, ObjId b) const {
    std::vector<ArrowId> out;
    for (ArrowId f = 0; f < n_arrows(); ++f)
      if (arrows[f].dom == a && arrows[f].cod == b) out.push_back(f);
    return out;
  }
};

// Functor between finite categories as object/arrow index maps. The source
// and target are non-owning pointers; owners must keep them alive and at a
// stable address.
struct CatFunctor {
  const FiniteCategory* source = nullptr;
  const FiniteCategory* target = nullptr;
  std::vector<ObjId> obj_map;
  std::vector<ArrowId> arr_map;

  ObjId on_obj(ObjId o) const { return obj_map[o]; }
  ArrowId on_arr(ArrowId f) const { return arr_map[f]; }
};

// The set of arrows over a fixed base arrow with fixed endpoints, in
// ascending index order.
struct HomSet {
  ArrowId base_arrow = kNone;
  ObjId X = kNone;
  ObjId Y = kNone;
  std::vector<ArrowId> members;
};

ValidationReport validate_category(const FiniteCategory& cat);
ValidationReport validate_functor(const CatFunctor& F);

// All arrows h with pi(h) = alpha, dom(h) = X, cod(h) = Y. Preconditions
// (endpoints of X, Y over those of alpha) are enforced with
// std::invalid_argument.
HomSet hom_over(const CatFunctor& pi, ArrowId alpha, ObjId X, ObjId Y);

// A fiber as a standalone category plus the index embedding back into the
// total category.
struct FiberCategory {
  FiniteCategory cat;
  std::vector<ObjId> obj_embed;
  std::vector<ArrowId> arr_embed;
};

FiberCategory fiber(const CatFunctor& pi, ObjId A);

// Identity functor on `cat` (used by fixtures and glue round-trips).
CatFunctor identity_functor(const FiniteCategory& cat);

// Formal opposite: same object and arrow indices, dom/cod swapped,
// comp(f,g) = original comp(g,f).
FiniteCategory opposite(const FiniteCategory& cat);

// True when F(x) = G(x) on every object and arrow (same source assumed).
bool same_functor(const CatFunctor& F, const CatFunctor& G);

}  // namespace fibcat
