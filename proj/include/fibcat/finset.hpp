#pragma once

// Concrete finite-set semantics: fiberwise family bundles, pullbacks,
// dependent products with their adjunction, family-view comorphisms with the
// componentwise composition formula, the codomain fibration of a finite
// category as an explicit arrow category, and the bundle fibration over a
// finite-set skeleton that ties the family view to the generic engine.
//
// Element conventions are fixed once: bundle elements are ordered by (base
// point, fiber index), and sections are enumerated lexicographically with the
// smallest base point most significant.

#include <map>
#include <memory>

#include "fibcat/core.hpp"
#include "fibcat/dual.hpp"

namespace fibcat {

struct FinFunction {
  int dom_size = 0;
  int cod_size = 0;
  std::vector<int> values;

  static FinFunction identity(int n);
  static FinFunction constant(int dom, int cod, int value);
  int operator()(int x) const { return values[x]; }
  FinFunction then(const FinFunction& g) const;  // diagrammatic
  bool is_bijective() const;
  FinFunction inverted() const;  // throws unless bijective
  bool operator==(const FinFunction&) const = default;
  auto operator<=>(const FinFunction&) const = default;
};

// A family {X_a | a in A} stored fiberwise; equivalently the map X -> A with
// X_a its preimages.
struct FinFamilyBundle {
  int base_size = 0;
  std::vector<int> fibers;

  int total() const;
  int offset(int a) const;
  bool operator==(const FinFamilyBundle&) const = default;
  auto operator<=>(const FinFamilyBundle&) const = default;
};

// Forward fiberwise map over alpha: components X_a -> Y_{alpha(a)}.
struct FamilyMap {
  FinFunction base_map;
  std::vector<FinFunction> components;
  bool operator==(const FamilyMap&) const = default;
};

// Comorphism over alpha: components Y_{alpha(a)} -> X_a (an arrow X -> Y of
// the fibrewise dual, in the family view).
struct FamilyComorphism {
  FinFunction base_map;
  std::vector<FinFunction> components;
  bool operator==(const FamilyComorphism&) const = default;
};

FamilyMap identity_family_map(const FinFamilyBundle& x);
FamilyMap compose_family_maps(const FamilyMap& f, const FamilyMap& g);

FamilyComorphism identity_comorphism(const FinFamilyBundle& x);

// h_a(z) = f_a(g_{alpha(a)}(z)) for f over alpha, g over beta.
FamilyComorphism compose_family_comorphisms(const FamilyComorphism& f,
                                            const FamilyComorphism& g);

// Mixed-radix enumeration of sections over a list of positions: a section
// assigns one element of sizes[p] to each position p, ordered
// lexicographically with the first position most significant.
struct SectionSpace {
  std::vector<int> positions;
  std::vector<int> sizes;
  int count = 1;

  int encode(const std::vector<int>& choice) const;
  std::vector<int> decode(int idx) const;
};

SectionSpace make_section_space(std::vector<int> positions, const std::vector<int>& size_at);

// alpha*(Y): fiber at a is Y_{alpha(a)}, plus the Cartesian projection to Y
// (identity components over alpha).
struct PullbackResult {
  FinFamilyBundle bundle;
  FamilyMap to_target;
};

PullbackResult pullback(const FinFunction& alpha, const FinFamilyBundle& y);

// Pi_alpha(X): fiber at b is the set of sections over alpha^{-1}(b), plus the
// counit alpha*(Pi_alpha X) -> X (vertical over A).
struct PiResult {
  FinFamilyBundle bundle;
  FamilyMap counit;
  std::vector<SectionSpace> sections;  // per base point of B
};

PiResult pi_along(const FinFunction& alpha, const FinFamilyBundle& x);

// The adjunction bijection hom_{/A}(alpha*Y, X) = hom_{/B}(Y, Pi_alpha X).
// `phi` is vertical over A with components (alpha*Y)_a -> X_a; the transpose
// is vertical over B. `transpose_from_pi` is the inverse direction.
FamilyMap transpose_to_pi(const FinFunction& alpha, const FinFamilyBundle& y,
                          const FinFamilyBundle& x, const FamilyMap& phi);
FamilyMap transpose_from_pi(const FinFunction& alpha, const FinFamilyBundle& y,
                            const FinFamilyBundle& x, const FamilyMap& psi);

// A comorphism x -|-> y over alpha is the same data as a vertical map
// alpha*(y) -> x.
FamilyMap comorphism_as_vertical(const FinFunction& alpha, const FinFamilyBundle& y,
                                 const FamilyComorphism& f);

// Pre-coCartesian test: the comorphism presentation is a distributivity
// pullback iff it is initial among comorphisms out of x over alpha,
// exhaustively over competitor bundles with fibers up to `fiber_bound`
// (defaults to the largest fiber in sight).
bool is_distributivity_pullback(const FinFunction& alpha, const FinFamilyBundle& x,
                                const FinFamilyBundle& y, const FamilyComorphism& f,
                                int fiber_bound = -1);

// --- explicit encodings -----------------------------------------------------

// Full subcategory of finite sets on the objects 0..max_size, with every
// function as an arrow.
struct SkeletonCategory {
  FiniteCategory cat;
  std::vector<FinFunction> fn;  // per arrow
  std::map<std::tuple<int, int, std::vector<int>>, ArrowId> index;

  ArrowId arrow_of(const FinFunction& f) const;
};

SkeletonCategory finset_skeleton(int max_size);

// The arrow category B^2 with the codomain projection. Objects are the
// arrows of B; arrows are the commutative squares (top, bottom).
struct ArrowCategoryEncoding {
  const FiniteCategory* base = nullptr;
  std::unique_ptr<FiniteCategory> sq;
  CatFunctor d1;  // codomain projection; source is sq.get()
  CatFunctor d0;  // domain projection

  struct Square {
    ObjId x, y;          // sq objects = base arrows
    ArrowId top, bottom;
  };
  std::vector<Square> squares;  // per sq arrow
  std::map<std::tuple<ObjId, ObjId, ArrowId, ArrowId>, ArrowId> index;

  ArrowId square_of(ObjId x, ObjId y, ArrowId top, ArrowId bottom) const;
};

ArrowCategoryEncoding encode_codomain_fibration(const FiniteCategory& B);

// Pullback square by the universal property, enumerated over every cone in
// the finite category. The square is x.bottom = top.y with x, y the sq
// objects (arrows of B).
bool is_pullback_square_cat(const FiniteCategory& B, ArrowId x, ArrowId y,
                            ArrowId top, ArrowId bottom);

// Pair-set oracle for squares between genuine finite sets: the comparison
// p |-> (x(p), top(p)) into {(a, q) : g(a) = y(q)} must be a bijection.
bool is_pullback_square_sets(const FinFunction& x, const FinFunction& y,
                             const FinFunction& top, const FinFunction& bottom);

// The fibration of family bundles with fibers <= max_fiber over the finite-set
// skeleton of sizes <= max_base, materialized as an explicit finite category.
// Arrows are fiberwise maps over a skeleton arrow.
struct BundleFibration {
  std::unique_ptr<SkeletonCategory> skel;
  std::unique_ptr<FiniteCategory> total;
  CatFunctor pi;  // total -> skel->cat

  std::vector<FinFamilyBundle> objects;  // per total object
  struct BundleArrow {
    ArrowId alpha;
    std::vector<FinFunction> components;
  };
  std::vector<BundleArrow> arrows;  // per total arrow

  std::map<FinFamilyBundle, ObjId> obj_index;
  std::map<std::tuple<ObjId, ObjId, ArrowId, std::vector<int>>, ArrowId> arr_index;

  ObjId object_of(const FinFamilyBundle& b) const;
  ArrowId arrow_of(ObjId src, ObjId dst, ArrowId alpha,
                   const std::vector<FinFunction>& components) const;
  FamilyMap family_map_of(ArrowId f) const;
};

BundleFibration bundle_fibration(int max_base, int max_fiber);

// The certified translation between the family view and the explicit
// encoding: a comorphism x -|-> y over alpha corresponds to the span with
// apex alpha*(y), vertical leg its components and horizontal leg the
// pullback projection; in the other direction any representative (v, h)
// yields the components h_a^{-1}.v_a.
VhSpan comorphism_span(const BundleFibration& bf, const FinFamilyBundle& x,
                       const FinFamilyBundle& y, const FamilyComorphism& f);
FamilyComorphism span_comorphism(const BundleFibration& bf, const VhSpan& s);

// Independent composition oracle following the span interpolation recipe
// with literal pair-set pullbacks: present f and g as spans with apexes
// alpha*(y) and beta*(z), interpolate k = alpha*(beta*(z)) and the unique
// vertical w closing the square, and read the composite off the resulting
// span. Asserts the square commutes; throws std::logic_error otherwise.
FamilyComorphism compose_comorphisms_by_spans(const FamilyComorphism& f,
                                              const FamilyComorphism& g,
                                              const FinFamilyBundle& x,
                                              const FinFamilyBundle& y,
                                              const FinFamilyBundle& z);

}  // namespace fibcat
