#pragma once

// Finite jet functor over reflexive neighborhood relations: J(X) at b is the
// set of sections over the neighborhood of b, its action on comorphisms along
// relation-preserving base maps, the projection-induced strength comparison,
// and basepoint-vanishing 1-forms.

#include <optional>

#include "fibcat/finset.hpp"

namespace fibcat {

// Reflexive relation on a finite base, with d(b,b') = b (basepoint) and
// c(b,b') = b' (neighbor). neighbors(b) is kept sorted.
struct NeighborhoodRelation {
  int base_size = 0;
  std::vector<std::pair<int, int>> pairs;  // sorted (b, b')

  static NeighborhoodRelation from_pairs(int base_size,
                                         std::vector<std::pair<int, int>> pairs,
                                         bool add_reflexive = true);
  std::vector<int> neighbors(int b) const;
  bool contains(int b, int bp) const;

  // Diagonal-only relation.
  static NeighborhoodRelation diagonal(int base_size);
  // Chain |b - b'| <= 1 on {0..n-1}.
  static NeighborhoodRelation chain(int n);
  // Product relation on Q x B: ((q,b),(q,b')) for (b,b') in this relation,
  // with elements of Q x B ordered q-major.
  NeighborhoodRelation product_with(int q) const;
};

// The pairs set B_(k) as a bundle-style finite set with the two projections.
struct RelationSpans {
  int pair_count = 0;
  FinFunction d;  // pairs -> B, first projection
  FinFunction c;  // pairs -> B, second projection
};

RelationSpans relation_spans(const NeighborhoodRelation& r);

// J(X): fiber at b is the set of sections s over neighbors(b) with
// s(b') in X_{b'}, in lexicographic order.
struct JetBundle {
  NeighborhoodRelation base;
  FinFamilyBundle source;
  FinFamilyBundle bundle;             // |J(X)_b| per b
  std::vector<SectionSpace> sections;  // per b, positions = neighbors(b)
};

JetBundle jet_object(const NeighborhoodRelation& r, const FinFamilyBundle& x);

// True when alpha maps related pairs to related pairs; on failure reports the
// violating pair.
struct RelationCheck {
  bool preserved = true;
  std::pair<int, int> violation{-1, -1};
};

RelationCheck relation_preserved(const NeighborhoodRelation& ra,
                                 const NeighborhoodRelation& rb, const FinFunction& alpha);

// J(f) for a comorphism f over a relation-preserving alpha: the component at
// a sends a section s over neighbors(alpha(a)) to a' |-> f_{a'}(s(alpha(a'))).
// Throws std::invalid_argument when alpha does not preserve the relation.
FamilyComorphism jet_comorphism(const NeighborhoodRelation& ra,
                                const NeighborhoodRelation& rb,
                                const FamilyComorphism& f, const FinFamilyBundle& x,
                                const FinFamilyBundle& y);

// The comparison alpha*(J(y)) -> J(alpha*(y)) (vertical over A): restriction
// of sections along alpha. Specializing alpha to a projection Q x B -> B
// yields the strength of J.
FamilyMap jet_comparison(const NeighborhoodRelation& ra, const NeighborhoodRelation& rb,
                         const FinFunction& alpha, const FinFamilyBundle& y);

// Strength instance at parameter size Q: the comparison for the projection
// Q x B -> B with the product relation upstairs.
struct JetStrength {
  NeighborhoodRelation product_relation;  // on Q x B
  FinFunction projection;                 // Q x B -> B
  FamilyMap comparison;                   // p*(J(x)) -> J(p*(x)), vertical
};

JetStrength jet_strength(const NeighborhoodRelation& r, int q, const FinFamilyBundle& x);

// A bundle with a distinguished basepoint in every fiber.
struct PointedBundle {
  FinFamilyBundle bundle;
  std::vector<int> basepoint;  // per base point, index within the fiber
};

// E-valued 1-forms: the sections s in J(E)_b with s(b) = 0_b, listed in the
// jet order. `members` records the jet-section index of each form.
struct OmegaBundle {
  JetBundle jets;
  FinFamilyBundle bundle;
  std::vector<std::vector<int>> members;  // per b, jet indices of the forms
};

OmegaBundle omega1(const NeighborhoodRelation& r, const PointedBundle& e);

// Restriction of J(f) to 1-forms for a basepoint-preserving comorphism over a
// relation-preserving alpha (vertical case: alpha = identity).
FamilyComorphism omega1_comorphism(const NeighborhoodRelation& ra,
                                   const NeighborhoodRelation& rb,
                                   const FamilyComorphism& f, const PointedBundle& ex,
                                   const PointedBundle& ey);

}  // namespace fibcat
