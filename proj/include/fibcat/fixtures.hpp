#pragma once

// Canonical fixtures shared by every module's tests. Index conventions are
// fixed: identities come first (arrow i is the identity of object i), then
// the named arrows in declaration order. The DSL parser uses the same
// convention, so the shipped fixture document parses to these tables
// bit-identically.

#include <memory>

#include "fibcat/core.hpp"

namespace fibcat::fixtures {

// One object, one (identity) arrow.
FiniteCategory terminal_category();

// W2, the walking arrow: objects a=0, b=1; u: a -> b (index 2).
FiniteCategory walking_arrow();

// Total order 0 <= 1 <= ... <= n-1 as a category.
FiniteCategory chain_poset(int n);

// The four-element diamond lattice: bot=0, a=1, b=2, top=3.
FiniteCategory diamond_poset();

// Poset category from an explicit reflexive-transitive relation.
FiniteCategory poset_category(int n, const std::vector<std::pair<int, int>>& leq);

// The fixture fibration pi: E -> W2.
//   E: objects X0, X1 over a and Y0 over b; vertical v: X0 -> X1;
//   h0: X1 -> Y0 over u; vh = v.h0.
struct WalkingFibration {
  std::unique_ptr<FiniteCategory> base;
  std::unique_ptr<FiniteCategory> total;
  CatFunctor pi;

  ObjId a = 0, b = 1;
  ArrowId id_a = 0, id_b = 1, u = 2;
  ObjId X0 = 0, X1 = 1, Y0 = 2;
  ArrowId id_X0 = 0, id_X1 = 1, id_Y0 = 2, v = 3, h0 = 4, vh = 5;
};

WalkingFibration walking_fibration();

// Identity fibration on any category (id: C -> C).
struct IdentityFibration {
  std::unique_ptr<FiniteCategory> cat;
  CatFunctor pi;
};

IdentityFibration identity_fibration(FiniteCategory cat);

// A fibration over W2 whose fiber at a is the two-element group: X1 carries a
// vertical involution t, so the two Cartesian arrows h1 and z = t.h1 over u
// are parallel. The smallest fixture with a non-identity vh equivalence
// witness.
struct InvolutionFibration {
  std::unique_ptr<FiniteCategory> base;
  std::unique_ptr<FiniteCategory> total;
  CatFunctor pi;

  ObjId X1 = 0, Y0 = 1;
  ArrowId id_X1 = 0, id_Y0 = 1, t = 2, h1 = 3, z = 4;
};

InvolutionFibration involution_fibration();

// A fibration over W2 with a genuine interpolation square: fibers are
// P =v0,v1=> Q over a and Y0 -w0-> Y1 over b, with Cartesian lifts hP0, hQ1
// and diagonals d0 = v0.hQ1 = hP0.w0, d1 = v1.hQ1. The square
// (v0, hQ1, hP0, w0) makes glue condition 4 bind independently of the
// functoriality of the parts.
struct ParallelPairFibration {
  std::unique_ptr<FiniteCategory> base;
  std::unique_ptr<FiniteCategory> total;
  CatFunctor pi;

  ObjId P = 0, Q = 1, Y0 = 2, Y1 = 3;
  ArrowId v0 = 4, v1 = 5, w0 = 6, hP0 = 7, hQ1 = 8, d0 = 9, d1 = 10;
};

ParallelPairFibration parallel_pair_fibration();

}  // namespace fibcat::fixtures
