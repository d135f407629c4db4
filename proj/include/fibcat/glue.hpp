#pragma once

// Gluing fiberwise functors and a Cartesian-subcategory functor into a single
// functor out of a fibration, plus extraction of the cleaved comparison
// family v_{alpha,X}.

#include <stdexcept>

#include "fibcat/fib.hpp"

namespace fibcat {

struct GlueError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The data of a functor out of a fibration, split into its fiberwise part
// (obj_map + vert_map, i.e. the F_A glued over all A) and its Cartesian part
// (obj_map + cart_map, i.e. F-bar). vert_map is defined exactly on vertical
// arrows and cart_map exactly on Cartesian arrows; other entries are kNone.
struct GlueData {
  const CatFunctor* pi = nullptr;                 // fibration X -> B
  const FiniteCategory* target = nullptr;         // Y
  const CatFunctor* target_projection = nullptr;  // optional Y -> B

  std::vector<ObjId> obj_map;
  std::vector<ArrowId> vert_map;
  std::vector<ArrowId> cart_map;
};

// Restriction of a full functor F: X -> Y to glue data (the F_A and F-bar it
// determines). Used by round-trip tests and by the double-dual construction.
GlueData restrict_functor(const CatFunctor& pi, const CatFunctor& F,
                          const FiniteCategory& target,
                          const CatFunctor* target_projection = nullptr);

// Checks structural well-formedness, functoriality of the fiberwise and
// Cartesian parts, agreement on vertical Cartesian arrows, and the
// commuting-square condition F_A(v).Fbar(h) = Fbar(k).F_B(w) over every
// square k.w = v.h with v, w vertical and h, k Cartesian. Squares are
// enumerated by brute force.
ValidationReport verify_glue_conditions(const GlueData& data);

// Builds the unique functor F with F(x) = F_A(v).Fbar(h) along the cleavage
// factorization. Preconditions: verify_glue_conditions passes and pi is a
// fibration under `cleavage`; violations throw GlueError.
CatFunctor glue_functor(const GlueData& data, const Cleavage& cleavage);

// The vertical comparison maps v_{alpha,X}: F_A(alpha*(X)) -> alpha*(F_B(X))
// carried by a functor over the base, one per (base arrow, object over its
// codomain), plus the verdict of the naturality-in-X check for each fixed
// base arrow.
struct ComparisonFamily {
  const CatFunctor* target_fibration = nullptr;
  std::vector<ArrowId> entries;  // n_base_arrows x n_objects(total X)
  ValidationReport naturality;

  ArrowId at(ArrowId alpha, ObjId X, int n_total_objects) const {
    return entries[static_cast<size_t>(alpha) * n_total_objects + X];
  }
};

ComparisonFamily extract_comparison(const CatFunctor& F, const CatFunctor& pi_x,
                                    const Cleavage& cleavage_x,
                                    const CatFunctor& pi_y,
                                    const Cleavage& cleavage_y);

}  // namespace fibcat
