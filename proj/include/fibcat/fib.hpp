#pragma once

// Cartesian-arrow analysis: deciding Cartesian / pre-Cartesian /
// pre-coCartesian properties by exhausting the universal property, finding
// Cartesian lifts and cleavages, and computing/composing vh factorizations.
//
// Lift lookups never crash on non-fibrations: cartesian_lift returns an
// optional, and make_cleavage reports the first missing (alpha, Y) pair
// instead of producing a cleavage.

#include <optional>

#include "fibcat/core.hpp"

namespace fibcat {

// Failing instance of the Cartesian universal property: post-composition by
// the arrow under test is not a bijection hom_xi(Z, X) -> hom_{xi.alpha}(Z, Y).
struct CartesianWitness {
  ArrowId xi = kNone;
  ObjId Z = kNone;
  std::vector<ArrowId> hom_upstairs;
  std::vector<ArrowId> hom_downstairs;
};

struct CartesianCheck {
  bool value = false;
  std::optional<CartesianWitness> witness;  // set when value is false
};

enum class PreSide { cartesian, cocartesian };

bool is_vertical(const CatFunctor& pi, ArrowId f);

// Full universal property, quantified over every base arrow xi composable
// into pi(h) (identities included) and every object over dom(xi).
CartesianCheck is_cartesian(const CatFunctor& pi, ArrowId h);

// Weakened property: bijectivity over the fiber only (terminal in the
// relative comma category), or initiality on the cocartesian side.
CartesianCheck is_precartesian(const CatFunctor& pi, ArrowId h, PreSide side);

// Per-arrow Cartesian flags, computed once for enumeration-heavy callers.
std::vector<char> cartesian_flags(const CatFunctor& pi);

// Deterministic choice of a Cartesian lift of alpha with codomain Y, or
// nullopt. Tie-break: over an identity base arrow the identity arrow is
// chosen (a cleavage must pick identities there); otherwise the
// lowest-indexed Cartesian arrow. `prefer_highest` flips the non-identity
// tie-break, giving a second cleavage for independence tests.
std::optional<ArrowId> cartesian_lift(const CatFunctor& pi, ArrowId alpha, ObjId Y,
                                      bool prefer_highest = false);

// A chosen Cartesian lift for every (base arrow, object over its codomain).
struct Cleavage {
  const CatFunctor* pi = nullptr;
  std::vector<ArrowId> choice;  // n_base_arrows x n_total_objects, kNone elsewhere

  ArrowId at(ArrowId alpha, ObjId Y) const {
    return choice[static_cast<size_t>(alpha) * pi->source->n_objects + Y];
  }
};

struct CleavageBuild {
  std::optional<Cleavage> cleavage;
  ArrowId missing_alpha = kNone;  // witness when no cleavage exists
  ObjId missing_Y = kNone;
};

CleavageBuild make_cleavage(const CatFunctor& pi, bool prefer_highest = false);

inline bool is_fibration(const CatFunctor& pi) { return make_cleavage(pi).cleavage.has_value(); }

// A vertical-then-Cartesian factorization v.h of some arrow.
struct VhPair {
  ArrowId vertical = kNone;
  ArrowId horizontal = kNone;
  const CatFunctor* pi = nullptr;

  ArrowId composite() const { return pi->source->compose(vertical, horizontal); }
};

// Factor z as v.h with h the cleavage-chosen lift of pi(z) and v the unique
// vertical. Throws std::logic_error if v fails to be unique (impossible for
// valid Cartesian data).
VhPair vh_factorize(const CatFunctor& pi, const Cleavage& cleavage, ArrowId z);

// All factorizations of z as vertical-then-Cartesian, in (v, h) index order.
std::vector<VhPair> all_vh_factorizations(const CatFunctor& pi, ArrowId z);

// The unique vertical Cartesian s with v1.s = v2 and s.h2 = h1, or nullopt.
// Preconditions (equal composite endpoints and base arrow) are enforced.
std::optional<ArrowId> vh_pairs_equivalent(const VhPair& p1, const VhPair& p2);

// Composition of factorizations by interpolation: k is the cleavage lift of
// pi(h1) with codomain dom(h2), w the unique vertical with w.k = h1.v2, and
// the result is (v1.w, k.h2). The composite is asserted to equal
// composite(p1).composite(p2).
VhPair compose_vh_pairs(const CatFunctor& pi, const Cleavage& cleavage,
                        const VhPair& p1, const VhPair& p2);

// Inverse arrow, if any.
std::optional<ArrowId> inverse(const FiniteCategory& cat, ArrowId f);

// Reindexing of a vertical w: X -> X' over cod(alpha) along alpha: the unique
// vertical alpha*(w) with alpha*(w).h_X' = h_X.w, where h_X, h_X' are the
// cleavage-chosen lifts.
ArrowId reindex_vertical(const CatFunctor& pi, const Cleavage& cleavage,
                         ArrowId alpha, ArrowId w);

}  // namespace fibcat
