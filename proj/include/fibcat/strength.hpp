#pragma once

// Strength on finite-set endofunctors and the flow transform. Endofunctors
// are computable object/arrow actions with canonical element enumerations:
// products are pairs with the left factor most significant, exponentials are
// function tables with position 0 most significant. With these encodings the
// unit and associativity isomorphisms are literally identities, so the laws
// below are exact table equalities.

#include <functional>
#include <stdexcept>
#include <string>

#include "fibcat/finset.hpp"

namespace fibcat {

struct ProductNotPreserved : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FinEndofunctor {
  std::string name;
  std::function<int(int)> size0;                        // |F0(X)| from |X|
  std::function<FinFunction(const FinFunction&)> map0;  // F0(f)
};

// A bundle functor: endofunctor plus natural projection F0(B) -> B.
struct BundleFunctor {
  FinEndofunctor f0;
  std::function<FinFunction(int)> proj;
};

// A natural section z_B: B -> F0(B) of the bundle projection.
struct SectionNat {
  std::function<FinFunction(int)> z;
};

// Tensorial strength as a generator of instance tables t''_{Q,B}:
// Q x F0(B) -> F0(Q x B).
struct StrengthData {
  std::function<FinFunction(int q, int b)> tensorial;
};

// --- canonical product/exponential encodings --------------------------------

inline int pair_index(int q, int b, int b_size) { return q * b_size + b; }
FinFunction product_map(const FinFunction& f, const FinFunction& g, int = 0);
FinFunction proj1_map(int q_size, int b_size);
FinFunction proj2_map(int q_size, int b_size);

int exp_size(int b_size, int d_size);
FinFunction eval_map(int d_size, int b_size);            // D x (D^|B) -> B
FinFunction eval_at(int d_size, int b_size, int d);      // (D^|B) -> B
FinFunction exp_post(int d_size, const FinFunction& g);  // postcompose g
FinFunction exp_pre(const FinFunction& h, int b_size);   // precompose h

// --- built-in functors -------------------------------------------------------

FinEndofunctor identity_endofunctor();
FinEndofunctor square_endofunctor();        // X |-> X x X
FinEndofunctor option_endofunctor();        // X |-> X + 1, the point last
FinEndofunctor power_endofunctor(int d);    // X |-> X^D
FinEndofunctor constant_endofunctor(int k); // X |-> X x K

// Composite G after F, with the composed enumeration.
FinEndofunctor compose_endofunctors(const FinEndofunctor& inner,
                                    const FinEndofunctor& outer);

BundleFunctor identity_bundle_functor();
BundleFunctor square_bundle_functor();          // projection on the first factor
BundleFunctor power_bundle_functor(int d);      // evaluation at 0
BundleFunctor constant_bundle_functor(int k);   // trivial bundle, Cartesian

SectionNat identity_section();
SectionNat diagonal_section();                 // b |-> (b, b)
SectionNat constant_function_section(int d);   // b |-> constant function at b

// The standard strength of the option functor.
StrengthData option_strength();

// --- operations ---------------------------------------------------------------

// Naturality in both variables, the unit law at Q = 1 and associativity,
// exhaustively for all set sizes 0..max_size and all functions between them.
ValidationReport check_tensorial_strength(const FinEndofunctor& F, const StrengthData& t,
                                          int max_size);

// Section property and naturality of z.
ValidationReport check_section(const BundleFunctor& F, const SectionNat& z, int max_size);

// The (tdoubx) triangle: t''_{Q,B} followed by the projection of F(QxB)
// equals id_Q x proj_B. When it commutes, the same tables constitute the
// fibrational strength of the bundle functor.
ValidationReport tensorial_fibrational_bridge(const BundleFunctor& F, const StrengthData& t,
                                              int max_size);

// Canonical comparison F0(Q x B) -> Q x F0(B) of a bundle functor,
// u |-> (q-component of proj(u), F0(p2)(u)).
FinFunction canonical_comparison(const BundleFunctor& F, int q, int b);

// For a Cartesian bundle functor the comparison is invertible and its
// inverse is a strength; throws ProductNotPreserved-style logic errors when
// the comparison is not bijective at materialization time.
StrengthData strength_from_cartesian(const BundleFunctor& F);

// Zero-section strength of a product-preserving bundle functor:
// t''_{Q,B} = (z_Q x id) followed by the inverse product comparison.
// Materialization throws ProductNotPreserved when the canonical comparison
// F0(QxB) -> F0(Q) x F0(B) fails to be a bijection.
StrengthData zero_section_strength(const BundleFunctor& F, const SectionNat& z);

// Strength of the composite outer-after-inner.
StrengthData compose_strengths(const FinEndofunctor& inner, const StrengthData& t_inner,
                               const FinEndofunctor& outer, const StrengthData& t_outer);

// Flow transform: the exponential transpose of t''_{D, D^|B} followed by
// F0(ev), a map F0(D^|B) -> D^|F0(B).
FinFunction flow_transform(const FinEndofunctor& F, const StrengthData& t, int d_size,
                           int b_size);

// Prolongation of a vector field xi: M -> D^|M (a section of evaluation at
// 0): F0(xi) followed by the flow transform. Throws std::invalid_argument if
// xi is not a section.
FinFunction prolong_field(const FinEndofunctor& F, const StrengthData& t, int d_size,
                          const FinFunction& xi);

// Regularity: a Q-parametrized family h: Q x M -> N transforms into the
// family t''_{Q,M} followed by F0(h): Q x F0(M) -> F0(N).
FinFunction transform_family(const FinEndofunctor& F, const StrengthData& t,
                             const FinFunction& h, int q_size, int m_size);

}  // namespace fibcat
