#pragma once

// Vector bundles over small Galois fields, fibrewise linear dualization as a
// functor into the dual fibration (matrix transpose in the standard bases),
// and the combinatorial tangent/cotangent bundles built from basepoint-
// vanishing jets of the constant line bundle.

#include "fibcat/jets.hpp"

namespace fibcat {

// Table arithmetic for q in {2, 3, 4, 5}. GF(4) is F_2[x]/(x^2+x+1) with
// elements 0, 1, x = 2, x+1 = 3.
struct GaloisField {
  int q = 2;
  std::vector<int> add_t, mul_t, neg_t, inv_t;

  static GaloisField make(int q);
  int add(int a, int b) const { return add_t[a * q + b]; }
  int mul(int a, int b) const { return mul_t[a * q + b]; }
  int neg(int a) const { return neg_t[a]; }
  int inv(int a) const { return inv_t[a]; }  // kNone for 0
};

// Coordinate vectors are enumerated lexicographically, first coordinate most
// significant.
std::vector<int> decode_vector(int q, int dim, int idx);
int encode_vector(int q, const std::vector<int>& v);

struct Matrix {
  int rows = 0, cols = 0;
  std::vector<int> entries;  // row-major

  static Matrix identity(int n);
  static Matrix zero(int rows, int cols);
  int at(int r, int c) const { return entries[r * cols + c]; }
  int& at(int r, int c) { return entries[r * cols + c]; }
  Matrix transposed() const;
  std::vector<int> apply(const GaloisField& gf, const std::vector<int>& x) const;
  Matrix then(const GaloisField& gf, const Matrix& second) const;  // apply this, then second
  bool invertible(const GaloisField& gf) const;
  bool operator==(const Matrix&) const = default;
};

struct FinVectorBundle {
  int base_size = 0;
  int field_order = 2;
  std::vector<int> dims;

  int fiber_elems(int a) const;
  FinFamilyBundle as_family() const;
  bool operator==(const FinVectorBundle&) const = default;
};

// Fiberwise linear map over alpha: t_a: X_a -> Y_{alpha(a)} as a
// dim(Y_{alpha(a)}) x dim(X_a) matrix acting on coordinates.
struct LinearBundleMap {
  FinFunction base_map;
  std::vector<Matrix> mats;
  bool operator==(const LinearBundleMap&) const = default;
};

// Linear comorphism X -|-> Y over alpha: components Y_{alpha(a)} -> X_a,
// stored as dim(X_a) x dim(Y_{alpha(a)}) matrices.
struct LinearComorphism {
  FinFunction base_map;
  std::vector<Matrix> mats;
  bool operator==(const LinearComorphism&) const = default;
};

LinearBundleMap identity_linear_map(const FinVectorBundle& x);
LinearBundleMap compose_linear_maps(const GaloisField& gf, const LinearBundleMap& t,
                                    const LinearBundleMap& u);
LinearComorphism identity_linear_comorphism(const FinVectorBundle& x);
LinearComorphism compose_linear_comorphisms(const GaloisField& gf,
                                            const LinearComorphism& f,
                                            const LinearComorphism& g);

// Elementwise (set-level) views, for interop with the family and jet layers.
FamilyMap linear_map_elementwise(const GaloisField& gf, const FinVectorBundle& x,
                                 const FinVectorBundle& y, const LinearBundleMap& t);
FamilyComorphism linear_comorphism_elementwise(const GaloisField& gf,
                                               const FinVectorBundle& x,
                                               const FinVectorBundle& y,
                                               const LinearComorphism& c);

// Fibrewise linear dual: same base, same dims, elements read as covectors in
// the dual basis.
FinVectorBundle dagger_object(const FinVectorBundle& v);

// The dagger comorphism X-dagger -|-> Y-dagger over alpha of a bundle map
// t: X -> Y: components are the matrix transposes t_a^T.
LinearComorphism dagger_morphism(const LinearBundleMap& t);

// The opposite direction V* -> V: transposes a linear comorphism back into a
// bundle map; the round trip with dagger_morphism is the identity.
LinearBundleMap reverse_dagger(const LinearComorphism& c);

struct CartesianPreservation {
  bool declared_pullback_ok = true;  // every t_a invertible
  int bad_fiber = kNone;
  bool image_cartesian = false;  // dagger comorphism fiberwise invertible
};

CartesianPreservation check_cartesian_preservation(const GaloisField& gf,
                                                   const LinearBundleMap& t);

// Combinatorial cotangent of a base with neighborhood relation R: the fiber
// at b is the space of F_q-valued sections on M(b) vanishing at b, of
// dimension |M(b)|-1 with coordinates indexed by M(b) \ {b} in order. The
// tangent bundle is its fiberwise dagger.
struct TangentData {
  NeighborhoodRelation relation;
  GaloisField field;
  FinVectorBundle cotangent;
  FinVectorBundle tangent;
};

TangentData tangent_from_omega(const NeighborhoodRelation& r, int q);

// Star-functorial action of the cotangent on a relation-preserving base map:
// precomposition by alpha, with the matrix entry at (a', b') equal to
// [alpha(a') = b'].
LinearComorphism cotangent_comorphism(const NeighborhoodRelation& ra,
                                      const NeighborhoodRelation& rb,
                                      const FinFunction& alpha, int q);

// Forward tangent map, the fiberwise transpose of the cotangent action.
LinearBundleMap tangent_map(const NeighborhoodRelation& ra, const NeighborhoodRelation& rb,
                            const FinFunction& alpha, int q);

}  // namespace fibcat
