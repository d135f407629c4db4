#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fibcat/vect.hpp"

using namespace fibcat;

TEST_CASE("field axioms hold for every supported order") {
  for (int q : {2, 3, 4, 5}) {
    GaloisField gf = GaloisField::make(q);
    for (int a = 0; a < q; ++a) {
      CHECK(gf.add(a, 0) == a);
      CHECK(gf.mul(a, 1) == a);
      CHECK(gf.add(a, gf.neg(a)) == 0);
      if (a != 0) CHECK(gf.mul(a, gf.inv(a)) == 1);
      for (int b = 0; b < q; ++b) {
        CHECK(gf.add(a, b) == gf.add(b, a));
        CHECK(gf.mul(a, b) == gf.mul(b, a));
        for (int c = 0; c < q; ++c) {
          CHECK(gf.add(gf.add(a, b), c) == gf.add(a, gf.add(b, c)));
          CHECK(gf.mul(gf.mul(a, b), c) == gf.mul(a, gf.mul(b, c)));
          CHECK(gf.mul(a, gf.add(b, c)) == gf.add(gf.mul(a, b), gf.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("dagger on objects") {
  FinVectorBundle v{2, 2, {0, 0}};
  CHECK(dagger_object(v).dims == std::vector<int>{0, 0});
  FinVectorBundle w{2, 2, {1, 2}};
  CHECK(dagger_object(w).dims == std::vector<int>{1, 2});
}

TEST_CASE("dagger on morphisms transposes componentwise") {
  GaloisField gf = GaloisField::make(2);

  FinVectorBundle x{1, 2, {1}};
  FinVectorBundle y{1, 2, {2}};
  LinearBundleMap t{FinFunction::identity(1), {Matrix{2, 1, {1, 1}}}};
  LinearComorphism d = dagger_morphism(t);
  CHECK(d.mats[0] == Matrix{1, 2, {1, 1}});

  // Identity maps to the identity comorphism.
  CHECK(dagger_morphism(identity_linear_map(y)) == identity_linear_comorphism(y));

  // Round trip through reverse_dagger.
  CHECK(reverse_dagger(d) == t);
  (void)x;
  (void)gf;
}

TEST_CASE("dagger is a functor into the dual fibration") {
  GaloisField gf = GaloisField::make(2);

  // Exhaustive over all matrices for fixed shapes: X (2,1) -> Y (1,2) over
  // alpha, then Y -> Z (2,2) over beta, bases of size 2.
  FinVectorBundle x{2, 2, {2, 1}}, y{2, 2, {1, 2}}, z{2, 2, {2, 2}};
  std::vector<FinFunction> maps2;
  for (int v0 = 0; v0 < 2; ++v0)
    for (int v1 = 0; v1 < 2; ++v1) maps2.push_back(FinFunction{2, 2, {v0, v1}});

  auto all_mats = [&](int rows, int cols) {
    std::vector<Matrix> out;
    int n = rows * cols;
    for (int bits = 0; bits < (1 << n); ++bits) {
      Matrix m = Matrix::zero(rows, cols);
      for (int i = 0; i < n; ++i) m.entries[i] = (bits >> i) & 1;
      out.push_back(std::move(m));
    }
    return out;
  };

  int checked = 0;
  for (const FinFunction& alpha : maps2) {
    for (const FinFunction& beta : maps2) {
      auto t0s = all_mats(y.dims[alpha(0)], x.dims[0]);
      auto t1s = all_mats(y.dims[alpha(1)], x.dims[1]);
      auto u0s = all_mats(z.dims[beta(0)], y.dims[0]);
      auto u1s = all_mats(z.dims[beta(1)], y.dims[1]);
      // Sample the big product deterministically: stride through it.
      size_t stride = 7;
      size_t total = t0s.size() * t1s.size() * u0s.size() * u1s.size();
      for (size_t k = 0; k < total; k += stride) {
        size_t rem = k;
        const Matrix& t0 = t0s[rem % t0s.size()];
        rem /= t0s.size();
        const Matrix& t1 = t1s[rem % t1s.size()];
        rem /= t1s.size();
        const Matrix& u0 = u0s[rem % u0s.size()];
        rem /= u0s.size();
        const Matrix& u1 = u1s[rem % u1s.size()];
        LinearBundleMap t{alpha, {t0, t1}}, u{beta, {u0, u1}};
        LinearBundleMap tu = compose_linear_maps(gf, t, u);
        LinearComorphism lhs = dagger_morphism(tu);
        LinearComorphism rhs =
            compose_linear_comorphisms(gf, dagger_morphism(t), dagger_morphism(u));
        CHECK(lhs == rhs);
        // Elementwise, the comorphism layer agrees with the family layer.
        FamilyComorphism fam_lhs = linear_comorphism_elementwise(gf, x, z, lhs);
        FamilyComorphism fam_rhs = compose_family_comorphisms(
            linear_comorphism_elementwise(gf, x, y, dagger_morphism(t)),
            linear_comorphism_elementwise(gf, y, z, dagger_morphism(u)));
        CHECK(fam_lhs == fam_rhs);
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("pullback squares map to Cartesian comorphisms") {
  GaloisField gf = GaloisField::make(2);

  FinVectorBundle y{1, 2, {2}};
  LinearBundleMap t{FinFunction::constant(2, 1, 0),
                    {Matrix{2, 2, {1, 1, 0, 1}}, Matrix{2, 2, {1, 1, 0, 1}}}};
  CartesianPreservation cp = check_cartesian_preservation(gf, t);
  CHECK(cp.declared_pullback_ok);
  CHECK(cp.image_cartesian);

  CartesianPreservation cid =
      check_cartesian_preservation(gf, identity_linear_map(y));
  CHECK(cid.declared_pullback_ok);
  CHECK(cid.image_cartesian);

  LinearBundleMap bad{FinFunction::constant(2, 1, 0),
                      {Matrix{2, 2, {1, 1, 0, 1}}, Matrix{2, 2, {1, 1, 1, 0}}}};
  bad.mats[1] = Matrix{2, 2, {1, 1, 1, 1}};  // singular over F_2
  CartesianPreservation cb = check_cartesian_preservation(gf, bad);
  CHECK_FALSE(cb.declared_pullback_ok);
  CHECK(cb.bad_fiber == 1);
}

TEST_CASE("combinatorial tangent and cotangent") {
  TangentData diag = tangent_from_omega(NeighborhoodRelation::diagonal(3), 2);
  CHECK(diag.tangent.dims == std::vector<int>{0, 0, 0});

  NeighborhoodRelation chain = NeighborhoodRelation::chain(3);
  TangentData t = tangent_from_omega(chain, 2);
  CHECK(t.cotangent.dims == std::vector<int>{1, 2, 1});
  CHECK(t.tangent.dims == std::vector<int>{1, 2, 1});

  // Cotangent fibers are exactly the basepoint-vanishing jet fibers of the
  // constant line bundle.
  PointedBundle line{FinFamilyBundle{3, {2, 2, 2}}, {0, 0, 0}};
  OmegaBundle om = omega1(chain, line);
  for (int b = 0; b < 3; ++b)
    CHECK(om.bundle.fibers[b] == t.cotangent.fiber_elems(b));
}

TEST_CASE("cotangent action matches the jet-level subfunctor") {
  NeighborhoodRelation chain = NeighborhoodRelation::chain(3);
  GaloisField gf = GaloisField::make(2);
  TangentData t = tangent_from_omega(chain, 2);
  PointedBundle line{FinFamilyBundle{3, {2, 2, 2}}, {0, 0, 0}};

  // Relation-preserving maps act on forms by precomposition; the linear
  // matrices must agree elementwise with the omega1 action on the constant
  // bundle along the Cartesian comorphism of alpha.
  for (const FinFunction& alpha :
       {FinFunction::identity(3), FinFunction{3, 3, {0, 0, 1}}, FinFunction{3, 3, {1, 1, 1}},
        FinFunction{3, 3, {2, 1, 0}}}) {
    REQUIRE(relation_preserved(chain, chain, alpha).preserved);
    LinearComorphism ct = cotangent_comorphism(chain, chain, alpha, 2);
    FamilyComorphism lin_elem =
        linear_comorphism_elementwise(gf, t.cotangent, t.cotangent, ct);

    FamilyComorphism cart{alpha, {}};
    for (int a = 0; a < 3; ++a) cart.components.push_back(FinFunction::identity(2));
    FamilyComorphism om_act = omega1_comorphism(chain, chain, cart, line, line);
    CHECK(lin_elem == om_act);
  }

  // Functoriality: the action of a composite is the composite action.
  FinFunction a1{3, 3, {0, 0, 1}}, a2{3, 3, {1, 2, 2}};
  REQUIRE(relation_preserved(chain, chain, a2).preserved);
  LinearComorphism lhs = cotangent_comorphism(chain, chain, a1.then(a2), 2);
  LinearComorphism rhs = compose_linear_comorphisms(
      gf, cotangent_comorphism(chain, chain, a1, 2), cotangent_comorphism(chain, chain, a2, 2));
  CHECK(lhs == rhs);

  // Tangent maps compose forward.
  LinearBundleMap tl = tangent_map(chain, chain, a1.then(a2), 2);
  LinearBundleMap tr = compose_linear_maps(gf, tangent_map(chain, chain, a1, 2),
                                           tangent_map(chain, chain, a2, 2));
  CHECK(tl == tr);
}

TEST_CASE("jet fibers of vector bundles are vector spaces pointwise") {
  NeighborhoodRelation chain = NeighborhoodRelation::chain(3);
  GaloisField gf = GaloisField::make(2);
  FinVectorBundle x{3, 2, {1, 2, 1}};
  FinVectorBundle y{3, 2, {2, 1, 1}};
  JetBundle jx = jet_object(chain, x.as_family());
  JetBundle jy = jet_object(chain, y.as_family());

  auto section_add = [&](const JetBundle& j, const FinVectorBundle& v, int b, int s1,
                         int s2) {
    std::vector<int> d1 = j.sections[b].decode(s1);
    std::vector<int> d2 = j.sections[b].decode(s2);
    const auto& pos = j.sections[b].positions;
    for (size_t i = 0; i < d1.size(); ++i) {
      std::vector<int> v1 = decode_vector(2, v.dims[pos[i]], d1[i]);
      std::vector<int> v2 = decode_vector(2, v.dims[pos[i]], d2[i]);
      for (size_t k = 0; k < v1.size(); ++k) v1[k] = gf.add(v1[k], v2[k]);
      d1[i] = encode_vector(2, v1);
    }
    return j.sections[b].encode(d1);
  };

  std::mt19937_64 rng(113);
  for (int trial = 0; trial < 10; ++trial) {
    LinearComorphism c{FinFunction::identity(3), {}};
    for (int b = 0; b < 3; ++b) {
      Matrix m = Matrix::zero(x.dims[b], y.dims[b]);
      for (int& e : m.entries) e = static_cast<int>(rng() % 2);
      c.mats.push_back(std::move(m));
    }
    FamilyComorphism f = linear_comorphism_elementwise(gf, x, y, c);
    FamilyComorphism jf = jet_comorphism(chain, chain, f, x.as_family(), y.as_family());
    for (int b = 0; b < 3; ++b)
      for (int s1 = 0; s1 < jy.bundle.fibers[b]; ++s1)
        for (int s2 = 0; s2 < jy.bundle.fibers[b]; ++s2)
          CHECK(jf.components[b](section_add(jy, y, b, s1, s2)) ==
                section_add(jx, x, b, jf.components[b](s1), jf.components[b](s2)));
  }
}
