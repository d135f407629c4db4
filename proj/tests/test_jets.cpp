#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fibcat/jets.hpp"

using namespace fibcat;

namespace {

// All Lipschitz-1 self-maps of the n-chain (the relation-preserving maps for
// the chain neighborhood relation).
std::vector<FinFunction> chain_endomaps(int n) {
  NeighborhoodRelation r = NeighborhoodRelation::chain(n);
  std::vector<FinFunction> out;
  std::vector<int> v(n, 0);
  while (true) {
    FinFunction f{n, n, v};
    if (relation_preserved(r, r, f).preserved) out.push_back(f);
    bool more = false;
    for (size_t i = v.size(); i-- > 0;) {
      if (++v[i] < n) {
        more = true;
        break;
      }
      v[i] = 0;
    }
    if (!more) break;
  }
  return out;
}

std::vector<FamilyComorphism> sample_comorphisms(const FinFunction& alpha,
                                                 const FinFamilyBundle& x,
                                                 const FinFamilyBundle& y,
                                                 std::mt19937_64& rng, int count) {
  std::vector<FamilyComorphism> out;
  for (int t = 0; t < count; ++t) {
    FamilyComorphism f{alpha, {}};
    bool ok = true;
    for (int a = 0; a < alpha.dom_size; ++a) {
      int d = y.fibers[alpha(a)], c = x.fibers[a];
      if (d > 0 && c == 0) {
        ok = false;
        break;
      }
      FinFunction fn{d, c, std::vector<int>(d)};
      for (int i = 0; i < d; ++i) fn.values[i] = static_cast<int>(rng() % c);
      f.components.push_back(std::move(fn));
    }
    if (ok) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

TEST_CASE("jet fibers: diagonal, chain, empty factor") {
  FinFamilyBundle x{3, {2, 2, 2}};

  JetBundle diag = jet_object(NeighborhoodRelation::diagonal(3), x);
  CHECK(diag.bundle.fibers == std::vector<int>{2, 2, 2});

  JetBundle chain = jet_object(NeighborhoodRelation::chain(3), x);
  CHECK(chain.bundle.fibers == std::vector<int>{4, 8, 4});

  FinFamilyBundle xe{3, {2, 0, 2}};
  JetBundle je = jet_object(NeighborhoodRelation::chain(3), xe);
  CHECK(je.bundle.fibers == std::vector<int>{0, 0, 0});
}

TEST_CASE("count law on random relations and bundles") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + rng() % 4;
    std::vector<std::pair<int, int>> pairs;
    int extra = static_cast<int>(rng() % (n * n));
    for (int t = 0; t < extra; ++t)
      pairs.emplace_back(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
    NeighborhoodRelation r = NeighborhoodRelation::from_pairs(n, pairs);
    FinFamilyBundle x{n, {}};
    for (int b = 0; b < n; ++b) x.fibers.push_back(static_cast<int>(rng() % 4));
    JetBundle j = jet_object(r, x);
    for (int b = 0; b < n; ++b) {
      long long prod = 1;
      for (int bp : r.neighbors(b)) prod *= x.fibers[bp];
      CHECK(j.bundle.fibers[b] == prod);
    }
  }
}

TEST_CASE("jet_object agrees with the dependent-product oracle") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + rng() % 3;
    std::vector<std::pair<int, int>> pairs;
    for (int t = 0; t < static_cast<int>(rng() % (n * n + 1)); ++t)
      pairs.emplace_back(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
    NeighborhoodRelation r = NeighborhoodRelation::from_pairs(n, pairs);
    FinFamilyBundle x{n, {}};
    for (int b = 0; b < n; ++b) x.fibers.push_back(static_cast<int>(rng() % 3) + 1);

    JetBundle j = jet_object(r, x);
    RelationSpans sp = relation_spans(r);
    PullbackResult cx = pullback(sp.c, x);
    PiResult oracle = pi_along(sp.d, cx.bundle);
    CHECK(oracle.bundle == j.bundle);

    // Canonical bijection: both enumerate sections over the neighbors of b in
    // the same order, so decoded values agree pointwise.
    for (int b = 0; b < n; ++b) {
      for (int si = 0; si < j.bundle.fibers[b]; ++si) {
        CHECK(j.sections[b].decode(si) == oracle.sections[b].decode(si));
      }
    }
  }
}

TEST_CASE("jet comorphisms: identity, verticals, functoriality on the chain") {
  NeighborhoodRelation r = NeighborhoodRelation::chain(3);
  FinFamilyBundle x{3, {2, 2, 2}};

  FamilyComorphism idj =
      jet_comorphism(r, r, identity_comorphism(x), x, x);
  CHECK(idj == identity_comorphism(jet_object(r, x).bundle));

  // Vertical comorphism: (Jf)_b(s) = b' |-> f_{b'}(s(b')).
  std::mt19937_64 rng(107);
  FinFamilyBundle y{3, {2, 3, 1}};
  for (const FamilyComorphism& f :
       sample_comorphisms(FinFunction::identity(3), x, y, rng, 10)) {
    FamilyComorphism jf = jet_comorphism(r, r, f, x, y);
    JetBundle jx = jet_object(r, x);
    JetBundle jy = jet_object(r, y);
    for (int b = 0; b < 3; ++b) {
      for (int si = 0; si < jy.bundle.fibers[b]; ++si) {
        std::vector<int> s = jy.sections[b].decode(si);
        std::vector<int> t = jx.sections[b].decode(jf.components[b](si));
        const auto& pos = jx.sections[b].positions;
        for (size_t i = 0; i < pos.size(); ++i)
          CHECK(t[i] == f.components[pos[i]](s[i]));
      }
    }
  }

  // J(f.g) = J(f).J(g) across relation-preserving base maps.
  FinFamilyBundle z{3, {1, 2, 2}};
  auto maps = chain_endomaps(3);
  CHECK(maps.size() == 17);
  for (const FinFunction& alpha : maps) {
    for (const FinFunction& beta : maps) {
      auto fs = sample_comorphisms(alpha, x, y, rng, 2);
      auto gs = sample_comorphisms(beta, y, z, rng, 2);
      for (const auto& f : fs)
        for (const auto& g : gs) {
          FamilyComorphism lhs =
              jet_comorphism(r, r, compose_family_comorphisms(f, g), x, z);
          FamilyComorphism rhs = compose_family_comorphisms(
              jet_comorphism(r, r, f, x, y), jet_comorphism(r, r, g, y, z));
          CHECK(lhs == rhs);
        }
    }
  }
}

TEST_CASE("non-preserving base maps are rejected with a witness") {
  NeighborhoodRelation r = NeighborhoodRelation::chain(3);
  FinFunction swap{3, 3, {0, 2, 1}};  // sends the adjacent pair (0,1) to (0,2)
  RelationCheck rc = relation_preserved(r, r, swap);
  CHECK_FALSE(rc.preserved);
  CHECK(r.contains(rc.violation.first, rc.violation.second));
  FinFamilyBundle x{3, {1, 1, 1}};
  CHECK_THROWS_AS(jet_comorphism(r, r, FamilyComorphism{swap,
                                                        {FinFunction::identity(1),
                                                         FinFunction::identity(1),
                                                         FinFunction::identity(1)}},
                                 x, x),
                  std::invalid_argument);
}

TEST_CASE("jet strength: unit, bijectivity, naturality") {
  NeighborhoodRelation r = NeighborhoodRelation::chain(3);
  FinFamilyBundle x{3, {2, 1, 2}};

  JetStrength s1 = jet_strength(r, 1, x);
  for (const FinFunction& c : s1.comparison.components) CHECK(c == FinFunction::identity(c.dom_size));

  JetStrength s2 = jet_strength(r, 2, x);
  for (const FinFunction& c : s2.comparison.components) CHECK(c.is_bijective());

  // Naturality in the bundle: for a vertical comorphism g: x -|-> x',
  // J(g) then comparison equals comparison then J(p*(g)), componentwise.
  std::mt19937_64 rng(109);
  FinFamilyBundle xp{3, {2, 2, 1}};
  int B = 3, Q = 2;
  NeighborhoodRelation rq = r.product_with(Q);
  FinFunction p = s2.projection;
  JetStrength s2p = jet_strength(r, Q, xp);
  for (const FamilyComorphism& g :
       sample_comorphisms(FinFunction::identity(3), x, xp, rng, 8)) {
    FamilyComorphism jg = jet_comorphism(r, r, g, x, xp);
    FamilyComorphism pg{FinFunction::identity(Q * B), {}};
    for (int qb = 0; qb < Q * B; ++qb) pg.components.push_back(g.components[qb % B]);
    FamilyComorphism jpg =
        jet_comorphism(rq, rq, pg, pullback(p, x).bundle, pullback(p, xp).bundle);
    for (int qb = 0; qb < Q * B; ++qb) {
      FinFunction route1 = jg.components[qb % B].then(s2.comparison.components[qb]);
      FinFunction route2 = s2p.comparison.components[qb].then(jpg.components[qb]);
      CHECK(route1 == route2);
    }
  }
}

TEST_CASE("omega1: fibers and the sub-functor property") {
  FinFamilyBundle e{3, {2, 2, 2}};
  PointedBundle pe{e, {0, 0, 0}};

  OmegaBundle od = omega1(NeighborhoodRelation::diagonal(3), pe);
  CHECK(od.bundle.fibers == std::vector<int>{1, 1, 1});

  NeighborhoodRelation r = NeighborhoodRelation::chain(3);
  OmegaBundle oc = omega1(r, pe);
  CHECK(oc.bundle.fibers == std::vector<int>{2, 4, 2});

  // Basepoint-preserving vertical map: well-defined on all forms.
  FamilyComorphism f{FinFunction::identity(3),
                     {FinFunction{2, 2, {0, 0}}, FinFunction{2, 2, {0, 1}},
                      FinFunction{2, 2, {0, 0}}}};
  FamilyComorphism of = omega1_comorphism(r, r, f, pe, pe);
  for (int b = 0; b < 3; ++b) {
    CHECK(of.components[b].dom_size == oc.bundle.fibers[b]);
    CHECK(of.components[b].cod_size == oc.bundle.fibers[b]);
  }

  // Non-pointed components are rejected.
  FamilyComorphism bad{FinFunction::identity(3),
                       {FinFunction{2, 2, {1, 0}}, FinFunction::identity(2),
                        FinFunction::identity(2)}};
  CHECK_THROWS_AS(omega1_comorphism(r, r, bad, pe, pe), std::invalid_argument);
}

TEST_CASE("algebraic lift: pointwise monoid structure passes through jets") {
  // Fibers carry addition mod 2; jet fibers add sectionwise. Additive
  // vertical comorphisms give additive jet maps.
  NeighborhoodRelation r = NeighborhoodRelation::chain(3);
  FinFamilyBundle x{3, {2, 2, 2}};
  JetBundle j = jet_object(r, x);

  auto add_sections = [&](int b, int s1, int s2) {
    std::vector<int> d1 = j.sections[b].decode(s1);
    std::vector<int> d2 = j.sections[b].decode(s2);
    for (size_t i = 0; i < d1.size(); ++i) d1[i] = (d1[i] + d2[i]) % 2;
    return j.sections[b].encode(d1);
  };

  // f_b(v) = v (identity) and f_b(v) = 0 are the additive maps Z2 -> Z2.
  for (const std::vector<int>& table : {std::vector<int>{0, 1}, std::vector<int>{0, 0}}) {
    FamilyComorphism f{FinFunction::identity(3),
                       {FinFunction{2, 2, table}, FinFunction{2, 2, table},
                        FinFunction{2, 2, table}}};
    FamilyComorphism jf = jet_comorphism(r, r, f, x, x);
    for (int b = 0; b < 3; ++b)
      for (int s1 = 0; s1 < j.bundle.fibers[b]; ++s1)
        for (int s2 = 0; s2 < j.bundle.fibers[b]; ++s2)
          CHECK(jf.components[b](add_sections(b, s1, s2)) ==
                add_sections(b, jf.components[b](s1), jf.components[b](s2)));
  }
}
