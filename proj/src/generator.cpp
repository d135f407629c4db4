#include "fibcat/generator.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace fibcat {

namespace {

int pick(std::mt19937_64& rng, int n) {
  return static_cast<int>(rng() % static_cast<unsigned long long>(n));
}

// Free category on a DAG over `n` objects with the given multi-edges
// (dom < cod). Arrows are identities followed by all edge paths in BFS
// order; composition is path concatenation.
struct FreeBase {
  FiniteCategory cat;
  // arrow -> edge sequence (empty for identities)
  std::vector<std::vector<int>> path_of;
};

FreeBase free_base(int n, const std::vector<std::pair<int, int>>& edges) {
  FreeBase fb;
  for (int i = 0; i < n; ++i) fb.cat.add_object();
  for (int i = 0; i < n; ++i) {
    fb.cat.add_identity(i);
    fb.path_of.push_back({});
  }
  std::map<std::vector<int>, ArrowId> index_of;
  std::vector<std::vector<int>> frontier;
  for (size_t e = 0; e < edges.size(); ++e) frontier.push_back({static_cast<int>(e)});
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (auto& p : frontier) {
      ArrowId a = fb.cat.add_arrow(edges[p.front()].first, edges[p.back()].second);
      index_of[p] = a;
      fb.path_of.push_back(p);
      for (size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].first == edges[p.back()].second) {
          auto q = p;
          q.push_back(static_cast<int>(e));
          next.push_back(std::move(q));
        }
      }
    }
    frontier = std::move(next);
  }
  fb.cat.init_comp();
  for (ArrowId f = 0; f < fb.cat.n_arrows(); ++f) {
    for (ArrowId g = 0; g < fb.cat.n_arrows(); ++g) {
      if (!fb.cat.composable(f, g)) continue;
      if (fb.path_of[f].empty() || fb.path_of[g].empty()) continue;  // handled by init_comp
      auto p = fb.path_of[f];
      p.insert(p.end(), fb.path_of[g].begin(), fb.path_of[g].end());
      fb.cat.set_comp(f, g, index_of.at(p));
    }
  }
  return fb;
}

FiniteCategory random_preorder(std::mt19937_64& rng) {
  int n = 1 + pick(rng, 3);
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) leq[i][i] = 1;
  int extra = pick(rng, n * n);
  for (int t = 0; t < extra; ++t) leq[pick(rng, n)][pick(rng, n)] = 1;
  // transitive closure
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = 1;

  FiniteCategory c;
  for (int i = 0; i < n; ++i) c.add_object();
  for (int i = 0; i < n; ++i) c.add_identity(i);
  std::vector<std::vector<ArrowId>> arrow_of(n, std::vector<ArrowId>(n, kNone));
  for (int i = 0; i < n; ++i) arrow_of[i][i] = c.identity[i];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && leq[i][j]) arrow_of[i][j] = c.add_arrow(i, j);
  c.init_comp();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (arrow_of[i][j] != kNone && arrow_of[j][k] != kNone)
          c.set_comp(arrow_of[i][j], arrow_of[j][k], arrow_of[i][k]);
  return c;
}

FiniteCategory two_element_group() {
  FiniteCategory c;
  ObjId o = c.add_object();
  c.add_identity(o);
  ArrowId g = c.add_arrow(o, o);
  c.init_comp();
  c.set_comp(g, g, c.identity[o]);
  return c;
}

FiniteCategory walking_idempotent() {
  FiniteCategory c;
  ObjId o = c.add_object();
  c.add_identity(o);
  ArrowId e = c.add_arrow(o, o);
  c.init_comp();
  c.set_comp(e, e, e);
  return c;
}

FiniteCategory parallel_pair() {
  FiniteCategory c;
  c.add_object();
  c.add_object();
  c.add_identity(0);
  c.add_identity(1);
  c.add_arrow(0, 1);
  c.add_arrow(0, 1);
  c.init_comp();
  return c;
}

FiniteCategory random_fiber(std::mt19937_64& rng) {
  switch (pick(rng, 6)) {
    case 0: return two_element_group();
    case 1: return walking_idempotent();
    case 2: return parallel_pair();
    default: return random_preorder(rng);
  }
}

}  // namespace

std::vector<CatFunctor> all_functors(const FiniteCategory& C, const FiniteCategory& D) {
  std::vector<CatFunctor> out;
  std::vector<ArrowId> non_id;
  for (ArrowId f = 0; f < C.n_arrows(); ++f)
    if (!C.is_identity(f)) non_id.push_back(f);

  std::vector<ObjId> omap(C.n_objects, 0);
  std::vector<ArrowId> amap(C.n_arrows(), kNone);

  auto emit_if_valid = [&]() {
    CatFunctor F;
    F.source = &C;
    F.target = &D;
    F.obj_map = omap;
    F.arr_map = amap;
    for (ObjId o = 0; o < C.n_objects; ++o) F.arr_map[C.identity[o]] = D.identity[omap[o]];
    if (validate_functor(F).pass) out.push_back(std::move(F));
  };

  auto assign_arrows = [&](auto&& self, size_t i) -> void {
    if (i == non_id.size()) {
      emit_if_valid();
      return;
    }
    ArrowId f = non_id[i];
    for (ArrowId g : D.hom(omap[C.dom(f)], omap[C.cod(f)])) {
      amap[f] = g;
      self(self, i + 1);
    }
    amap[f] = kNone;
  };

  auto assign_objects = [&](auto&& self, int o) -> void {
    if (o == C.n_objects) {
      assign_arrows(assign_arrows, 0);
      return;
    }
    for (ObjId d = 0; d < D.n_objects; ++d) {
      omap[o] = d;
      self(self, o + 1);
    }
  };

  if (C.n_objects == 0) {
    emit_if_valid();
    return out;
  }
  assign_objects(assign_objects, 0);
  return out;
}

RelabeledCategory random_relabel(const FiniteCategory& cat, std::mt19937_64& rng) {
  std::vector<int> operm(cat.n_objects), aperm(cat.n_arrows());
  std::iota(operm.begin(), operm.end(), 0);
  std::iota(aperm.begin(), aperm.end(), 0);
  std::shuffle(operm.begin(), operm.end(), rng);
  std::shuffle(aperm.begin(), aperm.end(), rng);

  auto relabeled = std::make_unique<FiniteCategory>();
  relabeled->n_objects = cat.n_objects;
  relabeled->identity.assign(cat.n_objects, kNone);
  relabeled->arrows.resize(cat.arrows.size());
  for (ArrowId f = 0; f < cat.n_arrows(); ++f)
    relabeled->arrows[aperm[f]] = {operm[cat.dom(f)], operm[cat.cod(f)]};
  for (ObjId o = 0; o < cat.n_objects; ++o)
    relabeled->identity[operm[o]] = aperm[cat.identity[o]];
  relabeled->comp.assign(cat.comp.size(), kNone);
  for (ArrowId f = 0; f < cat.n_arrows(); ++f)
    for (ArrowId g = 0; g < cat.n_arrows(); ++g)
      if (cat.compose(f, g) != kNone)
        relabeled->set_comp(aperm[f], aperm[g], aperm[cat.compose(f, g)]);

  RelabeledCategory rc;
  rc.cat = std::move(relabeled);
  rc.iso.source = &cat;
  rc.iso.target = rc.cat.get();
  rc.iso.obj_map = operm;
  rc.iso.arr_map = aperm;
  return rc;
}

GeneratedFibration generate_fibration(std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    // Base: free category on a random DAG, capped at 3 objects / 6 arrows.
    int n = 1 + pick(rng, 3);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        int mult = pick(rng, 3);  // 0..2 parallel edges
        for (int m = 0; m < mult; ++m) edges.emplace_back(i, j);
      }
    FreeBase fb = free_base(n, edges);
    if (fb.cat.n_arrows() > 6) continue;

    // Fibers and edge functors (contravariant: edge A -> B gets F_B -> F_A).
    std::vector<FiniteCategory> fibers;
    fibers.reserve(n);
    for (int i = 0; i < n; ++i) fibers.push_back(random_fiber(rng));

    std::vector<CatFunctor> edge_fun;
    bool ok = true;
    for (auto [a, b] : edges) {
      auto fs = all_functors(fibers[b], fibers[a]);
      if (fs.empty()) {
        ok = false;
        break;
      }
      edge_fun.push_back(fs[pick(rng, static_cast<int>(fs.size()))]);
    }
    if (!ok) continue;

    // Phi on a path = composite of the edge functors, rightmost edge first.
    auto phi_obj = [&](ArrowId alpha, ObjId y) {
      for (auto it = fb.path_of[alpha].rbegin(); it != fb.path_of[alpha].rend(); ++it)
        y = edge_fun[*it].obj_map[y];
      return y;
    };
    auto phi_arr = [&](ArrowId alpha, ArrowId v) {
      for (auto it = fb.path_of[alpha].rbegin(); it != fb.path_of[alpha].rend(); ++it)
        v = edge_fun[*it].arr_map[v];
      return v;
    };

    // Grothendieck total category.
    std::vector<int> obj_offset(n, 0);
    int n_total_obj = 0;
    for (int i = 0; i < n; ++i) {
      obj_offset[i] = n_total_obj;
      n_total_obj += fibers[i].n_objects;
    }

    struct TArrow {
      ArrowId alpha;
      ArrowId u;  // arrow of fiber dom(alpha): x -> Phi_alpha(y)
      ObjId y;    // fiber object over cod(alpha)
    };
    std::vector<TArrow> tarrows;
    std::map<std::tuple<ArrowId, ArrowId, ObjId>, ArrowId> tindex;
    for (ArrowId alpha = 0; alpha < fb.cat.n_arrows(); ++alpha) {
      const FiniteCategory& FA = fibers[fb.cat.dom(alpha)];
      const FiniteCategory& FB = fibers[fb.cat.cod(alpha)];
      for (ObjId y = 0; y < FB.n_objects; ++y) {
        ObjId py = phi_obj(alpha, y);
        for (ArrowId u = 0; u < FA.n_arrows(); ++u) {
          if (FA.cod(u) != py) continue;
          tindex[{alpha, u, y}] = static_cast<ArrowId>(tarrows.size());
          tarrows.push_back({alpha, u, y});
        }
      }
    }
    if (static_cast<int>(tarrows.size()) > 40 || tarrows.empty()) continue;

    auto total = std::make_unique<FiniteCategory>();
    for (int i = 0; i < n_total_obj; ++i) total->add_object();
    total->identity.assign(n_total_obj, kNone);
    for (const TArrow& t : tarrows) {
      int A = fb.cat.dom(t.alpha), B = fb.cat.cod(t.alpha);
      total->arrows.push_back({obj_offset[A] + fibers[A].dom(t.u), obj_offset[B] + t.y});
    }
    for (int A = 0; A < n; ++A)
      for (ObjId x = 0; x < fibers[A].n_objects; ++x)
        total->identity[obj_offset[A] + x] =
            tindex.at({fb.cat.identity[A], fibers[A].identity[x], x});
    total->init_comp();
    for (size_t i = 0; i < tarrows.size(); ++i) {
      for (size_t j = 0; j < tarrows.size(); ++j) {
        const TArrow& s = tarrows[i];
        const TArrow& t = tarrows[j];
        if (!total->composable(static_cast<ArrowId>(i), static_cast<ArrowId>(j))) continue;
        ArrowId ab = fb.cat.compose(s.alpha, t.alpha);
        const FiniteCategory& FA = fibers[fb.cat.dom(s.alpha)];
        ArrowId u = FA.compose(s.u, phi_arr(s.alpha, t.u));
        total->set_comp(static_cast<ArrowId>(i), static_cast<ArrowId>(j),
                        tindex.at({ab, u, t.y}));
      }
    }

    GeneratedFibration g;
    g.base = std::make_unique<FiniteCategory>(std::move(fb.cat));
    g.total = std::move(total);
    g.pi.source = g.total.get();
    g.pi.target = g.base.get();
    g.pi.obj_map.resize(n_total_obj);
    for (int A = 0; A < n; ++A)
      for (ObjId x = 0; x < fibers[A].n_objects; ++x) g.pi.obj_map[obj_offset[A] + x] = A;
    for (const TArrow& t : tarrows) g.pi.arr_map.push_back(t.alpha);
    return g;
  }
  throw std::logic_error("generate_fibration: exhausted attempts");
}

}  // namespace fibcat
