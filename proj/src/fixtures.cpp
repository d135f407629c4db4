#include "fibcat/fixtures.hpp"

#include <utility>

namespace fibcat::fixtures {

FiniteCategory terminal_category() {
  FiniteCategory c;
  ObjId o = c.add_object();
  c.add_identity(o);
  c.init_comp();
  return c;
}

FiniteCategory walking_arrow() {
  FiniteCategory c;
  ObjId a = c.add_object();
  ObjId b = c.add_object();
  c.add_identity(a);
  c.add_identity(b);
  c.add_arrow(a, b);  // u
  c.init_comp();
  return c;
}

FiniteCategory poset_category(int n, const std::vector<std::pair<int, int>>& leq) {
  FiniteCategory c;
  for (int i = 0; i < n; ++i) c.add_object();
  for (int i = 0; i < n; ++i) c.add_identity(i);
  std::vector<std::vector<ArrowId>> arrow_of(n, std::vector<ArrowId>(n, kNone));
  for (int i = 0; i < n; ++i) arrow_of[i][i] = c.identity[i];
  for (auto [i, j] : leq)
    if (i != j && arrow_of[i][j] == kNone) arrow_of[i][j] = c.add_arrow(i, j);
  c.init_comp();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (arrow_of[i][j] != kNone && arrow_of[j][k] != kNone)
          c.set_comp(arrow_of[i][j], arrow_of[j][k], arrow_of[i][k]);
  return c;
}

FiniteCategory chain_poset(int n) {
  std::vector<std::pair<int, int>> leq;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) leq.emplace_back(i, j);
  return poset_category(n, leq);
}

FiniteCategory diamond_poset() {
  return poset_category(
      4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}});
}

WalkingFibration walking_fibration() {
  WalkingFibration w;
  w.base = std::make_unique<FiniteCategory>(walking_arrow());

  auto e = std::make_unique<FiniteCategory>();
  for (int i = 0; i < 3; ++i) e->add_object();
  for (int i = 0; i < 3; ++i) e->add_identity(i);
  e->add_arrow(0, 1);  // v
  e->add_arrow(1, 2);  // h0
  e->add_arrow(0, 2);  // vh
  e->init_comp();
  e->set_comp(3, 4, 5);  // v.h0 = vh
  w.total = std::move(e);

  w.pi.source = w.total.get();
  w.pi.target = w.base.get();
  w.pi.obj_map = {0, 0, 1};
  w.pi.arr_map = {0, 0, 1, 0, 2, 2};  // v -> id_a, h0 -> u, vh -> u
  return w;
}

InvolutionFibration involution_fibration() {
  InvolutionFibration w;
  w.base = std::make_unique<FiniteCategory>(walking_arrow());

  auto e = std::make_unique<FiniteCategory>();
  e->add_object();
  e->add_object();
  e->add_identity(0);
  e->add_identity(1);
  e->add_arrow(0, 0);  // t
  e->add_arrow(0, 1);  // h1
  e->add_arrow(0, 1);  // z = t.h1
  e->init_comp();
  e->set_comp(2, 2, 0);  // t.t = id
  e->set_comp(2, 3, 4);  // t.h1 = z
  e->set_comp(2, 4, 3);  // t.z = h1
  w.total = std::move(e);

  w.pi.source = w.total.get();
  w.pi.target = w.base.get();
  w.pi.obj_map = {0, 1};
  w.pi.arr_map = {0, 1, 0, 2, 2};
  return w;
}

ParallelPairFibration parallel_pair_fibration() {
  ParallelPairFibration w;
  w.base = std::make_unique<FiniteCategory>(walking_arrow());

  auto e = std::make_unique<FiniteCategory>();
  for (int i = 0; i < 4; ++i) e->add_object();
  for (int i = 0; i < 4; ++i) e->add_identity(i);
  e->add_arrow(0, 1);  // v0
  e->add_arrow(0, 1);  // v1
  e->add_arrow(2, 3);  // w0
  e->add_arrow(0, 2);  // hP0
  e->add_arrow(1, 3);  // hQ1
  e->add_arrow(0, 3);  // d0
  e->add_arrow(0, 3);  // d1
  e->init_comp();
  e->set_comp(4, 8, 9);   // v0.hQ1 = d0
  e->set_comp(5, 8, 10);  // v1.hQ1 = d1
  e->set_comp(7, 6, 9);   // hP0.w0 = d0
  w.total = std::move(e);

  w.pi.source = w.total.get();
  w.pi.target = w.base.get();
  w.pi.obj_map = {0, 0, 1, 1};
  w.pi.arr_map = {0, 0, 1, 1, 0, 0, 1, 2, 2, 2, 2};
  return w;
}

IdentityFibration identity_fibration(FiniteCategory cat) {
  IdentityFibration f;
  f.cat = std::make_unique<FiniteCategory>(std::move(cat));
  f.pi = identity_functor(*f.cat);
  return f;
}

}  // namespace fibcat::fixtures
