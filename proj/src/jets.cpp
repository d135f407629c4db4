#include "fibcat/jets.hpp"

#include <algorithm>
#include <stdexcept>

namespace fibcat {

NeighborhoodRelation NeighborhoodRelation::from_pairs(int base_size,
                                                      std::vector<std::pair<int, int>> pairs,
                                                      bool add_reflexive) {
  NeighborhoodRelation r;
  r.base_size = base_size;
  for (auto [b, bp] : pairs)
    if (b < 0 || b >= base_size || bp < 0 || bp >= base_size)
      throw std::invalid_argument("NeighborhoodRelation: pair out of range");
  if (add_reflexive)
    for (int b = 0; b < base_size; ++b) pairs.emplace_back(b, b);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  r.pairs = std::move(pairs);
  for (int b = 0; b < base_size; ++b)
    if (!r.contains(b, b))
      throw std::invalid_argument("NeighborhoodRelation: not reflexive");
  return r;
}

std::vector<int> NeighborhoodRelation::neighbors(int b) const {
  std::vector<int> out;
  for (auto [d, c] : pairs)
    if (d == b) out.push_back(c);
  return out;
}

bool NeighborhoodRelation::contains(int b, int bp) const {
  return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(b, bp));
}

NeighborhoodRelation NeighborhoodRelation::diagonal(int base_size) {
  return from_pairs(base_size, {}, true);
}

NeighborhoodRelation NeighborhoodRelation::chain(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int b = 0; b + 1 < n; ++b) {
    pairs.emplace_back(b, b + 1);
    pairs.emplace_back(b + 1, b);
  }
  return from_pairs(n, std::move(pairs), true);
}

NeighborhoodRelation NeighborhoodRelation::product_with(int q) const {
  std::vector<std::pair<int, int>> pairs;
  for (int qq = 0; qq < q; ++qq)
    for (auto [b, bp] : this->pairs)
      pairs.emplace_back(qq * base_size + b, qq * base_size + bp);
  return from_pairs(q * base_size, std::move(pairs), false);
}

RelationSpans relation_spans(const NeighborhoodRelation& r) {
  RelationSpans s;
  s.pair_count = static_cast<int>(r.pairs.size());
  s.d = {s.pair_count, r.base_size, {}};
  s.c = {s.pair_count, r.base_size, {}};
  for (auto [b, bp] : r.pairs) {
    s.d.values.push_back(b);
    s.c.values.push_back(bp);
  }
  return s;
}

JetBundle jet_object(const NeighborhoodRelation& r, const FinFamilyBundle& x) {
  if (x.base_size != r.base_size)
    throw std::invalid_argument("jet_object: base mismatch");
  JetBundle j;
  j.base = r;
  j.source = x;
  j.bundle.base_size = r.base_size;
  for (int b = 0; b < r.base_size; ++b) {
    j.sections.push_back(make_section_space(r.neighbors(b), x.fibers));
    j.bundle.fibers.push_back(j.sections.back().count);
  }
  return j;
}

RelationCheck relation_preserved(const NeighborhoodRelation& ra,
                                 const NeighborhoodRelation& rb, const FinFunction& alpha) {
  for (auto [a, ap] : ra.pairs)
    if (!rb.contains(alpha(a), alpha(ap))) return {false, {a, ap}};
  return {};
}

FamilyComorphism jet_comorphism(const NeighborhoodRelation& ra,
                                const NeighborhoodRelation& rb,
                                const FamilyComorphism& f, const FinFamilyBundle& x,
                                const FinFamilyBundle& y) {
  const FinFunction& alpha = f.base_map;
  RelationCheck rc = relation_preserved(ra, rb, alpha);
  if (!rc.preserved)
    throw std::invalid_argument("jet_comorphism: base map does not preserve the relation");

  JetBundle jx = jet_object(ra, x);
  JetBundle jy = jet_object(rb, y);

  FamilyComorphism out;
  out.base_map = alpha;
  for (int a = 0; a < alpha.dom_size; ++a) {
    const SectionSpace& sy = jy.sections[alpha(a)];
    const SectionSpace& sx = jx.sections[a];
    FinFunction comp{sy.count, sx.count, std::vector<int>(sy.count)};
    for (int si = 0; si < sy.count; ++si) {
      std::vector<int> s = sy.decode(si);
      std::vector<int> target(sx.positions.size());
      for (size_t i = 0; i < sx.positions.size(); ++i) {
        int ap = sx.positions[i];
        int bp = alpha(ap);
        // position of bp among neighbors(alpha(a))
        int pos = -1;
        for (size_t jpos = 0; jpos < sy.positions.size(); ++jpos)
          if (sy.positions[jpos] == bp) pos = static_cast<int>(jpos);
        target[i] = f.components[ap](s[pos]);
      }
      comp.values[si] = sx.encode(target);
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

FamilyMap jet_comparison(const NeighborhoodRelation& ra, const NeighborhoodRelation& rb,
                         const FinFunction& alpha, const FinFamilyBundle& y) {
  RelationCheck rc = relation_preserved(ra, rb, alpha);
  if (!rc.preserved)
    throw std::invalid_argument("jet_comparison: base map does not preserve the relation");
  JetBundle jy = jet_object(rb, y);
  JetBundle jpy = jet_object(ra, pullback(alpha, y).bundle);

  FamilyMap out;
  out.base_map = FinFunction::identity(alpha.dom_size);
  for (int a = 0; a < alpha.dom_size; ++a) {
    const SectionSpace& sy = jy.sections[alpha(a)];
    const SectionSpace& spy = jpy.sections[a];
    FinFunction comp{sy.count, spy.count, std::vector<int>(sy.count)};
    for (int si = 0; si < sy.count; ++si) {
      std::vector<int> s = sy.decode(si);
      std::vector<int> target(spy.positions.size());
      for (size_t i = 0; i < spy.positions.size(); ++i) {
        int ap = spy.positions[i];
        int bp = alpha(ap);
        int pos = -1;
        for (size_t jpos = 0; jpos < sy.positions.size(); ++jpos)
          if (sy.positions[jpos] == bp) pos = static_cast<int>(jpos);
        target[i] = s[pos];  // (alpha*y)_{a'} = Y_{alpha(a')}
      }
      comp.values[si] = spy.encode(target);
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

JetStrength jet_strength(const NeighborhoodRelation& r, int q, const FinFamilyBundle& x) {
  if (q < 1) throw std::invalid_argument("jet_strength: Q must be nonempty");
  JetStrength s;
  s.product_relation = r.product_with(q);
  s.projection = {q * r.base_size, r.base_size, {}};
  for (int qq = 0; qq < q; ++qq)
    for (int b = 0; b < r.base_size; ++b) s.projection.values.push_back(b);
  s.comparison = jet_comparison(s.product_relation, r, s.projection, x);
  return s;
}

OmegaBundle omega1(const NeighborhoodRelation& r, const PointedBundle& e) {
  if (e.bundle.base_size != r.base_size)
    throw std::invalid_argument("omega1: base mismatch");
  OmegaBundle o;
  o.jets = jet_object(r, e.bundle);
  o.bundle.base_size = r.base_size;
  for (int b = 0; b < r.base_size; ++b) {
    const SectionSpace& space = o.jets.sections[b];
    int pos = -1;
    for (size_t i = 0; i < space.positions.size(); ++i)
      if (space.positions[i] == b) pos = static_cast<int>(i);
    std::vector<int> members;
    for (int si = 0; si < space.count; ++si)
      if (space.decode(si)[pos] == e.basepoint[b]) members.push_back(si);
    o.bundle.fibers.push_back(static_cast<int>(members.size()));
    o.members.push_back(std::move(members));
  }
  return o;
}

FamilyComorphism omega1_comorphism(const NeighborhoodRelation& ra,
                                   const NeighborhoodRelation& rb,
                                   const FamilyComorphism& f, const PointedBundle& ex,
                                   const PointedBundle& ey) {
  for (int a = 0; a < f.base_map.dom_size; ++a)
    if (f.components[a](ey.basepoint[f.base_map(a)]) != ex.basepoint[a])
      throw std::invalid_argument("omega1_comorphism: components do not preserve basepoints");

  FamilyComorphism jets = jet_comorphism(ra, rb, f, ex.bundle, ey.bundle);
  OmegaBundle ox = omega1(ra, ex);
  OmegaBundle oy = omega1(rb, ey);

  FamilyComorphism out;
  out.base_map = f.base_map;
  for (int a = 0; a < f.base_map.dom_size; ++a) {
    int b = f.base_map(a);
    FinFunction comp{oy.bundle.fibers[b], ox.bundle.fibers[a], {}};
    for (int form = 0; form < oy.bundle.fibers[b]; ++form) {
      int jet_image = jets.components[a](oy.members[b][form]);
      int idx = -1;
      for (size_t i = 0; i < ox.members[a].size(); ++i)
        if (ox.members[a][i] == jet_image) idx = static_cast<int>(i);
      if (idx < 0)
        throw std::logic_error("omega1_comorphism: image section is not a 1-form");
      comp.values.push_back(idx);
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

}  // namespace fibcat
