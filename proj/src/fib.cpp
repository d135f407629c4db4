#include "fibcat/fib.hpp"

#include <algorithm>
#include <stdexcept>

namespace fibcat {

bool is_vertical(const CatFunctor& pi, ArrowId f) {
  return pi.target->is_identity(pi.arr_map[f]);
}

namespace {

// Post-composition by h must biject `upstairs` onto `downstairs`. Both lists
// are ascending, so a sorted image comparison decides it.
bool postcompose_bijects(const FiniteCategory& total, ArrowId h,
                         const std::vector<ArrowId>& upstairs,
                         const std::vector<ArrowId>& downstairs) {
  if (upstairs.size() != downstairs.size()) return false;
  std::vector<ArrowId> image;
  image.reserve(upstairs.size());
  for (ArrowId g : upstairs) image.push_back(total.compose(g, h));
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
  return image == downstairs;
}

}  // namespace

CartesianCheck is_cartesian(const CatFunctor& pi, ArrowId h) {
  const FiniteCategory& total = *pi.source;
  const FiniteCategory& base = *pi.target;
  ObjId X = total.dom(h), Y = total.cod(h);
  ArrowId alpha = pi.arr_map[h];
  ObjId A = base.dom(alpha);

  for (ArrowId xi = 0; xi < base.n_arrows(); ++xi) {
    if (base.cod(xi) != A) continue;
    ObjId C = base.dom(xi);
    ArrowId xi_alpha = base.compose(xi, alpha);
    for (ObjId Z = 0; Z < total.n_objects; ++Z) {
      if (pi.obj_map[Z] != C) continue;
      HomSet up = hom_over(pi, xi, Z, X);
      HomSet down = hom_over(pi, xi_alpha, Z, Y);
      if (!postcompose_bijects(total, h, up.members, down.members))
        return {false, CartesianWitness{xi, Z, up.members, down.members}};
    }
  }
  return {true, std::nullopt};
}

CartesianCheck is_precartesian(const CatFunctor& pi, ArrowId h, PreSide side) {
  const FiniteCategory& total = *pi.source;
  const FiniteCategory& base = *pi.target;
  ArrowId alpha = pi.arr_map[h];

  if (side == PreSide::cartesian) {
    // Bijectivity for xi = identity only: h terminal in X_A |_alpha Y.
    ObjId X = total.dom(h), Y = total.cod(h);
    ObjId A = base.dom(alpha);
    ArrowId idA = base.identity[A];
    for (ObjId Z = 0; Z < total.n_objects; ++Z) {
      if (pi.obj_map[Z] != A) continue;
      HomSet up = hom_over(pi, idA, Z, X);
      HomSet down = hom_over(pi, alpha, Z, Y);
      if (!postcompose_bijects(total, h, up.members, down.members))
        return {false, CartesianWitness{idA, Z, up.members, down.members}};
    }
    return {true, std::nullopt};
  }

  // Cocartesian side: h initial in X |_alpha X_B. For every arrow k over
  // alpha with domain X there must be exactly one vertical u with h.u = k.
  ObjId X = total.dom(h);
  ArrowId idB = base.identity[base.cod(alpha)];
  for (ArrowId k = 0; k < total.n_arrows(); ++k) {
    if (total.dom(k) != X || pi.arr_map[k] != alpha) continue;
    int count = 0;
    for (ArrowId u = 0; u < total.n_arrows(); ++u) {
      if (pi.arr_map[u] != idB) continue;
      if (total.dom(u) != total.cod(h) || total.cod(u) != total.cod(k)) continue;
      if (total.compose(h, u) == k) ++count;
    }
    if (count != 1) {
      CartesianWitness w;
      w.xi = alpha;
      w.Z = total.cod(k);
      w.hom_upstairs = {k};
      return {false, w};
    }
  }
  return {true, std::nullopt};
}

std::vector<char> cartesian_flags(const CatFunctor& pi) {
  std::vector<char> flags(pi.source->n_arrows(), 0);
  for (ArrowId h = 0; h < pi.source->n_arrows(); ++h)
    flags[h] = is_cartesian(pi, h).value ? 1 : 0;
  return flags;
}

std::optional<ArrowId> cartesian_lift(const CatFunctor& pi, ArrowId alpha, ObjId Y,
                                      bool prefer_highest) {
  const FiniteCategory& total = *pi.source;
  const FiniteCategory& base = *pi.target;
  if (pi.obj_map[Y] != base.cod(alpha))
    throw std::invalid_argument("cartesian_lift: Y does not lie over cod(alpha)");
  if (base.is_identity(alpha)) return total.identity[Y];
  std::optional<ArrowId> found;
  for (ArrowId h = 0; h < total.n_arrows(); ++h) {
    if (total.cod(h) != Y || pi.arr_map[h] != alpha) continue;
    if (!is_cartesian(pi, h).value) continue;
    found = h;
    if (!prefer_highest) return found;
  }
  return found;
}

CleavageBuild make_cleavage(const CatFunctor& pi, bool prefer_highest) {
  const FiniteCategory& total = *pi.source;
  const FiniteCategory& base = *pi.target;
  Cleavage c;
  c.pi = &pi;
  c.choice.assign(static_cast<size_t>(base.n_arrows()) * total.n_objects, kNone);
  for (ArrowId alpha = 0; alpha < base.n_arrows(); ++alpha) {
    for (ObjId Y = 0; Y < total.n_objects; ++Y) {
      if (pi.obj_map[Y] != base.cod(alpha)) continue;
      auto lift = cartesian_lift(pi, alpha, Y, prefer_highest);
      if (!lift) return {std::nullopt, alpha, Y};
      c.choice[static_cast<size_t>(alpha) * total.n_objects + Y] = *lift;
    }
  }
  return {std::move(c), kNone, kNone};
}

VhPair vh_factorize(const CatFunctor& pi, const Cleavage& cleavage, ArrowId z) {
  const FiniteCategory& total = *pi.source;
  ArrowId alpha = pi.arr_map[z];
  ArrowId h = cleavage.at(alpha, total.cod(z));
  if (h == kNone) throw std::logic_error("vh_factorize: cleavage has no entry");

  ArrowId found = kNone;
  ArrowId idA = pi.target->identity[pi.target->dom(alpha)];
  for (ArrowId v = 0; v < total.n_arrows(); ++v) {
    if (pi.arr_map[v] != idA) continue;
    if (total.dom(v) != total.dom(z) || total.cod(v) != total.dom(h)) continue;
    if (total.compose(v, h) != z) continue;
    if (found != kNone)
      throw std::logic_error("vh_factorize: vertical part not unique");
    found = v;
  }
  if (found == kNone)
    throw std::logic_error("vh_factorize: no vertical part (invalid Cartesian data)");
  return {found, h, &pi};
}

std::vector<VhPair> all_vh_factorizations(const CatFunctor& pi, ArrowId z) {
  const FiniteCategory& total = *pi.source;
  std::vector<VhPair> out;
  for (ArrowId v = 0; v < total.n_arrows(); ++v) {
    if (!is_vertical(pi, v) || total.dom(v) != total.dom(z)) continue;
    for (ArrowId h = 0; h < total.n_arrows(); ++h) {
      if (total.dom(h) != total.cod(v) || total.cod(h) != total.cod(z)) continue;
      if (total.compose(v, h) != z) continue;
      if (!is_cartesian(pi, h).value) continue;
      out.push_back({v, h, &pi});
    }
  }
  return out;
}

std::optional<ArrowId> vh_pairs_equivalent(const VhPair& p1, const VhPair& p2) {
  const CatFunctor& pi = *p1.pi;
  const FiniteCategory& total = *pi.source;
  ArrowId z1 = p1.composite(), z2 = p2.composite();
  if (total.dom(z1) != total.dom(z2) || total.cod(z1) != total.cod(z2) ||
      pi.arr_map[p1.horizontal] != pi.arr_map[p2.horizontal])
    throw std::invalid_argument("vh_pairs_equivalent: endpoint or base mismatch");

  ArrowId found = kNone;
  for (ArrowId s = 0; s < total.n_arrows(); ++s) {
    if (!is_vertical(pi, s)) continue;
    if (total.dom(s) != total.cod(p1.vertical) || total.cod(s) != total.cod(p2.vertical))
      continue;
    if (total.compose(p1.vertical, s) != p2.vertical) continue;
    if (total.compose(s, p2.horizontal) != p1.horizontal) continue;
    if (found != kNone)
      throw std::logic_error("vh_pairs_equivalent: witness not unique");
    found = s;
  }
  if (found == kNone) return std::nullopt;
  return found;
}

VhPair compose_vh_pairs(const CatFunctor& pi, const Cleavage& cleavage,
                        const VhPair& p1, const VhPair& p2) {
  const FiniteCategory& total = *pi.source;
  ArrowId z1 = p1.composite(), z2 = p2.composite();
  if (total.cod(z1) != total.dom(z2))
    throw std::invalid_argument("compose_vh_pairs: pairs not composable");

  ArrowId k = cleavage.at(pi.arr_map[p1.horizontal], total.dom(p2.horizontal));
  if (k == kNone) throw std::logic_error("compose_vh_pairs: cleavage has no entry");
  ArrowId rhs = total.compose(p1.horizontal, p2.vertical);

  ArrowId w = kNone;
  for (ArrowId cand = 0; cand < total.n_arrows(); ++cand) {
    if (!is_vertical(pi, cand)) continue;
    if (total.dom(cand) != total.dom(p1.horizontal) || total.cod(cand) != total.dom(k))
      continue;
    if (total.compose(cand, k) != rhs) continue;
    if (w != kNone)
      throw std::logic_error("compose_vh_pairs: interpolant not unique");
    w = cand;
  }
  if (w == kNone)
    throw std::logic_error("compose_vh_pairs: interpolation square cannot be closed");

  VhPair out{total.compose(p1.vertical, w), total.compose(k, p2.horizontal), &pi};
  if (out.composite() != total.compose(z1, z2))
    throw std::logic_error("compose_vh_pairs: composite mismatch");
  return out;
}

std::optional<ArrowId> inverse(const FiniteCategory& cat, ArrowId f) {
  for (ArrowId g = 0; g < cat.n_arrows(); ++g) {
    if (cat.dom(g) != cat.cod(f) || cat.cod(g) != cat.dom(f)) continue;
    if (cat.compose(f, g) == cat.identity[cat.dom(f)] &&
        cat.compose(g, f) == cat.identity[cat.dom(g)])
      return g;
  }
  return std::nullopt;
}

ArrowId reindex_vertical(const CatFunctor& pi, const Cleavage& cleavage,
                         ArrowId alpha, ArrowId w) {
  const FiniteCategory& total = *pi.source;
  ObjId X = total.dom(w), Xp = total.cod(w);
  ArrowId hX = cleavage.at(alpha, X);
  ArrowId hXp = cleavage.at(alpha, Xp);
  ArrowId rhs = total.compose(hX, w);
  ArrowId found = kNone;
  for (ArrowId v = 0; v < total.n_arrows(); ++v) {
    if (!is_vertical(pi, v)) continue;
    if (total.dom(v) != total.dom(hX) || total.cod(v) != total.dom(hXp)) continue;
    if (total.compose(v, hXp) != rhs) continue;
    if (found != kNone) throw std::logic_error("reindex_vertical: not unique");
    found = v;
  }
  if (found == kNone) throw std::logic_error("reindex_vertical: no factorization");
  return found;
}

}  // namespace fibcat
