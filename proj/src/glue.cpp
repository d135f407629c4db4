#include "fibcat/glue.hpp"

#include <map>

namespace fibcat {

GlueData restrict_functor(const CatFunctor& pi, const CatFunctor& F,
                          const FiniteCategory& target,
                          const CatFunctor* target_projection) {
  GlueData d;
  d.pi = &pi;
  d.target = &target;
  d.target_projection = target_projection;
  d.obj_map = F.obj_map;
  const int na = pi.source->n_arrows();
  d.vert_map.assign(na, kNone);
  d.cart_map.assign(na, kNone);
  std::vector<char> cart = cartesian_flags(pi);
  for (ArrowId f = 0; f < na; ++f) {
    if (is_vertical(pi, f)) d.vert_map[f] = F.arr_map[f];
    if (cart[f]) d.cart_map[f] = F.arr_map[f];
  }
  return d;
}

ValidationReport verify_glue_conditions(const GlueData& data) {
  const CatFunctor& pi = *data.pi;
  const FiniteCategory& total = *pi.source;
  const FiniteCategory& Y = *data.target;
  const int na = total.n_arrows();

  if (static_cast<int>(data.obj_map.size()) != total.n_objects ||
      static_cast<int>(data.vert_map.size()) != na ||
      static_cast<int>(data.cart_map.size()) != na)
    return ValidationReport::fail("structure/glue-tables", "glue table size mismatch");

  std::vector<char> cart = cartesian_flags(pi);
  std::vector<char> vert(na, 0);
  for (ArrowId f = 0; f < na; ++f) vert[f] = is_vertical(pi, f) ? 1 : 0;

  for (ObjId x = 0; x < total.n_objects; ++x)
    if (data.obj_map[x] < 0 || data.obj_map[x] >= Y.n_objects)
      return ValidationReport::fail("structure/glue-obj-range", "object image out of range", {x});

  auto check_part = [&](const std::vector<ArrowId>& part, const std::vector<char>& domain,
                        const char* which) -> ValidationReport {
    for (ArrowId f = 0; f < na; ++f) {
      if (static_cast<bool>(domain[f]) != (part[f] != kNone))
        return ValidationReport::fail(std::string("structure/") + which + "-domain",
                                      "map defined on the wrong arrows", {f});
      if (part[f] == kNone) continue;
      if (part[f] < 0 || part[f] >= Y.n_arrows())
        return ValidationReport::fail(std::string("structure/") + which + "-range",
                                      "arrow image out of range", {f});
      if (Y.dom(part[f]) != data.obj_map[total.dom(f)] ||
          Y.cod(part[f]) != data.obj_map[total.cod(f)])
        return ValidationReport::fail(std::string(which) + "/endpoints",
                                      "image endpoints do not match image objects", {f});
    }
    // Identities and composition within the subcategory.
    for (ObjId o = 0; o < total.n_objects; ++o) {
      ArrowId id = total.identity[o];
      if (part[id] != Y.identity[data.obj_map[o]])
        return ValidationReport::fail(std::string(which) + "/identity",
                                      "identity not mapped to identity", {o});
    }
    for (ArrowId f = 0; f < na; ++f) {
      if (part[f] == kNone) continue;
      for (ArrowId g = 0; g < na; ++g) {
        if (part[g] == kNone || !total.composable(f, g)) continue;
        ArrowId fg = total.compose(f, g);
        if (part[fg] == kNone) continue;  // composite outside the subcategory
        if (Y.compose(part[f], part[g]) != part[fg])
          return ValidationReport::fail(std::string(which) + "/composition",
                                        "images do not compose", {f, g});
      }
    }
    return ValidationReport::ok();
  };

  if (auto r = check_part(data.vert_map, vert, "fiberwise"); !r.pass) return r;
  if (auto r = check_part(data.cart_map, cart, "cartesian"); !r.pass) return r;

  if (data.target_projection != nullptr) {
    const CatFunctor& q = *data.target_projection;
    for (ObjId x = 0; x < total.n_objects; ++x)
      if (q.obj_map[data.obj_map[x]] != pi.obj_map[x])
        return ValidationReport::fail("over-base/objects",
                                      "object image not over the same base object", {x});
    for (ArrowId f = 0; f < na; ++f)
      if (cart[f] && q.arr_map[data.cart_map[f]] != pi.arr_map[f])
        return ValidationReport::fail("over-base/cartesian",
                                      "Cartesian image not over the same base arrow", {f});
  }

  // Condition 3: agreement on vertical Cartesian arrows.
  for (ArrowId s = 0; s < na; ++s) {
    if (vert[s] && cart[s] && data.vert_map[s] != data.cart_map[s])
      return ValidationReport::fail("condition-3",
                                    "fiberwise and Cartesian parts disagree on a vertical Cartesian arrow",
                                    {s});
  }

  // Condition 4: enumerate every square k.w = v.h with v, w vertical and
  // h, k Cartesian. Squares are bucketed by their common composite.
  std::map<ArrowId, std::vector<std::pair<ArrowId, ArrowId>>> cart_then_vert;
  for (ArrowId k = 0; k < na; ++k) {
    if (!cart[k]) continue;
    for (ArrowId w = 0; w < na; ++w) {
      if (!vert[w] || !total.composable(k, w)) continue;
      cart_then_vert[total.compose(k, w)].push_back({k, w});
    }
  }
  for (ArrowId v = 0; v < na; ++v) {
    if (!vert[v]) continue;
    for (ArrowId h = 0; h < na; ++h) {
      if (!cart[h] || !total.composable(v, h)) continue;
      ArrowId z = total.compose(v, h);
      auto it = cart_then_vert.find(z);
      if (it == cart_then_vert.end()) continue;
      for (auto [k, w] : it->second) {
        ArrowId lhs = Y.compose(data.vert_map[v], data.cart_map[h]);
        ArrowId rhs = Y.compose(data.cart_map[k], data.vert_map[w]);
        if (lhs != rhs)
          return ValidationReport::fail("condition-4",
                                        "F_A(v).Fbar(h) != Fbar(k).F_B(w)", {v, h, k, w});
      }
    }
  }
  return ValidationReport::ok();
}

CatFunctor glue_functor(const GlueData& data, const Cleavage& cleavage) {
  const CatFunctor& pi = *data.pi;
  const FiniteCategory& total = *pi.source;
  const FiniteCategory& Y = *data.target;

  CatFunctor F;
  F.source = &total;
  F.target = &Y;
  F.obj_map = data.obj_map;
  F.arr_map.assign(total.n_arrows(), kNone);
  for (ArrowId x = 0; x < total.n_arrows(); ++x) {
    VhPair p = vh_factorize(pi, cleavage, x);
    ArrowId fv = data.vert_map[p.vertical];
    ArrowId fh = data.cart_map[p.horizontal];
    if (fv == kNone || fh == kNone)
      throw GlueError("glue_functor: factorization part outside glue data");
    F.arr_map[x] = Y.compose(fv, fh);
    if (F.arr_map[x] == kNone)
      throw GlueError("glue_functor: images of factorization parts do not compose");
  }

  ValidationReport r = validate_functor(F);
  if (!r.pass) throw GlueError("glue_functor: conditions violated (" + r.rule + ")");
  // The result must restrict to the given data.
  for (ArrowId f = 0; f < total.n_arrows(); ++f) {
    if (data.vert_map[f] != kNone && F.arr_map[f] != data.vert_map[f])
      throw GlueError("glue_functor: does not restrict to the fiberwise part");
    if (data.cart_map[f] != kNone && F.arr_map[f] != data.cart_map[f])
      throw GlueError("glue_functor: does not restrict to the Cartesian part");
  }
  return F;
}

ComparisonFamily extract_comparison(const CatFunctor& F, const CatFunctor& pi_x,
                                    const Cleavage& cleavage_x,
                                    const CatFunctor& pi_y,
                                    const Cleavage& cleavage_y) {
  const FiniteCategory& total_x = *pi_x.source;
  const FiniteCategory& total_y = *pi_y.source;
  const FiniteCategory& base = *pi_x.target;

  for (ArrowId f = 0; f < total_x.n_arrows(); ++f)
    if (pi_y.arr_map[F.arr_map[f]] != pi_x.arr_map[f])
      throw std::invalid_argument("extract_comparison: F is not over the base");

  ComparisonFamily fam;
  fam.target_fibration = &pi_y;
  fam.entries.assign(static_cast<size_t>(base.n_arrows()) * total_x.n_objects, kNone);

  for (ArrowId alpha = 0; alpha < base.n_arrows(); ++alpha) {
    for (ObjId X = 0; X < total_x.n_objects; ++X) {
      if (pi_x.obj_map[X] != base.cod(alpha)) continue;
      ArrowId h = cleavage_x.at(alpha, X);
      ArrowId Fh = F.arr_map[h];
      ArrowId hY = cleavage_y.at(alpha, F.obj_map[X]);
      // F(h) factors uniquely as v_{alpha,X} followed by the chosen
      // Cartesian of the target.
      ArrowId found = kNone;
      for (ArrowId v = 0; v < total_y.n_arrows(); ++v) {
        if (!is_vertical(pi_y, v)) continue;
        if (total_y.dom(v) != total_y.dom(Fh) || total_y.cod(v) != total_y.dom(hY))
          continue;
        if (total_y.compose(v, hY) != Fh) continue;
        if (found != kNone)
          throw std::logic_error("extract_comparison: comparison not unique");
        found = v;
      }
      if (found == kNone)
        throw std::logic_error("extract_comparison: no vertical factorization");
      fam.entries[static_cast<size_t>(alpha) * total_x.n_objects + X] = found;
    }
  }

  // Naturality in X for each fixed alpha: for vertical w: X -> X' over
  // cod(alpha), F_A(alpha*(w)).v_{alpha,X'} = v_{alpha,X}.alpha*(F(w)).
  fam.naturality = ValidationReport::ok();
  for (ArrowId alpha = 0; alpha < base.n_arrows() && fam.naturality.pass; ++alpha) {
    for (ArrowId w = 0; w < total_x.n_arrows(); ++w) {
      if (!is_vertical(pi_x, w)) continue;
      if (pi_x.obj_map[total_x.dom(w)] != base.cod(alpha)) continue;
      ObjId X = total_x.dom(w), Xp = total_x.cod(w);
      ArrowId vX = fam.entries[static_cast<size_t>(alpha) * total_x.n_objects + X];
      ArrowId vXp = fam.entries[static_cast<size_t>(alpha) * total_x.n_objects + Xp];
      ArrowId lhs = total_y.compose(F.arr_map[reindex_vertical(pi_x, cleavage_x, alpha, w)], vXp);
      ArrowId rhs = total_y.compose(vX, reindex_vertical(pi_y, cleavage_y, alpha, F.arr_map[w]));
      if (lhs != rhs) {
        fam.naturality = ValidationReport::fail(
            "comparison-naturality", "v_{alpha,X} not natural in X", {alpha, w});
        break;
      }
    }
  }
  return fam;
}

}  // namespace fibcat
