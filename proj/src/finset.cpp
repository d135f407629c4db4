#include "fibcat/finset.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fibcat {

FinFunction FinFunction::identity(int n) {
  FinFunction f{n, n, std::vector<int>(n)};
  for (int i = 0; i < n; ++i) f.values[i] = i;
  return f;
}

FinFunction FinFunction::constant(int dom, int cod, int value) {
  if (dom > 0 && (value < 0 || value >= cod))
    throw std::invalid_argument("FinFunction::constant: value out of range");
  return {dom, cod, std::vector<int>(dom, value)};
}

FinFunction FinFunction::then(const FinFunction& g) const {
  if (cod_size != g.dom_size)
    throw std::invalid_argument("FinFunction::then: size mismatch");
  FinFunction out{dom_size, g.cod_size, std::vector<int>(dom_size)};
  for (int i = 0; i < dom_size; ++i) out.values[i] = g.values[values[i]];
  return out;
}

bool FinFunction::is_bijective() const {
  if (dom_size != cod_size) return false;
  std::vector<char> hit(cod_size, 0);
  for (int v : values) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

FinFunction FinFunction::inverted() const {
  if (!is_bijective()) throw std::invalid_argument("FinFunction::inverted: not bijective");
  FinFunction inv{cod_size, dom_size, std::vector<int>(cod_size)};
  for (int i = 0; i < dom_size; ++i) inv.values[values[i]] = i;
  return inv;
}

int FinFamilyBundle::total() const {
  int t = 0;
  for (int s : fibers) t += s;
  return t;
}

int FinFamilyBundle::offset(int a) const {
  int t = 0;
  for (int i = 0; i < a; ++i) t += fibers[i];
  return t;
}

FamilyMap identity_family_map(const FinFamilyBundle& x) {
  FamilyMap m;
  m.base_map = FinFunction::identity(x.base_size);
  for (int s : x.fibers) m.components.push_back(FinFunction::identity(s));
  return m;
}

FamilyMap compose_family_maps(const FamilyMap& f, const FamilyMap& g) {
  FamilyMap out;
  out.base_map = f.base_map.then(g.base_map);
  out.components.reserve(f.components.size());
  for (int a = 0; a < f.base_map.dom_size; ++a)
    out.components.push_back(f.components[a].then(g.components[f.base_map(a)]));
  return out;
}

FamilyComorphism identity_comorphism(const FinFamilyBundle& x) {
  FamilyComorphism c;
  c.base_map = FinFunction::identity(x.base_size);
  for (int s : x.fibers) c.components.push_back(FinFunction::identity(s));
  return c;
}

FamilyComorphism compose_family_comorphisms(const FamilyComorphism& f,
                                            const FamilyComorphism& g) {
  if (f.base_map.cod_size != g.base_map.dom_size)
    throw std::invalid_argument("compose_family_comorphisms: base maps not composable");
  FamilyComorphism out;
  out.base_map = f.base_map.then(g.base_map);
  out.components.reserve(f.components.size());
  for (int a = 0; a < f.base_map.dom_size; ++a)
    out.components.push_back(g.components[f.base_map(a)].then(f.components[a]));
  return out;
}

SectionSpace make_section_space(std::vector<int> positions, const std::vector<int>& size_at) {
  SectionSpace s;
  s.positions = std::move(positions);
  long long count = 1;
  for (int p : s.positions) {
    s.sizes.push_back(size_at[p]);
    count *= size_at[p];
    if (count > 100000000)
      throw std::overflow_error("section space too large for desk scale");
  }
  s.count = static_cast<int>(count);
  return s;
}

int SectionSpace::encode(const std::vector<int>& choice) const {
  int idx = 0;
  for (size_t i = 0; i < sizes.size(); ++i) idx = idx * sizes[i] + choice[i];
  return idx;
}

std::vector<int> SectionSpace::decode(int idx) const {
  std::vector<int> choice(sizes.size());
  for (size_t i = sizes.size(); i-- > 0;) {
    choice[i] = idx % sizes[i];
    idx /= sizes[i];
  }
  return choice;
}

PullbackResult pullback(const FinFunction& alpha, const FinFamilyBundle& y) {
  if (alpha.cod_size != y.base_size)
    throw std::invalid_argument("pullback: cod(alpha) != base of Y");
  PullbackResult out;
  out.bundle.base_size = alpha.dom_size;
  out.to_target.base_map = alpha;
  for (int a = 0; a < alpha.dom_size; ++a) {
    int fib = y.fibers[alpha(a)];
    out.bundle.fibers.push_back(fib);
    out.to_target.components.push_back(FinFunction::identity(fib));
  }
  return out;
}

PiResult pi_along(const FinFunction& alpha, const FinFamilyBundle& x) {
  if (alpha.dom_size != x.base_size)
    throw std::invalid_argument("pi_along: dom(alpha) != base of X");
  PiResult out;
  out.bundle.base_size = alpha.cod_size;
  for (int b = 0; b < alpha.cod_size; ++b) {
    std::vector<int> preimage;
    for (int a = 0; a < alpha.dom_size; ++a)
      if (alpha(a) == b) preimage.push_back(a);
    out.sections.push_back(make_section_space(std::move(preimage), x.fibers));
    out.bundle.fibers.push_back(out.sections.back().count);
  }
  // Counit at a: a section over alpha^{-1}(alpha(a)) evaluates at a.
  out.counit.base_map = FinFunction::identity(alpha.dom_size);
  for (int a = 0; a < alpha.dom_size; ++a) {
    const SectionSpace& space = out.sections[alpha(a)];
    int pos = -1;
    for (size_t i = 0; i < space.positions.size(); ++i)
      if (space.positions[i] == a) pos = static_cast<int>(i);
    FinFunction ev{space.count, x.fibers[a], std::vector<int>(space.count)};
    for (int s = 0; s < space.count; ++s) ev.values[s] = space.decode(s)[pos];
    out.counit.components.push_back(std::move(ev));
  }
  return out;
}

FamilyMap transpose_to_pi(const FinFunction& alpha, const FinFamilyBundle& y,
                          const FinFamilyBundle& x, const FamilyMap& phi) {
  PiResult pi = pi_along(alpha, x);
  FamilyMap out;
  out.base_map = FinFunction::identity(y.base_size);
  for (int b = 0; b < y.base_size; ++b) {
    const SectionSpace& space = pi.sections[b];
    FinFunction comp{y.fibers[b], pi.bundle.fibers[b], std::vector<int>(y.fibers[b])};
    for (int z = 0; z < y.fibers[b]; ++z) {
      std::vector<int> choice(space.positions.size());
      for (size_t i = 0; i < space.positions.size(); ++i) {
        int a = space.positions[i];
        choice[i] = phi.components[a](z);  // (alpha*Y)_a = Y_b
      }
      comp.values[z] = space.encode(choice);
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

FamilyMap transpose_from_pi(const FinFunction& alpha, const FinFamilyBundle& y,
                            const FinFamilyBundle& x, const FamilyMap& psi) {
  PiResult pi = pi_along(alpha, x);
  FamilyMap out;
  out.base_map = FinFunction::identity(alpha.dom_size);
  for (int a = 0; a < alpha.dom_size; ++a) {
    int b = alpha(a);
    const SectionSpace& space = pi.sections[b];
    int pos = -1;
    for (size_t i = 0; i < space.positions.size(); ++i)
      if (space.positions[i] == a) pos = static_cast<int>(i);
    FinFunction comp{y.fibers[b], x.fibers[a], std::vector<int>(y.fibers[b])};
    for (int z = 0; z < y.fibers[b]; ++z)
      comp.values[z] = space.decode(psi.components[b](z))[pos];
    out.components.push_back(std::move(comp));
  }
  return out;
}

FamilyMap comorphism_as_vertical(const FinFunction& alpha, const FinFamilyBundle& y,
                                 const FamilyComorphism& f) {
  FamilyMap out;
  out.base_map = FinFunction::identity(alpha.dom_size);
  out.components = f.components;
  (void)y;
  return out;
}

namespace {

// Odometer over a vector of digit bounds; returns false when exhausted.
bool next_tuple(std::vector<int>& digits, const std::vector<int>& bounds) {
  for (size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < bounds[i]) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace

bool is_distributivity_pullback(const FinFunction& alpha, const FinFamilyBundle& x,
                                const FinFamilyBundle& y, const FamilyComorphism& f,
                                int fiber_bound) {
  if (fiber_bound < 0) {
    fiber_bound = 1;
    for (int s : y.fibers) fiber_bound = std::max(fiber_bound, s);
    PiResult pi = pi_along(alpha, x);
    for (int s : pi.bundle.fibers) fiber_bound = std::max(fiber_bound, s);
  }

  // Initiality in x |_alpha ((B^2)*)_B: for every competitor bundle y'' over
  // B and every comorphism g: x -|-> y'' over alpha there must be exactly one
  // vertical family u (set maps Y''_b -> Y_b) with f.u = g.
  int B = alpha.cod_size;
  std::vector<int> fiber_digits(B, 0);
  std::vector<int> fiber_bounds(B, fiber_bound + 1);
  do {
    FinFamilyBundle yy{B, fiber_digits};

    // Enumerate vertical families u: Y''_b -> Y_b and collect f.u encodings.
    std::vector<int> u_bounds, g_bounds;
    for (int b = 0; b < B; ++b)
      for (int z = 0; z < yy.fibers[b]; ++z) u_bounds.push_back(y.fibers[b]);
    for (int a = 0; a < alpha.dom_size; ++a)
      for (int z = 0; z < yy.fibers[alpha(a)]; ++z) g_bounds.push_back(x.fibers[a]);

    long long n_u = 1, n_g = 1;
    for (int b : u_bounds) n_u *= b;
    for (int b : g_bounds) n_g *= b;
    if (n_u > 2000000 || n_g > 2000000)
      throw std::overflow_error("is_distributivity_pullback: competitor space too large");

    // u |-> f.u must biject the vertical families onto the comorphisms.
    if (n_u != n_g) return false;
    if (n_u == 0) continue;

    std::vector<int> offsets(B + 1, 0);
    for (int b = 0; b < B; ++b) offsets[b + 1] = offsets[b] + yy.fibers[b];
    std::set<std::vector<int>> images;
    std::vector<int> u(u_bounds.size(), 0);
    do {
      // (f.u)_a(z) = f_a(u_{alpha(a)}(z)), flattened over (a, z).
      std::vector<int> image;
      for (int a = 0; a < alpha.dom_size; ++a) {
        int b = alpha(a);
        for (int z = 0; z < yy.fibers[b]; ++z)
          image.push_back(f.components[a](u[offsets[b] + z]));
      }
      if (!images.insert(image).second) return false;
    } while (next_tuple(u, u_bounds));
    // sizes match and the map is injective, hence bijective for this y''.
  } while (next_tuple(fiber_digits, fiber_bounds));
  return true;
}

ArrowId SkeletonCategory::arrow_of(const FinFunction& f) const {
  auto it = index.find({f.dom_size, f.cod_size, f.values});
  if (it == index.end()) throw std::invalid_argument("SkeletonCategory: unknown function");
  return it->second;
}

SkeletonCategory finset_skeleton(int max_size) {
  SkeletonCategory s;
  for (int n = 0; n <= max_size; ++n) s.cat.add_object();
  s.cat.identity.assign(max_size + 1, kNone);
  for (int m = 0; m <= max_size; ++m) {
    for (int k = 0; k <= max_size; ++k) {
      if (m > 0 && k == 0) continue;
      std::vector<int> values(m, 0);
      bool more = true;
      while (more) {
        ArrowId a = s.cat.add_arrow(m, k);
        s.fn.push_back({m, k, values});
        s.index[{m, k, values}] = a;
        more = next_tuple(values, std::vector<int>(m, k));
        if (m == 0) break;
      }
    }
  }
  for (int m = 0; m <= max_size; ++m)
    s.cat.identity[m] = s.arrow_of(FinFunction::identity(m));
  s.cat.init_comp();
  for (ArrowId f = 0; f < s.cat.n_arrows(); ++f)
    for (ArrowId g = 0; g < s.cat.n_arrows(); ++g)
      if (s.cat.composable(f, g)) s.cat.set_comp(f, g, s.arrow_of(s.fn[f].then(s.fn[g])));
  return s;
}

ArrowId ArrowCategoryEncoding::square_of(ObjId x, ObjId y, ArrowId top, ArrowId bottom) const {
  auto it = index.find({x, y, top, bottom});
  return it == index.end() ? kNone : it->second;
}

ArrowCategoryEncoding encode_codomain_fibration(const FiniteCategory& B) {
  ArrowCategoryEncoding e;
  e.base = &B;
  e.sq = std::make_unique<FiniteCategory>();
  for (ArrowId x = 0; x < B.n_arrows(); ++x) e.sq->add_object();
  e.sq->identity.assign(B.n_arrows(), kNone);

  for (ObjId x = 0; x < B.n_arrows(); ++x) {
    for (ObjId y = 0; y < B.n_arrows(); ++y) {
      for (ArrowId top = 0; top < B.n_arrows(); ++top) {
        if (B.dom(top) != B.dom(x) || B.cod(top) != B.dom(y)) continue;
        for (ArrowId bottom = 0; bottom < B.n_arrows(); ++bottom) {
          if (B.dom(bottom) != B.cod(x) || B.cod(bottom) != B.cod(y)) continue;
          if (B.compose(x, bottom) != B.compose(top, y)) continue;
          ArrowId a = e.sq->add_arrow(x, y);
          e.squares.push_back({x, y, top, bottom});
          e.index[{x, y, top, bottom}] = a;
        }
      }
    }
  }
  for (ObjId x = 0; x < B.n_arrows(); ++x)
    e.sq->identity[x] =
        e.square_of(x, x, B.identity[B.dom(x)], B.identity[B.cod(x)]);
  e.sq->init_comp();
  for (ArrowId f = 0; f < e.sq->n_arrows(); ++f) {
    for (ArrowId g = 0; g < e.sq->n_arrows(); ++g) {
      if (!e.sq->composable(f, g)) continue;
      const auto& sf = e.squares[f];
      const auto& sg = e.squares[g];
      e.sq->set_comp(f, g,
                     e.square_of(sf.x, sg.y, B.compose(sf.top, sg.top),
                                 B.compose(sf.bottom, sg.bottom)));
    }
  }

  e.d1.source = e.sq.get();
  e.d1.target = &B;
  e.d0.source = e.sq.get();
  e.d0.target = &B;
  for (ObjId x = 0; x < B.n_arrows(); ++x) {
    e.d1.obj_map.push_back(B.cod(x));
    e.d0.obj_map.push_back(B.dom(x));
  }
  for (const auto& s : e.squares) {
    e.d1.arr_map.push_back(s.bottom);
    e.d0.arr_map.push_back(s.top);
  }
  return e;
}

bool is_pullback_square_cat(const FiniteCategory& B, ArrowId x, ArrowId y,
                            ArrowId top, ArrowId bottom) {
  // Square: x: P -> A, y: Q -> C, top: P -> Q, bottom: A -> C, x.bottom = top.y.
  for (ObjId W = 0; W < B.n_objects; ++W) {
    for (ArrowId qa : B.hom(W, B.cod(x))) {
      for (ArrowId qq : B.hom(W, B.dom(y))) {
        if (B.compose(qa, bottom) != B.compose(qq, y)) continue;
        int count = 0;
        for (ArrowId u : B.hom(W, B.dom(x)))
          if (B.compose(u, x) == qa && B.compose(u, top) == qq) ++count;
        if (count != 1) return false;
      }
    }
  }
  return true;
}

bool is_pullback_square_sets(const FinFunction& x, const FinFunction& y,
                             const FinFunction& top, const FinFunction& bottom) {
  // Comparison into the pair set {(a, q) : bottom(a) = y(q)}.
  std::set<std::pair<int, int>> pairs;
  for (int a = 0; a < x.cod_size; ++a)
    for (int q = 0; q < y.dom_size; ++q)
      if (bottom(a) == y(q)) pairs.insert({a, q});
  std::set<std::pair<int, int>> image;
  for (int p = 0; p < x.dom_size; ++p) {
    auto pr = std::make_pair(x(p), top(p));
    if (!image.insert(pr).second) return false;
  }
  return image == pairs;
}

ObjId BundleFibration::object_of(const FinFamilyBundle& b) const {
  auto it = obj_index.find(b);
  return it == obj_index.end() ? kNone : it->second;
}

ArrowId BundleFibration::arrow_of(ObjId src, ObjId dst, ArrowId alpha,
                                  const std::vector<FinFunction>& components) const {
  std::vector<int> flat;
  for (const FinFunction& c : components)
    flat.insert(flat.end(), c.values.begin(), c.values.end());
  auto it = arr_index.find({src, dst, alpha, flat});
  return it == arr_index.end() ? kNone : it->second;
}

FamilyMap BundleFibration::family_map_of(ArrowId f) const {
  FamilyMap m;
  m.base_map = skel->fn[arrows[f].alpha];
  m.components = arrows[f].components;
  return m;
}

BundleFibration bundle_fibration(int max_base, int max_fiber) {
  BundleFibration bf;
  bf.skel = std::make_unique<SkeletonCategory>(finset_skeleton(max_base));
  bf.total = std::make_unique<FiniteCategory>();

  // Objects: all bundles over bases 0..max_base with fibers <= max_fiber.
  for (int b = 0; b <= max_base; ++b) {
    std::vector<int> fibers(b, 0);
    bool more = true;
    while (more) {
      FinFamilyBundle bundle{b, fibers};
      bf.obj_index[bundle] = bf.total->add_object();
      bf.objects.push_back(bundle);
      more = next_tuple(fibers, std::vector<int>(b, max_fiber + 1));
      if (b == 0) break;
    }
  }
  bf.total->identity.assign(bf.total->n_objects, kNone);

  // Arrows: for each object pair and base arrow, all component families.
  const FiniteCategory& skcat = bf.skel->cat;
  for (ObjId s = 0; s < bf.total->n_objects; ++s) {
    for (ObjId d = 0; d < bf.total->n_objects; ++d) {
      const FinFamilyBundle& X = bf.objects[s];
      const FinFamilyBundle& Y = bf.objects[d];
      for (ArrowId alpha = 0; alpha < skcat.n_arrows(); ++alpha) {
        if (skcat.dom(alpha) != X.base_size || skcat.cod(alpha) != Y.base_size) continue;
        const FinFunction& al = bf.skel->fn[alpha];
        // Flat component table: for each a, X_a values into Y_{alpha(a)}.
        std::vector<int> bounds;
        for (int a = 0; a < X.base_size; ++a)
          for (int i = 0; i < X.fibers[a]; ++i) bounds.push_back(Y.fibers[al(a)]);
        bool empty_hom = false;
        for (int b : bounds) empty_hom = empty_hom || b == 0;
        if (empty_hom) continue;
        std::vector<int> flat(bounds.size(), 0);
        bool more = true;
        while (more) {
          ArrowId arr = bf.total->add_arrow(s, d);
          BundleFibration::BundleArrow ba;
          ba.alpha = alpha;
          int off = 0;
          for (int a = 0; a < X.base_size; ++a) {
            FinFunction comp{X.fibers[a], Y.fibers[al(a)], {}};
            comp.values.assign(flat.begin() + off, flat.begin() + off + X.fibers[a]);
            off += X.fibers[a];
            ba.components.push_back(std::move(comp));
          }
          bf.arr_index[{s, d, alpha, flat}] = arr;
          bf.arrows.push_back(std::move(ba));
          if (bounds.empty()) break;
          more = next_tuple(flat, bounds);
        }
      }
    }
  }

  for (ObjId o = 0; o < bf.total->n_objects; ++o) {
    const FinFamilyBundle& X = bf.objects[o];
    std::vector<FinFunction> id_comps;
    for (int sfib : X.fibers) id_comps.push_back(FinFunction::identity(sfib));
    bf.total->identity[o] = bf.arrow_of(o, o, skcat.identity[X.base_size], id_comps);
  }

  bf.total->init_comp();
  for (ArrowId f = 0; f < bf.total->n_arrows(); ++f) {
    for (ArrowId g = 0; g < bf.total->n_arrows(); ++g) {
      if (!bf.total->composable(f, g)) continue;
      const auto& af = bf.arrows[f];
      const auto& ag = bf.arrows[g];
      ArrowId alpha = skcat.compose(af.alpha, ag.alpha);
      const FinFunction& alf = bf.skel->fn[af.alpha];
      std::vector<FinFunction> comps;
      for (size_t a = 0; a < af.components.size(); ++a)
        comps.push_back(af.components[a].then(ag.components[alf(static_cast<int>(a))]));
      ArrowId fg = bf.arrow_of(bf.total->dom(f), bf.total->cod(g), alpha, comps);
      bf.total->set_comp(f, g, fg);
    }
  }

  bf.pi.source = bf.total.get();
  bf.pi.target = &bf.skel->cat;
  for (const FinFamilyBundle& b : bf.objects) bf.pi.obj_map.push_back(b.base_size);
  for (const auto& a : bf.arrows) bf.pi.arr_map.push_back(a.alpha);
  return bf;
}

VhSpan comorphism_span(const BundleFibration& bf, const FinFamilyBundle& x,
                       const FinFamilyBundle& y, const FamilyComorphism& f) {
  PullbackResult pb = pullback(f.base_map, y);
  ObjId apex = bf.object_of(pb.bundle);
  ObjId xs = bf.object_of(x);
  ObjId ys = bf.object_of(y);
  if (apex == kNone || xs == kNone || ys == kNone)
    throw std::invalid_argument("comorphism_span: bundle outside the fibration universe");
  ArrowId alpha = bf.skel->arrow_of(f.base_map);
  ArrowId idA = bf.skel->cat.identity[x.base_size];
  ArrowId v = bf.arrow_of(apex, xs, idA, f.components);
  ArrowId h = bf.arrow_of(apex, ys, alpha, pb.to_target.components);
  if (v == kNone || h == kNone)
    throw std::invalid_argument("comorphism_span: legs missing from the fibration");
  return {apex, v, h, &bf.pi};
}

FamilyComorphism span_comorphism(const BundleFibration& bf, const VhSpan& s) {
  const auto& v = bf.arrows[s.vertical];
  const auto& h = bf.arrows[s.horizontal];
  FamilyComorphism f;
  f.base_map = bf.skel->fn[h.alpha];
  const FinFamilyBundle& apex = bf.objects[s.apex];
  for (int a = 0; a < apex.base_size; ++a)
    f.components.push_back(h.components[a].inverted().then(v.components[a]));
  return f;
}

FamilyComorphism compose_comorphisms_by_spans(const FamilyComorphism& f,
                                              const FamilyComorphism& g,
                                              const FinFamilyBundle& x,
                                              const FinFamilyBundle& y,
                                              const FinFamilyBundle& z) {
  const FinFunction& alpha = f.base_map;
  const FinFunction& beta = g.base_map;

  // Spans: apex1 = alpha*(y) with v1 = f-components, h1 = projection;
  //        apex2 = beta*(z) with v2 = g-components, h2 = projection.
  PullbackResult p1 = pullback(alpha, y);
  PullbackResult p2 = pullback(beta, z);
  FamilyMap v1{FinFunction::identity(alpha.dom_size), f.components};
  FamilyMap v2{FinFunction::identity(beta.dom_size), g.components};

  // k: Cartesian lift of alpha with codomain apex2.
  PullbackResult pk = pullback(alpha, p2.bundle);
  FamilyMap k = pk.to_target;

  // w vertical with w.h1 = k.v2, solved per element through h1 (whose
  // components are bijections onto the pullback fibers).
  FamilyMap rhs = compose_family_maps(k, v2);  // over alpha, into y
  FamilyMap w{FinFunction::identity(alpha.dom_size), {}};
  for (int a = 0; a < alpha.dom_size; ++a)
    w.components.push_back(rhs.components[a].then(p1.to_target.components[a].inverted()));
  // the square must commute
  if (compose_family_maps(w, p1.to_target).components != rhs.components)
    throw std::logic_error("compose_comorphisms_by_spans: interpolation square open");

  // Result span: vertical w.v1, horizontal k.h2; its comorphism reads off
  // the vertical leg through the horizontal bijections (identities here).
  FamilyMap vert = compose_family_maps(w, v1);
  FamilyMap horiz = compose_family_maps(k, p2.to_target);
  FamilyComorphism out;
  out.base_map = horiz.base_map;
  for (int a = 0; a < alpha.dom_size; ++a)
    out.components.push_back(horiz.components[a].inverted().then(vert.components[a]));
  (void)x;
  return out;
}

}  // namespace fibcat
