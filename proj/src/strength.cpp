#include "fibcat/strength.hpp"

namespace fibcat {

FinFunction product_map(const FinFunction& f, const FinFunction& g, int) {
  FinFunction out{f.dom_size * g.dom_size, f.cod_size * g.cod_size, {}};
  out.values.reserve(out.dom_size);
  for (int a = 0; a < f.dom_size; ++a)
    for (int b = 0; b < g.dom_size; ++b)
      out.values.push_back(pair_index(f(a), g(b), g.cod_size));
  return out;
}

FinFunction proj1_map(int q_size, int b_size) {
  FinFunction out{q_size * b_size, q_size, {}};
  for (int q = 0; q < q_size; ++q)
    for (int b = 0; b < b_size; ++b) out.values.push_back(q);
  return out;
}

FinFunction proj2_map(int q_size, int b_size) {
  FinFunction out{q_size * b_size, b_size, {}};
  for (int q = 0; q < q_size; ++q)
    for (int b = 0; b < b_size; ++b) out.values.push_back(b);
  return out;
}

int exp_size(int b_size, int d_size) {
  int n = 1;
  for (int i = 0; i < d_size; ++i) {
    n *= b_size;
    if (n > 100000000) throw std::overflow_error("exponential too large");
  }
  return n;
}

namespace {

std::vector<int> exp_decode(int b_size, int d_size, int idx) {
  std::vector<int> f(d_size);
  for (int i = d_size; i-- > 0;) {
    f[i] = idx % b_size;
    idx /= b_size;
  }
  return f;
}

int exp_encode(int b_size, const std::vector<int>& f) {
  int idx = 0;
  for (int v : f) idx = idx * b_size + v;
  return idx;
}

}  // namespace

FinFunction eval_map(int d_size, int b_size) {
  int e = exp_size(b_size, d_size);
  FinFunction out{d_size * e, b_size, {}};
  out.values.reserve(out.dom_size);
  for (int d = 0; d < d_size; ++d)
    for (int i = 0; i < e; ++i) out.values.push_back(exp_decode(b_size, d_size, i)[d]);
  return out;
}

FinFunction eval_at(int d_size, int b_size, int d) {
  int e = exp_size(b_size, d_size);
  FinFunction out{e, b_size, {}};
  for (int i = 0; i < e; ++i) out.values.push_back(exp_decode(b_size, d_size, i)[d]);
  return out;
}

FinFunction exp_post(int d_size, const FinFunction& g) {
  int e = exp_size(g.dom_size, d_size);
  FinFunction out{e, exp_size(g.cod_size, d_size), {}};
  for (int i = 0; i < e; ++i) {
    std::vector<int> f = exp_decode(g.dom_size, d_size, i);
    for (int& v : f) v = g(v);
    out.values.push_back(exp_encode(g.cod_size, f));
  }
  return out;
}

FinFunction exp_pre(const FinFunction& h, int b_size) {
  int e2 = exp_size(b_size, h.cod_size);
  FinFunction out{e2, exp_size(b_size, h.dom_size), {}};
  for (int i = 0; i < e2; ++i) {
    std::vector<int> f = exp_decode(b_size, h.cod_size, i);
    std::vector<int> g(h.dom_size);
    for (int d = 0; d < h.dom_size; ++d) g[d] = f[h(d)];
    out.values.push_back(exp_encode(b_size, g));
  }
  return out;
}

FinEndofunctor identity_endofunctor() {
  return {"identity", [](int n) { return n; }, [](const FinFunction& f) { return f; }};
}

FinEndofunctor square_endofunctor() {
  return {"square", [](int n) { return n * n; },
          [](const FinFunction& f) { return product_map(f, f); }};
}

FinEndofunctor option_endofunctor() {
  return {"option", [](int n) { return n + 1; },
          [](const FinFunction& f) {
            FinFunction out{f.dom_size + 1, f.cod_size + 1, {}};
            for (int i = 0; i < f.dom_size; ++i) out.values.push_back(f(i));
            out.values.push_back(f.cod_size);
            return out;
          }};
}

FinEndofunctor power_endofunctor(int d) {
  return {"power" + std::to_string(d), [d](int n) { return exp_size(n, d); },
          [d](const FinFunction& f) { return exp_post(d, f); }};
}

FinEndofunctor constant_endofunctor(int k) {
  return {"const" + std::to_string(k), [k](int n) { return n * k; },
          [k](const FinFunction& f) { return product_map(f, FinFunction::identity(k)); }};
}

FinEndofunctor compose_endofunctors(const FinEndofunctor& inner,
                                    const FinEndofunctor& outer) {
  FinEndofunctor out;
  out.name = outer.name + "." + inner.name;
  out.size0 = [=](int n) { return outer.size0(inner.size0(n)); };
  out.map0 = [=](const FinFunction& f) { return outer.map0(inner.map0(f)); };
  return out;
}

BundleFunctor identity_bundle_functor() {
  return {identity_endofunctor(), [](int n) { return FinFunction::identity(n); }};
}

BundleFunctor square_bundle_functor() {
  return {square_endofunctor(), [](int n) { return proj1_map(n, n); }};
}

BundleFunctor power_bundle_functor(int d) {
  return {power_endofunctor(d), [d](int n) { return eval_at(d, n, 0); }};
}

BundleFunctor constant_bundle_functor(int k) {
  return {constant_endofunctor(k), [k](int n) { return proj1_map(n, k); }};
}

SectionNat identity_section() {
  return {[](int n) { return FinFunction::identity(n); }};
}

SectionNat diagonal_section() {
  return {[](int n) {
    FinFunction z{n, n * n, {}};
    for (int b = 0; b < n; ++b) z.values.push_back(pair_index(b, b, n));
    return z;
  }};
}

SectionNat constant_function_section(int d) {
  return {[d](int n) {
    FinFunction z{n, exp_size(n, d), {}};
    for (int b = 0; b < n; ++b) z.values.push_back(exp_encode(n, std::vector<int>(d, b)));
    return z;
  }};
}

StrengthData option_strength() {
  return {[](int q, int b) {
    FinFunction t{q * (b + 1), q * b + 1, {}};
    for (int qq = 0; qq < q; ++qq) {
      for (int i = 0; i < b; ++i) t.values.push_back(pair_index(qq, i, b));
      t.values.push_back(q * b);  // the added point is strict
    }
    return t;
  }};
}

namespace {

std::vector<FinFunction> all_functions(int d, int c) {
  std::vector<FinFunction> out;
  if (d == 0) {
    out.push_back({0, c, {}});
    return out;
  }
  if (c == 0) return out;
  std::vector<int> v(d, 0);
  while (true) {
    out.push_back({d, c, v});
    int i = d - 1;
    while (i >= 0 && ++v[i] == c) v[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

}  // namespace

ValidationReport check_tensorial_strength(const FinEndofunctor& F, const StrengthData& t,
                                          int max_size) {
  // Unit law: with the canonical encodings, t''_{1,B} must be the identity.
  for (int b = 0; b <= max_size; ++b) {
    FinFunction t1 = t.tensorial(1, b);
    if (t1 != FinFunction::identity(F.size0(b)))
      return ValidationReport::fail("strength/unit", "t''_{1,B} is not the identity", {b});
  }

  // Naturality in Q and in B.
  for (int q = 0; q <= max_size; ++q) {
    for (int b = 0; b <= max_size; ++b) {
      FinFunction tqb = t.tensorial(q, b);
      for (int q2 = 0; q2 <= max_size; ++q2) {
        for (const FinFunction& u : all_functions(q, q2)) {
          FinFunction lhs = product_map(u, FinFunction::identity(F.size0(b)))
                                .then(t.tensorial(q2, b));
          FinFunction rhs = tqb.then(F.map0(product_map(u, FinFunction::identity(b))));
          if (lhs != rhs)
            return ValidationReport::fail("strength/naturality-Q",
                                          "square fails for a map of parameters", {q, b, q2});
        }
      }
      for (int b2 = 0; b2 <= max_size; ++b2) {
        for (const FinFunction& g : all_functions(b, b2)) {
          FinFunction lhs = product_map(FinFunction::identity(q), F.map0(g))
                                .then(t.tensorial(q, b2));
          FinFunction rhs = tqb.then(F.map0(product_map(FinFunction::identity(q), g)));
          if (lhs != rhs)
            return ValidationReport::fail("strength/naturality-B",
                                          "square fails for a map of carriers", {q, b, b2});
        }
      }

      // Associativity: (QxQ')xB routes agree; the associator is the identity
      // under the canonical pairing.
      for (int q2 = 0; q2 <= max_size; ++q2) {
        FinFunction route1 = product_map(FinFunction::identity(q), t.tensorial(q2, b))
                                 .then(t.tensorial(q, q2 * b));
        FinFunction route2 = t.tensorial(q * q2, b);
        if (route1 != route2)
          return ValidationReport::fail("strength/associativity",
                                        "nested and paired parameters disagree", {q, q2, b});
      }
    }
  }
  return ValidationReport::ok();
}

ValidationReport check_section(const BundleFunctor& F, const SectionNat& z, int max_size) {
  for (int b = 0; b <= max_size; ++b) {
    if (z.z(b).then(F.proj(b)) != FinFunction::identity(b))
      return ValidationReport::fail("section/projection", "z_B is not a section", {b});
  }
  for (int b = 0; b <= max_size; ++b)
    for (int b2 = 0; b2 <= max_size; ++b2)
      for (const FinFunction& g : all_functions(b, b2))
        if (z.z(b).then(F.f0.map0(g)) != g.then(z.z(b2)))
          return ValidationReport::fail("section/naturality", "z not natural", {b, b2});
  return ValidationReport::ok();
}

ValidationReport tensorial_fibrational_bridge(const BundleFunctor& F, const StrengthData& t,
                                              int max_size) {
  for (int q = 0; q <= max_size; ++q) {
    for (int b = 0; b <= max_size; ++b) {
      FinFunction lhs = t.tensorial(q, b).then(F.proj(q * b));
      FinFunction rhs = product_map(FinFunction::identity(q), F.proj(b));
      if (lhs != rhs)
        return ValidationReport::fail("bridge/tdoubx",
                                      "strength does not commute with the projections",
                                      {q, b});
    }
  }
  return ValidationReport::ok();
}

FinFunction canonical_comparison(const BundleFunctor& F, int q, int b) {
  int n = F.f0.size0(q * b);
  FinFunction proj = F.proj(q * b);
  FinFunction f0p2 = F.f0.map0(proj2_map(q, b));
  int fb = F.f0.size0(b);
  FinFunction out{n, q * fb, {}};
  for (int u = 0; u < n; ++u) {
    int qpart = proj(u) / b;  // first coordinate of the base point
    out.values.push_back(pair_index(qpart, f0p2(u), fb));
  }
  return out;
}

StrengthData strength_from_cartesian(const BundleFunctor& F) {
  BundleFunctor copy = F;
  return {[copy](int q, int b) {
    FinFunction c = canonical_comparison(copy, q, b);
    if (!c.is_bijective())
      throw ProductNotPreserved("canonical comparison is not invertible at (" +
                                std::to_string(q) + "," + std::to_string(b) + ")");
    return c.inverted();
  }};
}

StrengthData zero_section_strength(const BundleFunctor& F, const SectionNat& z) {
  BundleFunctor copy = F;
  SectionNat zc = z;
  return {[copy, zc](int q, int b) {
    // product comparison F0(QxB) -> F0(Q) x F0(B) via the two projections
    int n = copy.f0.size0(q * b);
    FinFunction p1 = copy.f0.map0(proj1_map(q, b));
    FinFunction p2 = copy.f0.map0(proj2_map(q, b));
    FinFunction cmp{n, copy.f0.size0(q) * copy.f0.size0(b), {}};
    for (int u = 0; u < n; ++u)
      cmp.values.push_back(pair_index(p1(u), p2(u), copy.f0.size0(b)));
    if (!cmp.is_bijective())
      throw ProductNotPreserved("product comparison is not a bijection at (" +
                                std::to_string(q) + "," + std::to_string(b) + ")");
    FinFunction m = cmp.inverted();
    return product_map(zc.z(q), FinFunction::identity(copy.f0.size0(b))).then(m);
  }};
}

StrengthData compose_strengths(const FinEndofunctor& inner, const StrengthData& t_inner,
                               const FinEndofunctor& outer, const StrengthData& t_outer) {
  FinEndofunctor in = inner, out = outer;
  StrengthData ti = t_inner, to = t_outer;
  return {[=](int q, int b) {
    return to.tensorial(q, in.size0(b)).then(out.map0(ti.tensorial(q, b)));
  }};
}

FinFunction flow_transform(const FinEndofunctor& F, const StrengthData& t, int d_size,
                           int b_size) {
  int e = exp_size(b_size, d_size);
  int fe = F.size0(e);
  int fb = F.size0(b_size);
  FinFunction ev = F.map0(eval_map(d_size, b_size));
  FinFunction tde = t.tensorial(d_size, e);
  FinFunction out{fe, exp_size(fb, d_size), {}};
  for (int u = 0; u < fe; ++u) {
    std::vector<int> table(d_size);
    for (int d = 0; d < d_size; ++d) table[d] = ev(tde(pair_index(d, u, fe)));
    out.values.push_back(exp_encode(fb, table));
  }
  return out;
}

FinFunction prolong_field(const FinEndofunctor& F, const StrengthData& t, int d_size,
                          const FinFunction& xi) {
  int m = xi.dom_size;
  if (xi.cod_size != exp_size(m, d_size))
    throw std::invalid_argument("prolong_field: xi is not M -> D^|M");
  if (xi.then(eval_at(d_size, m, 0)) != FinFunction::identity(m))
    throw std::invalid_argument("prolong_field: xi is not a section of evaluation at 0");
  return F.map0(xi).then(flow_transform(F, t, d_size, m));
}

FinFunction transform_family(const FinEndofunctor& F, const StrengthData& t,
                             const FinFunction& h, int q_size, int m_size) {
  if (h.dom_size != q_size * m_size)
    throw std::invalid_argument("transform_family: h is not Q x M -> N");
  return t.tensorial(q_size, m_size).then(F.map0(h));
}

}  // namespace fibcat
