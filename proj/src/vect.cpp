#include "fibcat/vect.hpp"

#include <stdexcept>

namespace fibcat {

GaloisField GaloisField::make(int q) {
  if (q != 2 && q != 3 && q != 4 && q != 5)
    throw std::invalid_argument("GaloisField: supported orders are 2, 3, 4, 5");
  GaloisField gf;
  gf.q = q;
  gf.add_t.resize(q * q);
  gf.mul_t.resize(q * q);
  if (q == 4) {
    // coefficients: value = 2*c1 + c0 for c1*x + c0, x^2 = x + 1
    auto mul4 = [](int a, int b) {
      int a1 = a >> 1, a0 = a & 1, b1 = b >> 1, b0 = b & 1;
      int c2 = a1 & b1, c1 = (a1 & b0) ^ (a0 & b1), c0 = a0 & b0;
      c1 ^= c2;  // x^2 = x + 1
      c0 ^= c2;
      return 2 * c1 + c0;
    };
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        gf.add_t[a * 4 + b] = a ^ b;
        gf.mul_t[a * 4 + b] = mul4(a, b);
      }
  } else {
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        gf.add_t[a * q + b] = (a + b) % q;
        gf.mul_t[a * q + b] = (a * b) % q;
      }
  }
  gf.neg_t.resize(q);
  gf.inv_t.assign(q, kNone);
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (gf.add(a, b) == 0) gf.neg_t[a] = b;
      if (a != 0 && gf.mul(a, b) == 1) gf.inv_t[a] = b;
    }
  }
  return gf;
}

std::vector<int> decode_vector(int q, int dim, int idx) {
  std::vector<int> v(dim);
  for (int i = dim; i-- > 0;) {
    v[i] = idx % q;
    idx /= q;
  }
  return v;
}

int encode_vector(int q, const std::vector<int>& v) {
  int idx = 0;
  for (int c : v) idx = idx * q + c;
  return idx;
}

Matrix Matrix::identity(int n) {
  Matrix m = zero(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::zero(int rows, int cols) {
  return {rows, cols, std::vector<int>(rows * cols, 0)};
}

Matrix Matrix::transposed() const {
  Matrix t = zero(cols, rows);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
  return t;
}

std::vector<int> Matrix::apply(const GaloisField& gf, const std::vector<int>& x) const {
  if (static_cast<int>(x.size()) != cols)
    throw std::invalid_argument("Matrix::apply: dimension mismatch");
  std::vector<int> y(rows, 0);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) y[r] = gf.add(y[r], gf.mul(at(r, c), x[c]));
  return y;
}

Matrix Matrix::then(const GaloisField& gf, const Matrix& second) const {
  if (second.cols != rows)
    throw std::invalid_argument("Matrix::then: dimension mismatch");
  Matrix out = zero(second.rows, cols);
  for (int r = 0; r < second.rows; ++r)
    for (int c = 0; c < cols; ++c) {
      int acc = 0;
      for (int k = 0; k < rows; ++k)
        acc = gf.add(acc, gf.mul(second.at(r, k), at(k, c)));
      out.at(r, c) = acc;
    }
  return out;
}

bool Matrix::invertible(const GaloisField& gf) const {
  if (rows != cols) return false;
  Matrix m = *this;
  for (int col = 0; col < cols; ++col) {
    int pivot = -1;
    for (int r = col; r < rows; ++r)
      if (m.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return false;
    if (pivot != col)
      for (int c = 0; c < cols; ++c) std::swap(m.at(pivot, c), m.at(col, c));
    int scale = gf.inv(m.at(col, col));
    for (int c = 0; c < cols; ++c) m.at(col, c) = gf.mul(m.at(col, c), scale);
    for (int r = 0; r < rows; ++r) {
      if (r == col || m.at(r, col) == 0) continue;
      int factor = m.at(r, col);
      for (int c = 0; c < cols; ++c)
        m.at(r, c) = gf.add(m.at(r, c), gf.neg(gf.mul(factor, m.at(col, c))));
    }
  }
  return true;
}

int FinVectorBundle::fiber_elems(int a) const {
  int n = 1;
  for (int i = 0; i < dims[a]; ++i) n *= field_order;
  return n;
}

FinFamilyBundle FinVectorBundle::as_family() const {
  FinFamilyBundle f{base_size, {}};
  for (int a = 0; a < base_size; ++a) f.fibers.push_back(fiber_elems(a));
  return f;
}

LinearBundleMap identity_linear_map(const FinVectorBundle& x) {
  LinearBundleMap t;
  t.base_map = FinFunction::identity(x.base_size);
  for (int d : x.dims) t.mats.push_back(Matrix::identity(d));
  return t;
}

LinearBundleMap compose_linear_maps(const GaloisField& gf, const LinearBundleMap& t,
                                    const LinearBundleMap& u) {
  LinearBundleMap out;
  out.base_map = t.base_map.then(u.base_map);
  for (int a = 0; a < t.base_map.dom_size; ++a)
    out.mats.push_back(t.mats[a].then(gf, u.mats[t.base_map(a)]));
  return out;
}

LinearComorphism identity_linear_comorphism(const FinVectorBundle& x) {
  LinearComorphism c;
  c.base_map = FinFunction::identity(x.base_size);
  for (int d : x.dims) c.mats.push_back(Matrix::identity(d));
  return c;
}

LinearComorphism compose_linear_comorphisms(const GaloisField& gf,
                                            const LinearComorphism& f,
                                            const LinearComorphism& g) {
  if (f.base_map.cod_size != g.base_map.dom_size)
    throw std::invalid_argument("compose_linear_comorphisms: base maps not composable");
  LinearComorphism out;
  out.base_map = f.base_map.then(g.base_map);
  for (int a = 0; a < f.base_map.dom_size; ++a)
    out.mats.push_back(g.mats[f.base_map(a)].then(gf, f.mats[a]));
  return out;
}

FamilyMap linear_map_elementwise(const GaloisField& gf, const FinVectorBundle& x,
                                 const FinVectorBundle& y, const LinearBundleMap& t) {
  FamilyMap out;
  out.base_map = t.base_map;
  for (int a = 0; a < x.base_size; ++a) {
    int b = t.base_map(a);
    FinFunction comp{x.fiber_elems(a), y.fiber_elems(b), {}};
    for (int i = 0; i < comp.dom_size; ++i)
      comp.values.push_back(encode_vector(
          gf.q, t.mats[a].apply(gf, decode_vector(gf.q, x.dims[a], i))));
    out.components.push_back(std::move(comp));
  }
  return out;
}

FamilyComorphism linear_comorphism_elementwise(const GaloisField& gf,
                                               const FinVectorBundle& x,
                                               const FinVectorBundle& y,
                                               const LinearComorphism& c) {
  FamilyComorphism out;
  out.base_map = c.base_map;
  for (int a = 0; a < x.base_size; ++a) {
    int b = c.base_map(a);
    FinFunction comp{y.fiber_elems(b), x.fiber_elems(a), {}};
    for (int i = 0; i < comp.dom_size; ++i)
      comp.values.push_back(encode_vector(
          gf.q, c.mats[a].apply(gf, decode_vector(gf.q, y.dims[b], i))));
    out.components.push_back(std::move(comp));
  }
  return out;
}

FinVectorBundle dagger_object(const FinVectorBundle& v) {
  return v;  // same base and dims; elements are covectors in the dual basis
}

LinearComorphism dagger_morphism(const LinearBundleMap& t) {
  LinearComorphism c;
  c.base_map = t.base_map;
  for (const Matrix& m : t.mats) c.mats.push_back(m.transposed());
  return c;
}

LinearBundleMap reverse_dagger(const LinearComorphism& c) {
  LinearBundleMap t;
  t.base_map = c.base_map;
  for (const Matrix& m : c.mats) t.mats.push_back(m.transposed());
  return t;
}

CartesianPreservation check_cartesian_preservation(const GaloisField& gf,
                                                   const LinearBundleMap& t) {
  CartesianPreservation out;
  for (size_t a = 0; a < t.mats.size(); ++a) {
    if (!t.mats[a].invertible(gf)) {
      out.declared_pullback_ok = false;
      out.bad_fiber = static_cast<int>(a);
      out.image_cartesian = false;
      return out;
    }
  }
  LinearComorphism dag = dagger_morphism(t);
  out.image_cartesian = true;
  for (const Matrix& m : dag.mats) out.image_cartesian &= m.invertible(gf);
  return out;
}

TangentData tangent_from_omega(const NeighborhoodRelation& r, int q) {
  TangentData t;
  t.relation = r;
  t.field = GaloisField::make(q);
  t.cotangent.base_size = r.base_size;
  t.cotangent.field_order = q;
  for (int b = 0; b < r.base_size; ++b)
    t.cotangent.dims.push_back(static_cast<int>(r.neighbors(b).size()) - 1);
  t.tangent = dagger_object(t.cotangent);
  return t;
}

LinearComorphism cotangent_comorphism(const NeighborhoodRelation& ra,
                                      const NeighborhoodRelation& rb,
                                      const FinFunction& alpha, int q) {
  RelationCheck rc = relation_preserved(ra, rb, alpha);
  if (!rc.preserved)
    throw std::invalid_argument("cotangent_comorphism: base map does not preserve the relation");
  LinearComorphism out;
  out.base_map = alpha;
  for (int a = 0; a < alpha.dom_size; ++a) {
    int b = alpha(a);
    std::vector<int> rows, cols;
    for (int ap : ra.neighbors(a))
      if (ap != a) rows.push_back(ap);
    for (int bp : rb.neighbors(b))
      if (bp != b) cols.push_back(bp);
    Matrix m = Matrix::zero(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j)
        if (alpha(rows[i]) == cols[j]) m.at(static_cast<int>(i), static_cast<int>(j)) = 1;
    out.mats.push_back(std::move(m));
  }
  (void)q;
  return out;
}

LinearBundleMap tangent_map(const NeighborhoodRelation& ra, const NeighborhoodRelation& rb,
                            const FinFunction& alpha, int q) {
  return reverse_dagger(cotangent_comorphism(ra, rb, alpha, q));
}

}  // namespace fibcat
