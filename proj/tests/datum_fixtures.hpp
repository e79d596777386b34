// Small hand-checked resolution data shared across test binaries, plus the
// literal-matrix helpers used to write them down.
#pragma once

#include <initializer_list>
#include <map>
#include <string>

#include "ispace/resolution.hpp"

namespace ispace::testing {

inline Vec unit_vec(Index n, Index i) {
  Vec e = Vec::Zero(n);
  e(i) = 1;
  return e;
}

inline Vec rvec(std::initializer_list<int> entries) {
  Vec v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (int e : entries) v(i++) = e;
  return v;
}

inline Mat rmat(std::initializer_list<std::initializer_list<int>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  Mat m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (int e : row) m(i, j++) = e;
    ++i;
  }
  return m;
}

inline bool has_axiom(const ValidationReport& report, const std::string& axiom) {
  for (const auto& v : report.violations) {
    if (v.axiom == axiom) return true;
  }
  return false;
}

inline void add_units(ProductTable& table) {
  for (const auto& [k, dim] : table.space.dims) {
    for (Index i = 0; i < dim; ++i) {
      table.set(0, 0, k, i, unit_vec(dim, i));
      table.set(k, i, 0, 0, unit_vec(dim, i));
    }
  }
}

inline std::map<int, Index> dims_of(const GradedSpace& g) { return g.dims; }

// Cone over a quadric surface P1 x P1 in P4: blowing up the vertex gives the
// P1-bundle X~ = P(O + O(-1,-1)) over D = P1 x P1, an ordinary double point
// of a threefold whose link is rationally S2 x S3.
//
// Basis: H2(X~) = <a, b, e> with a, b the pullbacks of the two line classes
// and e the exceptional divisor class; H4(X~) = <ab, ea, eb>; the restriction
// of e to D is minus the hyperplane class, e|_D = -a - b, so e^2 = -ea - eb.
inline ResolutionDatum conifold_datum(bool with_products = true) {
  ResolutionDatum d;
  d.n = 3;
  d.nu = 1;
  d.hx.set_dim(0, 1);
  d.hx.set_dim(2, 3);
  d.hx.set_dim(4, 3);
  d.hx.set_dim(6, 1);
  d.hx.labels = {{0, {"1"}}, {2, {"a", "b", "e"}}, {4, {"ab", "ea", "eb"}},
                 {6, {"pt"}}};
  d.hd.set_dim(0, 1);
  d.hd.set_dim(2, 2);
  d.hd.set_dim(4, 1);
  d.hd.labels = {{0, {"1"}}, {2, {"a", "b"}}, {4, {"pt"}}};
  d.j[0] = rmat({{1}});
  d.j[2] = rmat({{1, 0, -1}, {0, 1, -1}});
  d.j[4] = rmat({{1, -1, -1}});
  d.gamma[2] = rmat({{0}, {0}, {1}});
  d.gamma[4] = rmat({{0, 0}, {1, 0}, {0, 1}});
  d.gamma[6] = rmat({{1}});
  if (!with_products) return d;

  ResolutionProducts products;
  products.hx.space = d.hx;
  products.hd.space = d.hd;
  add_units(products.hx);
  add_units(products.hd);
  products.hx.set_pair(2, 0, 2, 1, rvec({1, 0, 0}));   // a b  = ab
  products.hx.set_pair(2, 0, 2, 2, rvec({0, 1, 0}));   // a e  = ea
  products.hx.set_pair(2, 1, 2, 2, rvec({0, 0, 1}));   // b e  = eb
  products.hx.set(2, 2, 2, 2, rvec({0, -1, -1}));      // e e  = -ea - eb
  products.hx.set_pair(2, 0, 4, 2, rvec({1}));         // a eb = pt
  products.hx.set_pair(2, 1, 4, 1, rvec({1}));         // b ea = pt
  products.hx.set_pair(2, 2, 4, 0, rvec({1}));         // e ab = pt
  products.hx.set_pair(2, 2, 4, 1, rvec({-1}));        // e ea = -pt
  products.hx.set_pair(2, 2, 4, 2, rvec({-1}));        // e eb = -pt
  products.hd.set_pair(2, 0, 2, 1, rvec({1}));         // a b  = pt
  d.products = std::move(products);
  return d;
}

// Two rational double points (A1) on a surface: D is two disjoint (-2)-curves
// s1, s2, each restricting to -2 times the point class of its own component.
inline ResolutionDatum two_a1_datum() {
  ResolutionDatum d;
  d.n = 2;
  d.nu = 2;
  d.hx.set_dim(0, 1);
  d.hx.set_dim(2, 2);
  d.hx.set_dim(4, 1);
  d.hd.set_dim(0, 2);
  d.hd.set_dim(2, 2);
  d.j[0] = rmat({{1}, {1}});
  d.j[2] = rmat({{-2, 0}, {0, -2}});
  d.gamma[2] = rmat({{1, 0}, {0, 1}});
  d.gamma[4] = rmat({{1, 1}});
  return d;
}

// A smooth point of a curve, blown up trivially: the link is a circle.
inline ResolutionDatum curve_point_datum() {
  ResolutionDatum d;
  d.n = 1;
  d.nu = 1;
  d.hx.set_dim(0, 1);
  d.hx.set_dim(2, 1);
  d.hd.set_dim(0, 1);
  d.j[0] = rmat({{1}});
  d.gamma[2] = rmat({{1}});
  return d;
}

}  // namespace ispace::testing
