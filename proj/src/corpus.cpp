#include "ispace/corpus.hpp"

#include <stdexcept>
#include <utility>

namespace ispace {

namespace {

Vec unit_vec(Index n, Index i) {
  Vec e = Vec::Zero(n);
  e(i) = 1;
  return e;
}

Mat ones(Index r, Index c) { return Mat::Constant(r, c, Rational(1)); }

std::vector<std::string> numbered(const std::string& stem, int from, int to) {
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(to - from + 1));
  for (int i = from; i <= to; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

void add_units(ProductTable& table) {
  for (const auto& [k, dim] : table.space.dims) {
    for (Index i = 0; i < dim; ++i) {
      table.set(0, 0, k, i, unit_vec(dim, i));
      table.set(k, i, 0, 0, unit_vec(dim, i));
    }
  }
}

std::vector<int> constant_partition(Index dim, int component) {
  return std::vector<int>(static_cast<size_t>(dim), component);
}

std::vector<int> identity_partition(Index dim) {
  std::vector<int> out(static_cast<size_t>(dim));
  for (Index i = 0; i < dim; ++i) out[static_cast<size_t>(i)] = static_cast<int>(i);
  return out;
}

// Derives hi keys, the weight table and the loop count from the grid; the
// independent golden data are the grid, the hi dims and the purity list.
ExpectedPage page(std::map<std::pair<int, int>, Index> ei2,
                  std::vector<Index> hi,
                  std::vector<std::pair<int, int>> purity = {}) {
  ExpectedPage p;
  p.ei2 = std::move(ei2);
  for (size_t k = 0; k < hi.size(); ++k) p.hi[static_cast<int>(k)] = hi[k];
  for (const auto& [cell, dim] : p.ei2) {
    const auto& [r, s] = cell;
    if (r == 1 && s == 0) {
      p.loop_count = dim;
      continue;
    }
    p.weights[r + s][s] += dim;
  }
  p.purity_failures = std::move(purity);
  return p;
}

// ---------------------------------------------------------------------------
// Projective cone over a quartic K3 surface S in P4.  Blowing up the vertex
// gives the P1-bundle X~ = P(O + O(-1)) over D = S.  Basis: H2(X~) has the
// exceptional class xi (the zero section, with normal bundle O(-1), so
// xi|_D = -f1 where f1 is the hyperplane class of S) and the pullbacks
// x1..x22 of a self-dual basis f1..f22 of H2(S); H4(X~) has y0 (pullback of
// the point class of S) and yi = xi*xi0... = fi.xi; H6 is generated by
// pt = y0*xi.  All stated ranks (j2 = 22, j4 = 1, gamma2 = 1, gamma4 = 22)
// follow.
CorpusEntry k3cone_entry() {
  CorpusEntry e;
  e.name = "k3cone";
  ResolutionDatum& d = e.datum;
  d.n = 3;
  d.nu = 1;
  d.hx.set_dim(0, 1);
  d.hx.set_dim(2, 23);
  d.hx.set_dim(4, 23);
  d.hx.set_dim(6, 1);
  d.hd.set_dim(0, 1);
  d.hd.set_dim(2, 22);
  d.hd.set_dim(4, 1);
  d.hx.labels[0] = {"1"};
  d.hx.labels[2] = numbered("x", 1, 22);
  d.hx.labels[2].insert(d.hx.labels[2].begin(), "xi");
  d.hx.labels[4] = numbered("y", 0, 22);
  d.hx.labels[6] = {"pt"};
  d.hd.labels[0] = {"1"};
  d.hd.labels[2] = numbered("f", 1, 22);
  d.hd.labels[4] = {"w"};

  d.j[0] = ones(1, 1);
  Mat j2 = Mat::Zero(22, 23);
  j2(0, 0) = -1;  // xi restricts to -f1
  for (Index i = 1; i <= 22; ++i) j2(i - 1, i) = 1;
  d.j[2] = j2;
  Mat j4 = Mat::Zero(1, 23);
  j4(0, 0) = 1;   // y0 restricts to w
  j4(0, 1) = -1;  // y1 = f1.xi restricts to f1.(-f1) = -w
  d.j[4] = j4;

  Mat g2 = Mat::Zero(23, 1);
  g2(0, 0) = 1;  // Gysin image of 1 is the divisor class xi
  d.gamma[2] = g2;
  Mat g4 = Mat::Zero(23, 22);
  for (Index i = 1; i <= 22; ++i) g4(i, i - 1) = 1;  // fi goes to yi
  d.gamma[4] = g4;
  d.gamma[6] = ones(1, 1);

  ResolutionProducts products;
  products.hx.space = d.hx;
  products.hd.space = d.hd;
  add_units(products.hx);
  add_units(products.hd);
  // Degree 2 x 2: xi*xi = -y1, xi*xj = yj, xi*xj = delta_ij y0 (pullbacks).
  products.hx.set(2, 0, 2, 0, -unit_vec(23, 1));
  for (Index i = 1; i <= 22; ++i) {
    products.hx.set_pair(2, 0, 2, i, unit_vec(23, i));
    products.hx.set(2, i, 2, i, unit_vec(23, 0));
  }
  // Degree 2 x 4 into the point class: xi*y0 = pt, xi*y1 = -pt, xi*yi = pt.
  products.hx.set_pair(2, 0, 4, 0, unit_vec(1, 0));
  products.hx.set_pair(2, 0, 4, 1, -unit_vec(1, 0));
  for (Index i = 1; i <= 22; ++i)
    products.hx.set_pair(2, i, 4, i, unit_vec(1, 0));
  // On the K3: fi*fi = w in the chosen self-dual basis.
  for (Index i = 0; i < 22; ++i)
    products.hd.set(2, i, 2, i, unit_vec(1, 0));
  d.products = std::move(products);

  e.partition.component_of = {{0, constant_partition(1, 0)},
                              {2, constant_partition(22, 0)},
                              {4, constant_partition(1, 0)}};
  e.link_dims = {{0, 1}, {2, 21}, {3, 21}, {5, 1}};

  e.expected["0"] = page({{{0, 0}, 1}, {{0, 2}, 22}, {{0, 4}, 1}},
                         {1, 0, 22, 0, 1, 0, 0});
  e.expected["1"] = e.expected["0"];
  e.expected["2"] = page({{{0, 0}, 1}, {{0, 2}, 1}, {{0, 4}, 1}},
                         {1, 0, 1, 0, 1, 0, 0});
  e.expected["3"] = page({{{0, 0}, 1}, {{0, 2}, 1}, {{0, 4}, 22}},
                         {1, 0, 1, 0, 22, 0, 0});
  e.expected["4"] = e.expected["3"];
  e.expected["inf"] = page({{{0, 0}, 1}, {{0, 2}, 1}, {{0, 4}, 22}, {{0, 6}, 1}},
                           {1, 0, 1, 0, 22, 0, 1});
  return e;
}

// ---------------------------------------------------------------------------
// Kummer quartic surface: T^4 modulo the complex involution, 16 ordinary
// double points, resolved by 16 disjoint (-2)-curves.  H2 of the resolution
// is the six invariant torus classes a1..a6 plus the sixteen exceptional
// curves E1..E16; each Ei restricts to -2 times the point class of its own
// curve and the ai die on the divisor.
CorpusEntry kummer_entry() {
  CorpusEntry e;
  e.name = "kummer";
  ResolutionDatum& d = e.datum;
  d.n = 2;
  d.nu = 16;
  d.hx.set_dim(0, 1);
  d.hx.set_dim(2, 22);
  d.hx.set_dim(4, 1);
  d.hd.set_dim(0, 16);
  d.hd.set_dim(2, 16);
  d.hx.labels[0] = {"1"};
  d.hx.labels[2] = numbered("a", 1, 6);
  for (auto& name : numbered("E", 1, 16)) d.hx.labels[2].push_back(name);
  d.hx.labels[4] = {"vol"};
  d.hd.labels[0] = numbered("1_", 1, 16);
  d.hd.labels[2] = numbered("pt", 1, 16);

  d.j[0] = ones(16, 1);
  Mat j2 = Mat::Zero(16, 22);
  for (Index i = 0; i < 16; ++i) j2(i, 6 + i) = -2;
  d.j[2] = j2;
  Mat g2 = Mat::Zero(22, 16);
  for (Index i = 0; i < 16; ++i) g2(6 + i, i) = 1;
  d.gamma[2] = g2;
  d.gamma[4] = ones(1, 16);

  e.partition.component_of = {{0, identity_partition(16)},
                              {2, identity_partition(16)}};
  e.link_dims = {{0, 16}, {3, 16}};

  const ExpectedPage finite =
      page({{{0, 0}, 1}, {{1, 0}, 15}, {{0, 2}, 6}, {{-1, 4}, 15}},
           {1, 0, 6, 15, 0}, {{3, 4}});
  e.expected["0"] = finite;
  e.expected["1"] = finite;
  e.expected["2"] = finite;
  e.expected["inf"] =
      page({{{0, 0}, 1}, {{1, 0}, 15}, {{0, 2}, 6}, {{0, 4}, 1}},
           {1, 0, 6, 0, 1});
  return e;
}

// ---------------------------------------------------------------------------
// The two quintic threefolds share one construction: nodes resolved by
// quadric surfaces P1 x P1 whose two rulings E_i, F_i restrict the divisor
// classes.  H2 of the blown-up variety is the hyperplane class Psi, a block
// of exceptional 2-classes E (one for the generic quintic containing a
// plane, 24 for the psi = 1 quintic), and one dual class Lv_i per node;
// H4 mirrors it.  The stated ranks pin every map:
//   gamma2: 1_i -> Lv_i                  (injective),
//   gamma4: E_i -> E_{phi(i)}v + L_i, F_i -> L_i   (phi onto the E-block),
//   gamma6: all-ones,
//   j0: all-ones, j2: Psi -> 0, E_k -> sum of its E_i fiber,
//       Lv_i -> -E_i - F_i,              j4: L_i -> -w_i.
struct QuinticShape {
  int nodes = 0;     // number of ordinary double points
  int eblock = 0;    // exceptional 2-classes beside Psi and the Lv's
  int h3 = 0;        // middle cohomology of the blow-up
};

ResolutionDatum quintic_datum(const QuinticShape& q) {
  ResolutionDatum d;
  const Index nodes = q.nodes;
  const Index eb = q.eblock;
  const Index h2 = 1 + eb + nodes;
  d.n = 3;
  d.nu = q.nodes;
  d.hx.set_dim(0, 1);
  d.hx.set_dim(2, h2);
  d.hx.set_dim(3, q.h3);
  d.hx.set_dim(4, h2);
  d.hx.set_dim(6, 1);
  d.hd.set_dim(0, nodes);
  d.hd.set_dim(2, 2 * nodes);
  d.hd.set_dim(4, nodes);

  auto phi = [&](Index i) { return i % eb; };  // node -> exceptional class

  Mat g2 = Mat::Zero(h2, nodes);
  for (Index i = 0; i < nodes; ++i) g2(1 + eb + i, i) = 1;
  d.gamma[2] = g2;
  Mat g4 = Mat::Zero(h2, 2 * nodes);
  for (Index i = 0; i < nodes; ++i) {
    g4(1 + phi(i), i) = 1;          // E_i -> E_phi(i)v + L_i
    g4(1 + eb + i, i) = 1;
    g4(1 + eb + i, nodes + i) = 1;  // F_i -> L_i
  }
  d.gamma[4] = g4;
  d.gamma[6] = ones(1, nodes);

  d.j[0] = ones(nodes, 1);
  Mat j2 = Mat::Zero(2 * nodes, h2);
  for (Index i = 0; i < nodes; ++i) {
    j2(i, 1 + phi(i)) = 1;   // E_k collects the nodes in its fiber
    j2(i, 1 + eb + i) = -1;  // Lv_i -> -E_i - F_i
    j2(nodes + i, 1 + eb + i) = -1;
  }
  d.j[2] = j2;
  Mat j4 = Mat::Zero(nodes, h2);
  for (Index i = 0; i < nodes; ++i) j4(i, 1 + eb + i) = -1;
  d.j[4] = j4;
  return d;
}

ComponentPartition quintic_partition(int nodes) {
  ComponentPartition part;
  part.component_of[0] = identity_partition(nodes);
  std::vector<int> deg2 = identity_partition(nodes);
  for (int i = 0; i < nodes; ++i) deg2.push_back(i);
  part.component_of[2] = std::move(deg2);
  part.component_of[4] = identity_partition(nodes);
  return part;
}

CorpusEntry generic_quintic_entry() {
  CorpusEntry e;
  e.name = "generic-quintic";
  e.datum = quintic_datum({.nodes = 16, .eblock = 1, .h3 = 174});
  e.datum.hx.labels[0] = {"1"};
  e.datum.hx.labels[2] = {"Psi", "E"};
  for (auto& name : numbered("Lv", 1, 16)) e.datum.hx.labels[2].push_back(name);
  e.datum.hx.labels[4] = {"Psiv", "Ev"};
  for (auto& name : numbered("L", 1, 16)) e.datum.hx.labels[4].push_back(name);
  e.datum.hx.labels[6] = {"vol"};
  e.datum.hd.labels[0] = numbered("1_", 1, 16);
  e.datum.hd.labels[2] = numbered("E", 1, 16);
  for (auto& name : numbered("F", 1, 16)) e.datum.hd.labels[2].push_back(name);
  e.datum.hd.labels[4] = numbered("w", 1, 16);
  e.partition = quintic_partition(16);
  e.link_dims = {{0, 16}, {2, 16}, {3, 16}, {5, 16}};

  e.expected["0"] = page({{{0, 0}, 1},
                          {{1, 0}, 15},
                          {{0, 2}, 2},
                          {{0, 3}, 174},
                          {{-1, 4}, 15},
                          {{0, 4}, 1},
                          {{-1, 6}, 15}},
                         {1, 0, 2, 189, 1, 15, 0}, {{3, 4}, {5, 6}});
  e.expected["1"] = e.expected["0"];
  e.expected["2"] = page({{{0, 0}, 1},
                          {{1, 0}, 15},
                          {{0, 2}, 1},
                          {{1, 2}, 15},
                          {{0, 3}, 174},
                          {{-1, 4}, 15},
                          {{0, 4}, 1},
                          {{-1, 6}, 15}},
                         {1, 0, 1, 204, 1, 15, 0}, {{3, 2}, {3, 4}, {5, 6}});
  e.expected["3"] = page({{{0, 0}, 1},
                          {{1, 0}, 15},
                          {{0, 2}, 1},
                          {{1, 2}, 15},
                          {{0, 3}, 174},
                          {{0, 4}, 2},
                          {{-1, 6}, 15}},
                         {1, 0, 1, 189, 2, 15, 0}, {{3, 2}, {5, 6}});
  e.expected["4"] = e.expected["3"];
  e.expected["inf"] = page({{{0, 0}, 1},
                            {{1, 0}, 15},
                            {{0, 2}, 1},
                            {{1, 2}, 15},
                            {{0, 3}, 174},
                            {{0, 4}, 2},
                            {{0, 6}, 1}},
                           {1, 0, 1, 189, 2, 0, 1}, {{3, 2}});
  return e;
}

CorpusEntry quintic_entry() {
  CorpusEntry e;
  e.name = "quintic";
  e.datum = quintic_datum({.nodes = 125, .eblock = 24, .h3 = 2});
  e.partition = quintic_partition(125);
  e.link_dims = {{0, 125}, {2, 125}, {3, 125}, {5, 125}};

  e.expected["0"] = page({{{0, 0}, 1},
                          {{1, 0}, 124},
                          {{0, 2}, 25},
                          {{0, 3}, 2},
                          {{-1, 4}, 101},
                          {{0, 4}, 1},
                          {{-1, 6}, 124}},
                         {1, 0, 25, 103, 1, 124, 0}, {{3, 4}, {5, 6}});
  e.expected["1"] = e.expected["0"];
  e.expected["2"] = page({{{0, 0}, 1},
                          {{1, 0}, 124},
                          {{0, 2}, 1},
                          {{1, 2}, 101},
                          {{0, 3}, 2},
                          {{-1, 4}, 101},
                          {{0, 4}, 1},
                          {{-1, 6}, 124}},
                         {1, 0, 1, 204, 1, 124, 0}, {{3, 2}, {3, 4}, {5, 6}});
  e.expected["3"] = page({{{0, 0}, 1},
                          {{1, 0}, 124},
                          {{0, 2}, 1},
                          {{1, 2}, 101},
                          {{0, 3}, 2},
                          {{0, 4}, 25},
                          {{-1, 6}, 124}},
                         {1, 0, 1, 103, 25, 124, 0}, {{3, 2}, {5, 6}});
  e.expected["4"] = e.expected["3"];
  e.expected["inf"] = page({{{0, 0}, 1},
                            {{1, 0}, 124},
                            {{0, 2}, 1},
                            {{1, 2}, 101},
                            {{0, 3}, 2},
                            {{0, 4}, 25},
                            {{0, 6}, 1}},
                           {1, 0, 1, 103, 25, 0, 1}, {{3, 2}});
  return e;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<Index>> split_by_component(
    const ComponentPartition& part, int deg, Index dim, int nu,
    const char* what) {
  std::vector<std::vector<Index>> by_comp(static_cast<size_t>(nu));
  if (dim == 0) return by_comp;
  auto it = part.component_of.find(deg);
  if (it == part.component_of.end() ||
      static_cast<Index>(it->second.size()) != dim)
    throw std::invalid_argument(std::string(what) +
                                ": partition misses a divisor degree");
  for (Index i = 0; i < dim; ++i) {
    const int c = it->second[static_cast<size_t>(i)];
    if (c < 0 || c >= nu)
      throw std::invalid_argument(std::string(what) +
                                  ": component index out of range");
    by_comp[static_cast<size_t>(c)].push_back(i);
  }
  return by_comp;
}

Vec select_rows(const Vec& v, const std::vector<Index>& rows) {
  Vec out(static_cast<Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) out(static_cast<Index>(i)) = v(rows[i]);
  return out;
}

Mat submatrix(const Mat& m, const std::vector<Index>& rows,
              const std::vector<Index>& cols) {
  Mat out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Index>(i), static_cast<Index>(j)) = m(rows[i], cols[j]);
  return out;
}

void square_zero_products(FiniteCDGA& a) {
  for (const auto& [k, dim] : a.space.dims) {
    for (Index i = 0; i < dim; ++i) {
      a.set_product(0, a.unit, k, i, unit_vec(dim, i));
      a.set_product(k, i, 0, a.unit, unit_vec(dim, i));
    }
  }
}

}  // namespace

std::vector<std::string> corpus_names() {
  return {"k3cone", "kummer", "generic-quintic", "quintic"};
}

CorpusEntry load(const std::string& name) {
  if (name == "k3cone") return k3cone_entry();
  if (name == "kummer") return kummer_entry();
  if (name == "generic-quintic") return generic_quintic_entry();
  if (name == "quintic") return quintic_entry();
  throw std::invalid_argument("unknown example: " + name);
}

LinkModels datum_models(const ResolutionDatum& d,
                        const ComponentPartition& partition) {
  const int top = 2 * d.n;
  const int nu = d.nu;

  std::map<int, std::vector<std::vector<Index>>> comp_rows;
  for (int s = 0; s <= top - 2; ++s)
    comp_rows[s] =
        split_by_component(partition, s, d.hd.dim(s), nu, "datum_models");

  std::map<int, Mat> jsharp;  // hoisted: j_sharp recomputes a product
  for (int s = 0; s <= top + 1; ++s) jsharp[s] = d.j_sharp(s);

  // The per-component link spectral sequences only exist when the divisor
  // maps do not couple distinct components.
  for (int s = 0; s <= top; ++s) {
    const Mat& js = jsharp[s];
    for (Index r = 0; r < js.rows(); ++r) {
      for (Index c = 0; c < js.cols(); ++c) {
        if (js(r, c).is_zero()) continue;
        const int rc = partition.component_of.at(s)[static_cast<size_t>(r)];
        const int cc = partition.component_of.at(s - 2)[static_cast<size_t>(c)];
        if (rc != cc)
          throw std::invalid_argument(
              "datum_models: divisor maps couple distinct components");
      }
    }
  }

  LinkModels out;

  // A = H*(X_reg) via the Gysin sequence: degree k is
  // coker gamma^k + ker gamma^{k+1}.
  auto a = std::make_shared<FiniteCDGA>();
  std::map<int, QuotientSpace> coker_g;
  std::map<int, Subspace> ker_g;
  for (int k = 0; k <= top; ++k) {
    coker_g[k] = cokernel(d.gamma_at(k));
    ker_g[k] = kernel(d.gamma_at(k + 1));
    const Index dim = coker_g[k].dim() + ker_g[k].dim();
    if (dim > 0) a->space.set_dim(k, dim);
  }
  if (a->space.dim(0) != 1)
    throw std::invalid_argument("datum_models: regular part not connected");
  a->unit = 0;
  square_zero_products(*a);
  out.regular = a;

  std::map<int, Mat> j_on_reps;  // j applied to the coker representatives
  for (int k = 0; k <= top; ++k)
    j_on_reps[k] = d.j_at(k) * coker_g[k].representatives;

  // B_c = H*(L_c) via the link spectral sequence of component c: degree k is
  // coker(jsharp^k | c) + ker(jsharp^{k+1} | c).
  for (int c = 0; c < nu; ++c) {
    std::map<int, QuotientSpace> coker_js;
    std::map<int, Subspace> ker_js;
    auto block = [&](int s) {
      const std::vector<Index> empty;
      const auto& rows = (s >= 0 && s <= top - 2) ? comp_rows[s][c] : empty;
      const auto& cols = (s - 2 >= 0 && s - 2 <= top - 2) ? comp_rows[s - 2][c] : empty;
      return submatrix(jsharp.at(s), rows, cols);
    };
    auto b = std::make_shared<FiniteCDGA>();
    for (int k = 0; k <= top; ++k) {
      coker_js[k] = cokernel(block(k));
      ker_js[k] = kernel(block(k + 1));
      const Index dim = coker_js[k].dim() + ker_js[k].dim();
      if (dim > 0) b->space.set_dim(k, dim);
    }
    if (b->space.dim(0) != 1)
      throw std::invalid_argument("datum_models: a link component is not connected");
    b->unit = 0;
    square_zero_products(*b);

    CDGAMorphism f;
    f.source = a;
    f.target = b;
    for (int k = 0; k <= top; ++k) {
      const Index adim = a->space.dim(k);
      const Index bdim = b->space.dim(k);
      if (adim == 0 || bdim == 0) continue;
      Mat m = Mat::Zero(bdim, adim);
      const Index a_cok = coker_g[k].dim();
      const Index b_cok = coker_js[k].dim();
      // restriction induced on the divisor-restricted classes
      if (b_cok > 0 && k <= top - 2) {
        for (Index i = 0; i < a_cok; ++i) {
          const Vec vc = select_rows(j_on_reps.at(k).col(i), comp_rows[k][c]);
          m.block(0, i, b_cok, 1) = coker_js[k].projection * vc;
        }
      }
      // literal inclusion of the Gysin kernel into the link kernel
      for (Index i = 0; i < ker_g[k].dim(); ++i) {
        if (ker_js[k].dim() == 0) continue;
        const Vec wc = select_rows(ker_g[k].basis.col(i), comp_rows[k - 1][c]);
        m.block(b_cok, a_cok + i, ker_js[k].dim(), 1) = solve_or_throw(
            ker_js[k].basis, Mat(wc), "gysin kernel leaves the link kernel");
      }
      if (!m.isZero()) f.maps[k] = std::move(m);
    }
    out.links.push_back(b);
    out.restrictions.push_back(std::move(f));
  }
  return out;
}

}  // namespace ispace
