#include "ispace/resolution.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ispace {

namespace {

// (-1)^{ab} as a rational sign.
Rational koszul_sign(int deg_a, int deg_b) {
  return (deg_a % 2 != 0 && deg_b % 2 != 0) ? Rational(-1) : Rational(1);
}

bool vec_is_zero(const Vec& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!v(i).is_zero()) return false;
  }
  return true;
}

Mat lookup_or_zero(const std::map<int, Mat>& maps, int s, Index rows,
                   Index cols, const std::string& name) {
  auto it = maps.find(s);
  if (it == maps.end()) return Mat::Zero(rows, cols);
  if (it->second.rows() != rows || it->second.cols() != cols) {
    throw std::invalid_argument(
        name + "^" + std::to_string(s) + " has shape " +
        std::to_string(it->second.rows()) + "x" +
        std::to_string(it->second.cols()) + ", expected " +
        std::to_string(rows) + "x" + std::to_string(cols));
  }
  return it->second;
}

std::string dim_str(Index d) { return std::to_string(d); }

}  // namespace

void ProductTable::set(int deg_a, Index i, int deg_b, Index j, Vec value) {
  if (vec_is_zero(value)) {
    entries.erase(ProductKey{deg_a, deg_b, i, j});
  } else {
    entries[ProductKey{deg_a, deg_b, i, j}] = std::move(value);
  }
}

void ProductTable::set_pair(int deg_a, Index i, int deg_b, Index j,
                            const Vec& value) {
  set(deg_a, i, deg_b, j, value);
  if (deg_a != deg_b || i != j) {
    set(deg_b, j, deg_a, i, Vec(koszul_sign(deg_a, deg_b) * value));
  }
}

Vec ProductTable::at(int deg_a, Index i, int deg_b, Index j) const {
  auto it = entries.find(ProductKey{deg_a, deg_b, i, j});
  if (it != entries.end()) return it->second;
  return Vec::Zero(space.dim(deg_a + deg_b));
}

Vec ProductTable::multiply(int deg_a, const Vec& a, int deg_b,
                           const Vec& b) const {
  Vec out = Vec::Zero(space.dim(deg_a + deg_b));
  // scan the stored (deg_a, deg_b) block; untouched pairs contribute zero
  const auto lo = entries.lower_bound(ProductKey{deg_a, deg_b, 0, 0});
  for (auto it = lo; it != entries.end(); ++it) {
    const auto& [ka, kb, i, j] = it->first;
    if (ka != deg_a || kb != deg_b) break;
    if (i >= a.size() || j >= b.size())
      throw std::invalid_argument("product table: vector/degree size mismatch");
    if (a(i).is_zero() || b(j).is_zero()) continue;
    const Rational c = a(i) * b(j);
    out += c * it->second;
  }
  return out;
}

Mat ResolutionDatum::gamma_at(int s) const {
  return lookup_or_zero(gamma, s, hx.dim(s), hd.dim(s - 2), "gamma");
}

Mat ResolutionDatum::j_at(int s) const {
  return lookup_or_zero(j, s, hd.dim(s), hx.dim(s), "j");
}

Mat ResolutionDatum::j_sharp(int s) const {
  return sparse_product(j_at(s), gamma_at(s));
}

namespace {

// Shape problems make every rank statement meaningless, so validate checks
// them first and stops there when any are found.
std::vector<Violation> shape_violations(const ResolutionDatum& d) {
  std::vector<Violation> out;
  if (d.n < 1)
    out.push_back({"shape", "complex dimension n = " + std::to_string(d.n)});
  if (d.nu < 0)
    out.push_back({"shape", "negative singular point count"});
  for (const auto& [k, dim] : d.hx.dims) {
    if (dim > 0 && (k < 0 || k > 2 * d.n))
      out.push_back({"degree_range", "H^" + std::to_string(k) +
                                         " of the resolution is nonzero"});
  }
  for (const auto& [k, dim] : d.hd.dims) {
    if (dim > 0 && (k < 0 || k > 2 * d.n - 2))
      out.push_back({"degree_range", "H^" + std::to_string(k) +
                                         " of the divisor is nonzero"});
  }
  for (const auto& [s, m] : d.gamma) {
    if (m.rows() != d.hx.dim(s) || m.cols() != d.hd.dim(s - 2))
      out.push_back({"shape", "gamma^" + std::to_string(s) + " is " +
                                  dim_str(m.rows()) + "x" + dim_str(m.cols()) +
                                  ", expected " + dim_str(d.hx.dim(s)) + "x" +
                                  dim_str(d.hd.dim(s - 2))});
  }
  for (const auto& [s, m] : d.j) {
    if (m.rows() != d.hd.dim(s) || m.cols() != d.hx.dim(s))
      out.push_back({"shape", "j^" + std::to_string(s) + " is " +
                                  dim_str(m.rows()) + "x" + dim_str(m.cols()) +
                                  ", expected " + dim_str(d.hd.dim(s)) + "x" +
                                  dim_str(d.hx.dim(s))});
  }
  if (d.products) {
    if (!(d.products->hx.space == d.hx))
      out.push_back({"shape", "product table dims differ from H*(X~)"});
    if (!(d.products->hd.space == d.hd))
      out.push_back({"shape", "product table dims differ from H*(D)"});
    for (const auto* table : {&d.products->hx, &d.products->hd}) {
      for (const auto& [key, value] : table->entries) {
        const auto& [ka, kb, i, j] = key;
        if (i >= table->space.dim(ka) || j >= table->space.dim(kb) ||
            value.size() != table->space.dim(ka + kb)) {
          out.push_back({"shape", "product entry at degrees (" +
                                      std::to_string(ka) + ", " +
                                      std::to_string(kb) + ")"});
        }
      }
    }
  }
  return out;
}

void check_unit(const ProductTable& table, const Vec& unit,
                const std::string& ring, std::vector<Violation>& out) {
  for (const auto& [k, dim] : table.space.dims) {
    for (Index i = 0; i < dim; ++i) {
      Vec e = Vec::Zero(dim);
      e(i) = 1;
      if (table.multiply(0, unit, k, e) != e ||
          table.multiply(k, e, 0, unit) != e) {
        out.push_back({"unitality", ring + " unit does not fix " +
                                        table.space.label(k, i)});
      }
    }
  }
}

void check_commutativity_and_associativity(const ProductTable& table,
                                           const std::string& ring,
                                           std::vector<Violation>& out) {
  for (const auto& [key, value] : table.entries) {
    const auto& [ka, kb, i, j] = key;
    if (table.at(kb, j, ka, i) != Vec(koszul_sign(ka, kb) * value)) {
      out.push_back({"graded_commutativity",
                     ring + " at (" + table.space.label(ka, i) + ", " +
                         table.space.label(kb, j) + ")"});
    }
  }
  const int top = table.space.max_degree();
  for (const auto& [ka, da] : table.space.dims) {
    for (const auto& [kb, db] : table.space.dims) {
      for (const auto& [kc, dc] : table.space.dims) {
        if (ka + kb + kc > top) continue;
        for (Index i = 0; i < da; ++i) {
          for (Index j = 0; j < db; ++j) {
            const Vec ab = table.at(ka, i, kb, j);
            for (Index k = 0; k < dc; ++k) {
              Vec ec = Vec::Zero(dc);
              ec(k) = 1;
              const Vec left = table.multiply(ka + kb, ab, kc, ec);
              Vec ea = Vec::Zero(da);
              ea(i) = 1;
              const Vec right =
                  table.multiply(ka, ea, kb + kc, table.at(kb, j, kc, k));
              if (left != right) {
                out.push_back({"associativity",
                               ring + " at (" + table.space.label(ka, i) +
                                   ", " + table.space.label(kb, j) + ", " +
                                   table.space.label(kc, k) + ")"});
              }
            }
          }
        }
      }
    }
  }
}

void check_products(const ResolutionDatum& d, std::vector<Violation>& out) {
  const ProductTable& hx = d.products->hx;
  const ProductTable& hd = d.products->hd;
  Vec unit_x = Vec::Zero(d.hx.dim(0));
  if (unit_x.size() == 1) unit_x(0) = 1;
  const Vec unit_d = d.j_at(0) * unit_x;  // restriction of 1 to the divisor
  check_unit(hx, unit_x, "H*(X~)", out);
  check_unit(hd, unit_d, "H*(D)", out);
  check_commutativity_and_associativity(hx, "H*(X~)", out);
  check_commutativity_and_associativity(hd, "H*(D)", out);
  // j is a ring map: j(x y) == j(x) j(y) on all basis pairs.
  for (const auto& [ka, da] : d.hx.dims) {
    for (const auto& [kb, db] : d.hx.dims) {
      if (ka + kb > 2 * d.n) continue;
      const Mat ja = d.j_at(ka);
      const Mat jb = d.j_at(kb);
      const Mat jab = d.j_at(ka + kb);
      for (Index i = 0; i < da; ++i) {
        for (Index j = 0; j < db; ++j) {
          const Vec left = jab * hx.at(ka, i, kb, j);
          const Vec right = hd.multiply(ka, ja.col(i), kb, jb.col(j));
          if (left != right) {
            out.push_back({"restriction_multiplicative",
                           "(" + d.hx.label(ka, i) + ", " +
                               d.hx.label(kb, j) + ")"});
          }
        }
      }
    }
  }
  // Projection formula: gamma(j(x) a) == x gamma(a) on all basis pairs.
  for (const auto& [s, dx] : d.hx.dims) {
    for (const auto& [sp, dd] : d.hd.dims) {
      if (s + sp + 2 > 2 * d.n) continue;
      const Mat js = d.j_at(s);
      const Mat g_in = d.gamma_at(sp + 2);
      const Mat g_out = d.gamma_at(s + sp + 2);
      for (Index i = 0; i < dx; ++i) {
        for (Index a = 0; a < dd; ++a) {
          Vec ea = Vec::Zero(dd);
          ea(a) = 1;
          const Vec left = g_out * hd.multiply(s, js.col(i), sp, ea);
          Vec ex = Vec::Zero(dx);
          ex(i) = 1;
          const Vec right = hx.multiply(s, ex, sp + 2, g_in.col(a));
          if (left != right) {
            out.push_back({"projection_formula",
                           "(" + d.hx.label(s, i) + ", " +
                               d.hd.label(sp, a) + ")"});
          }
        }
      }
    }
  }
}

}  // namespace

ValidationReport validate(const ResolutionDatum& d) {
  ValidationReport report;
  report.violations = shape_violations(d);
  if (!report.violations.empty()) return report;
  auto& out = report.violations;

  if (d.hx.dim(0) != 1)
    out.push_back({"connectivity", "dim H^0(X~) = " + dim_str(d.hx.dim(0)) +
                                       ", expected 1"});
  if (d.hd.dim(0) != d.nu)
    out.push_back({"components", "dim H^0(D) = " + dim_str(d.hd.dim(0)) +
                                     ", expected nu = " +
                                     std::to_string(d.nu)});
  for (int k = 0; k <= d.n; ++k) {
    if (d.hx.dim(k) != d.hx.dim(2 * d.n - k))
      out.push_back({"poincare_duality",
                     "dim H^" + std::to_string(k) + "(X~) = " +
                         dim_str(d.hx.dim(k)) + " but dim H^" +
                         std::to_string(2 * d.n - k) + "(X~) = " +
                         dim_str(d.hx.dim(2 * d.n - k))});
  }
  for (int k = 0; 2 * k <= 2 * d.n - 2; ++k) {
    if (d.hd.dim(k) != d.hd.dim(2 * d.n - 2 - k))
      out.push_back({"poincare_duality",
                     "dim H^" + std::to_string(k) + "(D) = " +
                         dim_str(d.hd.dim(k)) + " but dim H^" +
                         std::to_string(2 * d.n - 2 - k) + "(D) = " +
                         dim_str(d.hd.dim(2 * d.n - 2 - k))});
  }

  for (int s = 0; s <= 2 * d.n; ++s) {
    const Mat js = d.j_sharp(s);
    const Index r = rank(js);
    if (s <= d.n && r < js.cols())
      out.push_back({"semipurity", "jsharp^" + std::to_string(s) +
                                       " has kernel of dim " +
                                       dim_str(js.cols() - r)});
    if (s >= d.n && r < js.rows())
      out.push_back({"semipurity", "jsharp^" + std::to_string(s) +
                                       " has cokernel of dim " +
                                       dim_str(js.rows() - r)});
  }

  for (int s = 0; s <= d.n; ++s) {
    const Mat g = d.gamma_at(s);
    if (rank(g) < g.cols())
      out.push_back({"gysin_rank",
                     "gamma^" + std::to_string(s) + " is not injective"});
  }
  {
    const Mat g = d.gamma_at(2 * d.n);
    if (rank(g) < g.rows())
      out.push_back({"gysin_rank", "gamma^" + std::to_string(2 * d.n) +
                                       " is not surjective"});
  }
  for (int s = d.n; s <= 2 * d.n; ++s) {
    const Mat m = d.j_at(s);
    if (rank(m) < m.rows())
      out.push_back({"restriction_rank",
                     "j^" + std::to_string(s) + " is not surjective"});
  }

  for (int s = 0; s <= d.n; ++s) {
    const Mat g = d.gamma_at(d.n + s);
    const Mat m = d.j_at(d.n - s);
    const Index rg = rank(g);
    const Index rj = rank(m);
    if (g.rows() - rg != m.cols() - rj)
      out.push_back({"duality_ranks",
                     "dim coker gamma^" + std::to_string(d.n + s) + " = " +
                         dim_str(g.rows() - rg) + " but dim ker j^" +
                         std::to_string(d.n - s) + " = " +
                         dim_str(m.cols() - rj)});
    if (g.cols() - rg != m.rows() - rj)
      out.push_back({"duality_ranks",
                     "dim ker gamma^" + std::to_string(d.n + s) + " = " +
                         dim_str(g.cols() - rg) + " but dim coker j^" +
                         std::to_string(d.n - s) + " = " +
                         dim_str(m.rows() - rj)});
  }

  if (d.products) check_products(d, out);
  return report;
}

ValidationReport validate_threefold(const ResolutionDatum& d) {
  if (d.n != 3)
    throw std::invalid_argument("threefold checks need complex dimension 3");
  ValidationReport report;
  report.violations = shape_violations(d);
  if (!report.violations.empty()) return report;
  auto& out = report.violations;

  for (int k : {1, 3, 5}) {
    const Mat js = d.j_sharp(k);
    if (js.rows() != js.cols() || rank(js) != js.rows())
      out.push_back({"jsharp_iso", "jsharp^" + std::to_string(k) +
                                       " is not an isomorphism"});
  }
  if (rank(d.j_sharp(2)) < d.hd.dim(0))
    out.push_back({"jsharp_rank", "jsharp^2 is not injective"});
  if (rank(d.j_sharp(4)) < d.hd.dim(4))
    out.push_back({"jsharp_rank", "jsharp^4 is not surjective"});
  for (int k = 0; k <= 6; ++k) {
    if (k == 4 || k == 6) continue;
    const Mat g = d.gamma_at(k);
    if (rank(g) < g.cols())
      out.push_back({"gysin_injective",
                     "gamma^" + std::to_string(k) + " is not injective"});
  }
  for (int k = 1; k <= 6; ++k) {
    if (k == 2) continue;
    const Mat m = d.j_at(k);
    if (rank(m) < m.rows())
      out.push_back({"restriction_surjective",
                     "j^" + std::to_string(k) + " is not surjective"});
  }
  for (int k : {1, 3, 5}) {
    const Subspace ker = kernel(d.j_at(k));
    const Subspace im = image(d.gamma_at(k));
    if (intersect(ker, im).dim() != 0 || ker.dim() + im.dim() != d.hx.dim(k))
      out.push_back({"odd_splitting",
                     "H^" + std::to_string(k) +
                         "(X~) != ker j + im gamma"});
  }
  if (intersect(kernel(d.j_at(2)), image(d.gamma_at(2))).dim() != 0)
    out.push_back({"even_splitting", "ker j^2 meets im gamma^2"});
  {
    const CoimChoice coim = choose_coim(d, Perversity::finite(3));
    const Subspace ker = kernel(d.j_at(4));
    const Subspace im = image(Mat(d.gamma_at(4) * coim.subspace.basis));
    if (intersect(ker, im).dim() != 0 || ker.dim() + im.dim() != d.hx.dim(4))
      out.push_back({"even_splitting",
                     "H^4(X~) != ker j + im gamma on the degree-3 coimage"});
  }
  return report;
}

GradedSpace link_cohomology(const ResolutionDatum& d) {
  std::map<int, Index> dims;
  for (int s = 0; s <= 2 * d.n; ++s) {
    const Mat js = d.j_sharp(s);
    const Index r = rank(js);
    dims[s] += js.rows() - r;      // coker jsharp^s sits in degree s
    dims[s - 1] += js.cols() - r;  // ker jsharp^s sits in degree s-1
  }
  GradedSpace out;
  for (const auto& [k, dim] : dims) out.set_dim(k, dim);
  return out;
}

CoimChoice choose_coim(const ResolutionDatum& d, const Perversity& p) {
  if (!p.is_finite())
    throw std::invalid_argument("choose_coim: finite perversity required");
  CoimChoice c;
  c.p = p;
  c.subspace = choose_complement(kernel(d.j_sharp(p.value() + 1)));
  return c;
}

ValidationReport validate_coim(const ResolutionDatum& d, const CoimChoice& c) {
  ValidationReport report;
  auto& out = report.violations;
  if (!c.p.is_finite()) {
    out.push_back({"shape", "coimage choice with infinite perversity"});
    return report;
  }
  const int p = c.p.value();
  if (c.subspace.ambient_dim != d.hd.dim(p - 1)) {
    out.push_back({"shape", "ambient dim " + dim_str(c.subspace.ambient_dim) +
                                " differs from dim H^" +
                                std::to_string(p - 1) + "(D) = " +
                                dim_str(d.hd.dim(p - 1))});
    return report;
  }
  const Subspace ker = kernel(d.j_sharp(p + 1));
  if (intersect(ker, c.subspace).dim() != 0)
    out.push_back({"complement",
                   "subspace meets ker jsharp^" + std::to_string(p + 1)});
  if (ker.dim() + c.subspace.dim() != d.hd.dim(p - 1))
    out.push_back({"complement",
                   "dims " + dim_str(c.subspace.dim()) + " + " +
                       dim_str(ker.dim()) + " do not fill H^" +
                       std::to_string(p - 1) + "(D)"});
  return report;
}

namespace {

using nlohmann::json;

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

// Accepts either an array of rows or a flat row-major array.
Mat matrix_from_json(const json& data, Index rows, Index cols,
                     const std::string& what) {
  if (!data.is_array())
    throw std::invalid_argument("resolution json: " + what +
                                " is not an array");
  Mat m = Mat::Zero(rows, cols);
  if (!data.empty() && data.front().is_array()) {
    if (static_cast<Index>(data.size()) != rows)
      throw std::invalid_argument("resolution json: " + what +
                                  " has the wrong number of rows");
    for (Index r = 0; r < rows; ++r) {
      const json& row = data[static_cast<size_t>(r)];
      if (static_cast<Index>(row.size()) != cols)
        throw std::invalid_argument("resolution json: ragged matrix in " +
                                    what);
      for (Index c = 0; c < cols; ++c)
        m(r, c) = Rational(row[static_cast<size_t>(c)].get<std::string>());
    }
  } else {
    if (static_cast<Index>(data.size()) != rows * cols)
      throw std::invalid_argument("resolution json: " + what + " has " +
                                  std::to_string(data.size()) +
                                  " entries, expected " +
                                  std::to_string(rows * cols));
    for (Index r = 0; r < rows; ++r)
      for (Index c = 0; c < cols; ++c)
        m(r, c) =
            Rational(data[static_cast<size_t>(r * cols + c)].get<std::string>());
  }
  return m;
}

json dims_to_json(const GradedSpace& g, int top) {
  json out = json::array();
  for (int k = 0; k <= top; ++k) out.push_back(g.dim(k));
  return out;
}

json table_to_json(const ProductTable& table) {
  json out = json::array();
  for (const auto& [key, value] : table.entries) {
    const auto& [ka, kb, i, j] = key;
    json entry;
    entry["da"] = ka;
    entry["i"] = i;
    entry["db"] = kb;
    entry["j"] = j;
    json coeffs = json::array();
    for (Index c = 0; c < value.size(); ++c) coeffs.push_back(value(c).str());
    entry["value"] = std::move(coeffs);
    out.push_back(std::move(entry));
  }
  return out;
}

ProductTable table_from_json(const json& data, const GradedSpace& space,
                             const std::string& what) {
  ProductTable table;
  table.space = space;
  if (!data.is_array())
    throw std::invalid_argument("resolution json: " + what +
                                " products are not an array");
  for (const json& entry : data) {
    const int ka = entry.at("da").get<int>();
    const int kb = entry.at("db").get<int>();
    const Index i = entry.at("i").get<Index>();
    const Index j = entry.at("j").get<Index>();
    const json& coeffs = entry.at("value");
    if (static_cast<Index>(coeffs.size()) != space.dim(ka + kb))
      throw std::invalid_argument("resolution json: " + what +
                                  " product value has the wrong length");
    Vec value = Vec::Zero(space.dim(ka + kb));
    for (Index c = 0; c < value.size(); ++c)
      value(c) = Rational(coeffs[static_cast<size_t>(c)].get<std::string>());
    table.set(ka, i, kb, j, std::move(value));
  }
  return table;
}

void labels_from_json(const json& in, const char* field, GradedSpace& g) {
  if (!in.contains(field)) return;
  for (const auto& [key, names] : in.at(field).items()) {
    std::vector<std::string> out;
    for (const json& name : names) out.push_back(name.get<std::string>());
    g.labels[std::stoi(key)] = std::move(out);
  }
}

}  // namespace

std::string resolution_to_json(const ResolutionDatum& d) {
  json out;
  out["n"] = d.n;
  out["nu"] = d.nu;
  out["hx"] = dims_to_json(d.hx, 2 * d.n);
  out["hd"] = dims_to_json(d.hd, 2 * d.n - 2);
  const auto emit_labels = [&out](const char* field, const GradedSpace& g) {
    if (g.labels.empty()) return;
    json labels = json::object();
    for (const auto& [k, names] : g.labels) labels[std::to_string(k)] = names;
    out[field] = std::move(labels);
  };
  emit_labels("hx_labels", d.hx);
  emit_labels("hd_labels", d.hd);
  json gamma = json::object();
  for (const auto& [s, m] : d.gamma) {
    if (!m.isZero()) gamma[std::to_string(s)] = matrix_to_json(m);
  }
  out["gamma"] = std::move(gamma);
  json j = json::object();
  for (const auto& [s, m] : d.j) {
    if (!m.isZero()) j[std::to_string(s)] = matrix_to_json(m);
  }
  out["j"] = std::move(j);
  if (d.products) {
    json products;
    products["hx"] = table_to_json(d.products->hx);
    products["hd"] = table_to_json(d.products->hd);
    out["products"] = std::move(products);
  }
  return out.dump(2);
}

ResolutionDatum resolution_from_json(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("resolution json: ") + e.what());
  }
  ResolutionDatum d;
  d.n = in.at("n").get<int>();
  d.nu = in.at("nu").get<int>();
  if (d.n < 1) throw std::invalid_argument("resolution json: need n >= 1");
  const json& hx = in.at("hx");
  for (size_t k = 0; k < hx.size(); ++k)
    d.hx.set_dim(static_cast<int>(k), hx[k].get<Index>());
  const json& hd = in.at("hd");
  for (size_t k = 0; k < hd.size(); ++k)
    d.hd.set_dim(static_cast<int>(k), hd[k].get<Index>());
  labels_from_json(in, "hx_labels", d.hx);
  labels_from_json(in, "hd_labels", d.hd);
  if (in.contains("gamma")) {
    for (const auto& [key, m] : in.at("gamma").items()) {
      const int s = std::stoi(key);
      d.gamma[s] = matrix_from_json(m, d.hx.dim(s), d.hd.dim(s - 2),
                                    "gamma^" + key);
    }
  }
  if (in.contains("j")) {
    for (const auto& [key, m] : in.at("j").items()) {
      const int s = std::stoi(key);
      d.j[s] = matrix_from_json(m, d.hd.dim(s), d.hx.dim(s), "j^" + key);
    }
  }
  if (in.contains("products")) {
    ResolutionProducts products;
    products.hx = table_from_json(in.at("products").at("hx"), d.hx, "H*(X~)");
    products.hd = table_from_json(in.at("products").at("hd"), d.hd, "H*(D)");
    d.products = std::move(products);
  }
  return d;
}

ResolutionDatum resolution_from_stream(std::istream& in) {
  std::ostringstream text;
  text << in.rdbuf();
  return resolution_from_json(text.str());
}

ResolutionDatum resolution_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return resolution_from_stream(in);
}

}  // namespace ispace
