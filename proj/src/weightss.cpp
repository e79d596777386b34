#include "ispace/weightss.hpp"

#include <stdexcept>

namespace ispace {

namespace {

// Row regimes of a page: the cut row s == p+1 carries the coimage summand,
// rows above it keep all t-powers, rows below only positive ones; infinite
// perversity puts every positive row below the cut.
enum class RowKind { zero, low, cut, high };

RowKind row_kind(const Perversity& p, int s) {
  if (s == 0) return RowKind::zero;
  if (!p.is_finite()) return RowKind::low;
  if (s < p.value() + 1) return RowKind::low;
  if (s == p.value() + 1) return RowKind::cut;
  return RowKind::high;
}

std::string component_name(const Perversity& p, int r, int s) {
  const std::string deg = std::to_string(s);
  switch (row_kind(p, s)) {
    case RowKind::zero:
      if (r == 0) return "H^0(X~)";
      if (r == 1) return "coker j^0 (loops)";
      break;
    case RowKind::low:
      if (r == 0) return "ker j^" + deg;
      if (r == 1) return "coker j^" + deg;
      break;
    case RowKind::cut:
      if (r == 0) return "coker gamma^" + deg + "|coim";
      break;
    case RowKind::high:
      if (r == -1) return "ker gamma^" + deg;
      if (r == 0) return "coker gamma^" + deg;
      break;
  }
  return "";
}

CoimChoice effective_coim(const ResolutionDatum& d, const Perversity& p,
                          const std::optional<CoimChoice>& coim) {
  if (!p.is_finite()) {
    CoimChoice c;
    c.p = p;
    return c;
  }
  if (!coim) return choose_coim(d, p);
  if (coim->p != p)
    throw std::invalid_argument(
        "coimage choice is for a different perversity");
  if (!validate_coim(d, *coim).ok())
    throw std::invalid_argument("coimage choice is not a valid complement");
  return *coim;
}

}  // namespace

Index Page::dim(int r, int s) const {
  auto it = cells.find({r, s});
  return it == cells.end() ? 0 : it->second.dim;
}

Mat Page::d_minus1_at(int s) const {
  auto it = d_minus1.find(s);
  if (it != d_minus1.end()) return it->second;
  return Mat::Zero(dim(0, s), dim(-1, s));
}

Mat Page::d_zero_at(int s) const {
  auto it = d_zero.find(s);
  if (it != d_zero.end()) return it->second;
  return Mat::Zero(dim(1, s), dim(0, s));
}

Page build_EI1(const ResolutionDatum& d, const Perversity& p, int tbound,
               const std::optional<CoimChoice>& coim) {
  if (tbound < 1)
    throw std::invalid_argument("page construction needs tbound >= 1");
  Page page;
  page.p = p;
  page.tbound = tbound;
  page.n = d.n;
  page.coim = effective_coim(d, p, coim);
  const int T = tbound;

  for (int s = 0; s <= 2 * d.n; ++s) {
    const RowKind kind = row_kind(p, s);
    const Index hx_s = d.hx.dim(s);
    const Index hd_s = d.hd.dim(s);
    const Index hd_m2 = d.hd.dim(s - 2);
    const Mat gamma_s = d.gamma_at(s);
    const Mat j_s = d.j_at(s);
    const Mat jsharp_s = d.j_sharp(s);
    // lowest t-power admitted in the fiber product of this row
    const int k = (kind == RowKind::high || kind == RowKind::cut) ? 0 : 1;
    const int istart = (kind == RowKind::high) ? 0 : 1;
    const bool with_u0 = (kind == RowKind::zero && hd_s > 0);

    const Index amb_m1 = hd_m2 * (T + 1);
    const Index t_off = hx_s;                    // t-block offset, column 0
    const Index dt_off = hx_s + hd_s * (T + 1);  // dt-block offset, column 0
    const Index amb_0 = dt_off + hd_m2 * T;

    // ---- cell (-1, s): coimage summand, then t-powers ----
    PageCell cm1;
    Mat m1_basis;
    if (kind != RowKind::zero) {
      const Index n_coim =
          (kind == RowKind::cut) ? page.coim.subspace.dim() : 0;
      cm1.dim = n_coim + hd_m2 * (T + 1 - istart);
      m1_basis = Mat::Zero(amb_m1, cm1.dim);
      Index col = 0;
      for (Index c = 0; c < n_coim; ++c, ++col) {
        for (Index e = 0; e < hd_m2; ++e)
          m1_basis(e, col) = page.coim.subspace.basis(e, c);  // t^0 block
        cm1.labels.push_back("coim(" + std::to_string(c) + ")");
      }
      for (int i = istart; i <= T; ++i) {
        for (Index e = 0; e < hd_m2; ++e, ++col) {
          m1_basis(i * hd_m2 + e, col) = 1;
          cm1.labels.push_back(d.hd.label(s - 2, e) + "*t^" +
                               std::to_string(i));
        }
      }
    }

    // ---- cell (0, s): fiber-product basis (graphs, the shared-unit
    // corrector u0 in the bottom row, kernel combinations), then dt-powers --
    PageCell c0;
    c0.dim = hx_s + (with_u0 ? 1 : 0) + hd_s * (T - k) + hd_m2 * T;
    Mat z_basis = Mat::Zero(amb_0, c0.dim);
    const Index graph_at = 0;
    const Index u0_at = graph_at + hx_s;
    const Index combo_at = u0_at + (with_u0 ? 1 : 0);
    const Index dtcol_at = combo_at + hd_s * (T - k);
    auto combo_col = [&](int i, Index f) {
      return combo_at + static_cast<Index>(i - k - 1) * hd_s + f;
    };
    auto dt_col = [&](int i, Index g) {
      return dtcol_at + static_cast<Index>(i) * hd_m2 + g;
    };
    for (Index e = 0; e < hx_s; ++e) {
      z_basis(e, graph_at + e) = 1;
      for (Index f = 0; f < hd_s; ++f)
        z_basis(t_off + k * hd_s + f, graph_at + e) = j_s(f, e);
      c0.labels.push_back("graph(" + d.hx.label(s, e) + ")");
    }
    if (with_u0) {
      for (Index f = 0; f < hd_s; ++f) {
        z_basis(t_off + f, u0_at) = 1;            // +1 at every t^0 slot
        z_basis(t_off + hd_s + f, u0_at) = -1;    // -1 at every t^1 slot
      }
      c0.labels.push_back("u0");
    }
    for (int i = k + 1; i <= T; ++i) {
      for (Index f = 0; f < hd_s; ++f) {
        z_basis(t_off + i * hd_s + f, combo_col(i, f)) = 1;
        z_basis(t_off + k * hd_s + f, combo_col(i, f)) = -1;
        c0.labels.push_back("ker(" + d.hd.label(s, f) + ",t^" +
                            std::to_string(i) + ")");
      }
    }
    for (int i = 0; i < T; ++i) {
      for (Index g = 0; g < hd_m2; ++g) {
        z_basis(dt_off + i * hd_m2 + g, dt_col(i, g)) = 1;
        c0.labels.push_back(d.hd.label(s - 2, g) + "*t^" + std::to_string(i) +
                            "dt");
      }
    }

    // ---- cell (1, s): dt-powers over H^s(D) ----
    PageCell c1;
    c1.dim = hd_s * T;
    for (int i = 0; i < T; ++i)
      for (Index f = 0; f < hd_s; ++f)
        c1.labels.push_back(d.hd.label(s, f) + "*t^" + std::to_string(i) +
                            "dt");

    // ---- differential (-1,s) -> (0,s) ----
    // t-power generator w t^i goes to the graph of gamma(w), plus the kernel
    // combination carrying jsharp(w) at power i, minus i w t^{i-1} dt; the
    // sign makes the two columns compose to zero.  A coimage generator c
    // sits at t^0 and goes to the graph of gamma(c) on the nose.
    if (cm1.dim > 0 && c0.dim > 0) {
      Mat dm = Mat::Zero(c0.dim, cm1.dim);
      Index col = 0;
      if (kind == RowKind::cut) {
        const Mat on_graphs = sparse_product(gamma_s, page.coim.subspace.basis);
        for (Index c = 0; c < page.coim.subspace.dim(); ++c, ++col)
          for (Index e = 0; e < hx_s; ++e)
            dm(graph_at + e, col) = on_graphs(e, c);
      }
      for (int i = istart; i <= T; ++i) {
        for (Index e = 0; e < hd_m2; ++e, ++col) {
          for (Index x = 0; x < hx_s; ++x)
            dm(graph_at + x, col) = gamma_s(x, e);
          if (i > k) {
            for (Index f = 0; f < hd_s; ++f)
              dm(combo_col(i, f), col) = jsharp_s(f, e);
          }
          if (i >= 1) dm(dt_col(i - 1, e), col) = Rational(-i);
        }
      }
      page.d_minus1[s] = std::move(dm);
    }

    // ---- differential (0,s) -> (1,s) ----
    if (c0.dim > 0 && c1.dim > 0) {
      Mat dz = Mat::Zero(c1.dim, c0.dim);
      auto target = [&](int i, Index f) {
        return static_cast<Index>(i) * hd_s + f;
      };
      if (k == 1) {
        for (Index e = 0; e < hx_s; ++e)
          for (Index f = 0; f < hd_s; ++f)
            dz(target(0, f), graph_at + e) = j_s(f, e);
      }
      if (with_u0) {
        for (Index f = 0; f < hd_s; ++f) dz(target(0, f), u0_at) = -1;
      }
      for (int i = k + 1; i <= T; ++i) {
        for (Index f = 0; f < hd_s; ++f) {
          dz(target(i - 1, f), combo_col(i, f)) = Rational(i);
          if (k == 1) dz(target(0, f), combo_col(i, f)) -= 1;
        }
      }
      for (int i = 0; i < T; ++i)
        for (Index g = 0; g < hd_m2; ++g)
          for (Index f = 0; f < hd_s; ++f)
            dz(target(i, f), dt_col(i, g)) = jsharp_s(f, g);
      page.d_zero[s] = std::move(dz);
    }

    if (page.d_zero.count(s) != 0 && page.d_minus1.count(s) != 0 &&
        !sparse_product(page.d_zero.at(s), page.d_minus1.at(s)).isZero())
      throw std::logic_error("page differentials do not compose to zero");

    if (cm1.dim > 0) {
      page.cells[{-1, s}] = std::move(cm1);
      page.basis_minus1[s] = std::move(m1_basis);
    }
    if (c0.dim > 0) {
      page.cells[{0, s}] = std::move(c0);
      page.basis_zero[s] = std::move(z_basis);
    }
    if (c1.dim > 0) page.cells[{1, s}] = std::move(c1);
  }
  return page;
}

Index EI2Result::dim(int r, int s) const {
  auto it = dims.find({r, s});
  return it == dims.end() ? 0 : it->second;
}

namespace {

void set_cell(EI2Result& out, const Perversity& p, int r, int s, Index dim) {
  if (dim <= 0) return;
  out.dims[{r, s}] = dim;
  out.components[{r, s}] = component_name(p, r, s);
}

}  // namespace

EI2Result compute_EI2_direct(const Page& page) {
  EI2Result out;
  out.p = page.p;
  for (int s = 0; s <= 2 * page.n; ++s) {
    const Mat dm = page.d_minus1_at(s);
    const Mat dz = page.d_zero_at(s);
    if (!sparse_product(dz, dm).isZero())
      throw std::logic_error("page differentials do not compose to zero");
    const Index rank_m = rank(dm);
    const Index rank_z = rank(dz);
    set_cell(out, page.p, -1, s, page.dim(-1, s) - rank_m);
    set_cell(out, page.p, 0, s, page.dim(0, s) - rank_z - rank_m);
    set_cell(out, page.p, 1, s, page.dim(1, s) - rank_z);
  }
  return out;
}

EI2Result compute_EI2_closed(const ResolutionDatum& d, const Perversity& p,
                             const std::optional<CoimChoice>& coim_opt) {
  const CoimChoice coim = effective_coim(d, p, coim_opt);
  EI2Result out;
  out.p = p;
  for (int s = 0; s <= 2 * d.n; ++s) {
    const Index hx_s = d.hx.dim(s);
    const Index hd_s = d.hd.dim(s);
    const Index hd_m2 = d.hd.dim(s - 2);
    switch (row_kind(p, s)) {
      case RowKind::zero: {
        set_cell(out, p, 0, s, hx_s);
        set_cell(out, p, 1, s, hd_s - rank(d.j_at(s)));
        break;
      }
      case RowKind::low: {
        const Index rj = rank(d.j_at(s));
        set_cell(out, p, 0, s, hx_s - rj);
        set_cell(out, p, 1, s, hd_s - rj);
        break;
      }
      case RowKind::cut: {
        const Index rg = rank(sparse_product(d.gamma_at(s), coim.subspace.basis));
        set_cell(out, p, 0, s, hx_s - rg);
        break;
      }
      case RowKind::high: {
        const Index rg = rank(d.gamma_at(s));
        set_cell(out, p, -1, s, hd_m2 - rg);
        set_cell(out, p, 0, s, hx_s - rg);
        break;
      }
    }
  }
  return out;
}

Index WeightReport::dim(int k) const {
  auto it = hi.find(k);
  return it == hi.end() ? 0 : it->second;
}

WeightReport assemble_HI(const EI2Result& e2, int n) {
  WeightReport report;
  report.p = e2.p;
  for (int k = 0; k <= 2 * n; ++k) report.hi[k] = 0;
  for (const auto& [cell, dim] : e2.dims) {
    const auto& [r, s] = cell;
    if (r == 1 && s == 0) {
      report.loop_count = dim;
      continue;
    }
    report.weights[r + s][s] += dim;
    report.hi[r + s] += dim;
  }
  return report;
}

Vec CellClasses::class_of(const Vec& v) const {
  if (reps.dim() == 0) return Vec::Zero(0);
  const Mat sol = solve_or_throw(zb, Mat(v), "not a cocycle of this cell");
  return sol.bottomRows(reps.dim()).col(0);
}

Mat CellClasses::classes_of(const Mat& vs) const {
  Mat out(h_dim(), vs.cols());
  for (Index c = 0; c < vs.cols(); ++c) out.col(c) = class_of(vs.col(c));
  return out;
}

namespace {

CellClasses cell_classes(const Mat& incoming, const Mat& outgoing) {
  CellClasses c;
  const Subspace cocycles = kernel(outgoing);
  c.boundaries = image(incoming);
  c.reps = complement_within(c.boundaries, cocycles);
  c.zb = Mat(c.boundaries.ambient_dim,
             c.boundaries.dim() + c.reps.dim());
  if (c.boundaries.dim() > 0)
    c.zb.leftCols(c.boundaries.dim()) = c.boundaries.basis;
  if (c.reps.dim() > 0) c.zb.rightCols(c.reps.dim()) = c.reps.basis;
  return c;
}

CellClasses cell_classes_of(const Page& page, int r, int s) {
  switch (r) {
    case -1:
      return cell_classes(Mat::Zero(page.dim(-1, s), 0),
                          page.d_minus1_at(s));
    case 0:
      return cell_classes(page.d_minus1_at(s), page.d_zero_at(s));
    default:
      return cell_classes(page.d_zero_at(s),
                          Mat::Zero(0, page.dim(1, s)));
  }
}

}  // namespace

PageMorphism page_poset_map(const Page& from, const Page& to) {
  if (from.tbound != to.tbound || from.n != to.n)
    throw std::invalid_argument("pages built with different bounds");
  const bool comparable =
      from.p.is_infinity() ||
      (to.p.is_finite() && from.p.value() >= to.p.value());
  if (!comparable)
    throw std::invalid_argument("pages are not comparable in the poset");

  PageMorphism mor;
  mor.from = from.p;
  mor.to = to.p;
  for (int s = 0; s <= 2 * from.n; ++s) {
    // Solve for each from-basis vector inside the to-basis; the strata of
    // the earlier page always span a subspace of the later one.
    Mat m_m1 = Mat::Zero(to.dim(-1, s), from.dim(-1, s));
    if (from.dim(-1, s) > 0) {
      m_m1 = solve_or_throw(to.basis_minus1.at(s), from.basis_minus1.at(s),
                            "page cells are not nested");
    }
    Mat m_0 = Mat::Zero(to.dim(0, s), from.dim(0, s));
    if (from.dim(0, s) > 0) {
      m_0 = solve_or_throw(to.basis_zero.at(s), from.basis_zero.at(s),
                           "page cells are not nested");
    }
    if (from.dim(1, s) != to.dim(1, s))
      throw std::invalid_argument("dt strata of the two pages differ");
    const Mat m_1 = Mat::Identity(from.dim(1, s), from.dim(1, s));

    if (Mat(to.d_minus1_at(s) * m_m1) != Mat(m_0 * from.d_minus1_at(s)) ||
        Mat(to.d_zero_at(s) * m_0) != Mat(m_1 * from.d_zero_at(s)))
      throw std::logic_error("page comparison map is not a chain map");

    if (m_m1.size() > 0) mor.cell_maps[{-1, s}] = m_m1;
    if (m_0.size() > 0) mor.cell_maps[{0, s}] = m_0;
    if (m_1.size() > 0) mor.cell_maps[{1, s}] = m_1;

    const Mat* maps[3] = {&m_m1, &m_0, &m_1};
    for (int r = -1; r <= 1; ++r) {
      const CellClasses from_h = cell_classes_of(from, r, s);
      if (from_h.h_dim() == 0 && cell_classes_of(to, r, s).h_dim() == 0)
        continue;
      const CellClasses to_h = cell_classes_of(to, r, s);
      Mat induced = Mat::Zero(to_h.h_dim(), from_h.h_dim());
      for (Index c = 0; c < from_h.h_dim(); ++c) {
        const Vec image_vec = (*maps[r + 1]) * from_h.reps.basis.col(c);
        if (to_h.h_dim() > 0) induced.col(c) = to_h.class_of(image_vec);
      }
      mor.induced_e2[{r, s}] = std::move(induced);
    }
  }
  return mor;
}

bool ei2_stable(const ResolutionDatum& d, const Perversity& p, int tbound,
                const std::optional<CoimChoice>& coim) {
  const EI2Result a = compute_EI2_direct(build_EI1(d, p, tbound, coim));
  const EI2Result b = compute_EI2_direct(build_EI1(d, p, tbound + 1, coim));
  return a.dims == b.dims;
}

}  // namespace ispace
