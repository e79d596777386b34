#include "ispace/cotrunc.hpp"

#include <set>

namespace ispace {

namespace {

Rational sign_of_degree(int k) { return k % 2 != 0 ? Rational(-1) : Rational(1); }

std::set<int> carrier_degrees(const FiniteCDGA& base) {
  std::set<int> degrees;
  for (const auto& [k, d] : base.space.dims) {
    if (d > 0) {
      degrees.insert(k);
      degrees.insert(k + 1);  // dt-stratum
    }
  }
  return degrees;
}

}  // namespace

// ----------------------------------------------------------------- builders

int TdtAlgebra::t_width(int deg) const {
  auto it = twidth.find(deg);
  return it == twidth.end() ? 0 : it->second;
}

Index TdtAlgebra::t_index(int deg, int i, Index e) const {
  return static_cast<Index>(i) * base->space.dim(deg) + e;
}

Index TdtAlgebra::dt_index(int deg, int i, Index e) const {
  const Index t_block =
      static_cast<Index>(t_width(deg + 1) + 1) * base->space.dim(deg + 1);
  return t_block + static_cast<Index>(i) * base->space.dim(deg) + e;
}

namespace {

// Shared builder; the width map decides the realization.  Widths must be
// monotone in the degree so that d never overflows.
TdtAlgebra build_widths(std::shared_ptr<const FiniteCDGA> base, int tbound,
                        bool staircase) {
  if (tbound < 1) throw std::invalid_argument("tdt: need tbound >= 1");
  TdtAlgebra out;
  out.base = std::move(base);
  out.tbound = tbound;
  const FiniteCDGA& a = *out.base;
  for (const auto& [k, d] : a.space.dims) {
    if (d > 0) out.twidth[k] = staircase ? tbound * k : tbound;
  }
  const auto w = [&](int k) { return out.t_width(k); };

  auto carrier = std::make_shared<FiniteCDGA>();
  FiniteCDGA& c = *carrier;
  for (int k : carrier_degrees(a)) {
    const Index dk =
        (w(k) + 1) * a.space.dim(k) + w(k - 1) * a.space.dim(k - 1);
    if (dk == 0) continue;
    c.space.set_dim(k, dk);
    std::vector<std::string> names;
    for (int i = 0; i <= w(k); ++i) {
      for (Index e = 0; e < a.space.dim(k); ++e) {
        names.push_back(a.space.label(k, e) + (i == 0 ? "" : "*t^" + std::to_string(i)));
      }
    }
    for (int i = 0; i < w(k - 1); ++i) {
      for (Index e = 0; e < a.space.dim(k - 1); ++e) {
        names.push_back(a.space.label(k - 1, e) +
                        (i == 0 ? "*dt" : "*t^" + std::to_string(i) + "dt"));
      }
    }
    c.space.labels[k] = std::move(names);
  }
  c.unit = out.t_index(0, 0, a.unit);

  // differential: d(e t^i) = (de) t^i + (-1)^{|e|} i e t^{i-1} dt,
  //               d(e t^i dt) = (de) t^i dt
  for (const auto& [k, dimk] : c.space.dims) {
    Mat d = Mat::Zero(c.space.dim(k + 1), dimk);
    const Mat d_base_k = a.d_at(k);
    for (int i = 0; i <= w(k); ++i) {
      for (Index e = 0; e < a.space.dim(k); ++e) {
        const Index col = out.t_index(k, i, e);
        for (Index m = 0; m < a.space.dim(k + 1); ++m) {
          if (!d_base_k(m, e).is_zero()) {
            d(out.t_index(k + 1, i, m), col) = d_base_k(m, e);
          }
        }
        if (i > 0) {
          d(out.dt_index(k, i - 1, e), col) = sign_of_degree(k) * Rational(i);
        }
      }
    }
    const Mat d_base_km1 = a.d_at(k - 1);
    for (int i = 0; i < w(k - 1); ++i) {
      for (Index e = 0; e < a.space.dim(k - 1); ++e) {
        const Index col = out.dt_index(k - 1, i, e);
        for (Index m = 0; m < a.space.dim(k); ++m) {
          if (!d_base_km1(m, e).is_zero()) {
            d(out.dt_index(k, i, m), col) = d_base_km1(m, e);
          }
        }
      }
    }
    c.diff[k] = std::move(d);
  }

  // products, spread over t-powers; dt·dt = 0 needs no entries.  Powers past
  // the target width truncate to zero — with staircase widths (additive in
  // the degree) this never happens and the product is the honest one.
  for (const auto& [key, v] : a.product) {
    const auto& [ka, kb, i, j] = key;
    for (int pa = 0; pa <= w(ka); ++pa) {
      for (int pb = 0; pb <= w(kb); ++pb) {
        const int r = pa + pb;
        if (r <= w(ka + kb)) {
          // (e t^pa)(f t^pb) = ef t^{pa+pb}
          Vec value = Vec::Zero(c.space.dim(ka + kb));
          for (Index m = 0; m < v.size(); ++m) {
            if (!v(m).is_zero()) value(out.t_index(ka + kb, r, m)) = v(m);
          }
          c.set_product(ka, out.t_index(ka, pa, i), kb, out.t_index(kb, pb, j),
                        value);
        }
        if (r <= w(ka + kb) - 1) {
          Vec tdt = Vec::Zero(c.space.dim(ka + kb + 1));
          for (Index m = 0; m < v.size(); ++m) {
            if (!v(m).is_zero()) tdt(out.dt_index(ka + kb, r, m)) = v(m);
          }
          if (pb < w(kb)) {
            // (e t^pa)(f t^pb dt) = ef t^{pa+pb} dt, no sign
            c.set_product(ka, out.t_index(ka, pa, i), kb + 1,
                          out.dt_index(kb, pb, j), tdt);
          }
          if (pa < w(ka)) {
            // (e t^pa dt)(f t^pb) = (-1)^{|f|} ef t^{pa+pb} dt
            c.set_product(ka + 1, out.dt_index(ka, pa, i), kb,
                          out.t_index(kb, pb, j), Vec(sign_of_degree(kb) * tdt));
          }
        }
      }
    }
  }

  out.carrier = carrier;

  // evaluation at t = 1
  out.evaluation.source = out.carrier;
  out.evaluation.target = out.base;
  for (const auto& [k, dimk] : c.space.dims) {
    Mat ev = Mat::Zero(a.space.dim(k), dimk);
    for (int i = 0; i <= w(k); ++i) {
      for (Index e = 0; e < a.space.dim(k); ++e) {
        ev(e, out.t_index(k, i, e)) = 1;
      }
    }
    out.evaluation.maps[k] = std::move(ev);
  }
  return out;
}

}  // namespace

TdtAlgebra build_tdt(std::shared_ptr<const FiniteCDGA> base, int tbound) {
  return build_widths(std::move(base), tbound, /*staircase=*/false);
}

TdtAlgebra build_staircase(std::shared_ptr<const FiniteCDGA> base, int tbound) {
  return build_widths(std::move(base), tbound, /*staircase=*/true);
}

// --------------------------------------------------------------- Coim choices

CotruncationChoice default_cotruncation_choice(const TdtAlgebra& a) {
  CotruncationChoice choice;
  for (const auto& [k, dimk] : a.base->space.dims) {
    if (dimk > 0) choice.coim[k] = choose_complement(kernel(a.base->d_at(k)));
  }
  return choice;
}

ValidationReport validate_choice(const TdtAlgebra& a,
                                 const CotruncationChoice& choice) {
  ValidationReport rep;
  for (const auto& [k, coim] : choice.coim) {
    const Mat d = a.base->d_at(k);
    if (coim.ambient_dim != a.base->space.dim(k)) {
      rep.violations.push_back(
          {"choice", "degree " + std::to_string(k) + ": wrong ambient"});
      continue;
    }
    if (intersect(coim, kernel(d)).dim() != 0) {
      rep.violations.push_back(
          {"choice", "degree " + std::to_string(k) + ": section meets ker d"});
    }
    if (!image(Mat(d * coim.basis)).same_space_as(image(d))) {
      rep.violations.push_back(
          {"choice",
           "degree " + std::to_string(k) + ": d(section) misses im d"});
    }
  }
  return rep;
}

// -------------------------------------------------------- unital cotruncation

Cotruncation unital_cotruncation(const TdtAlgebra& a, const Perversity& p,
                                 const CotruncationChoice& choice) {
  const FiniteCDGA& c = *a.carrier;
  const FiniteCDGA& base = *a.base;
  if (base.space.dim(0) != 1) {
    throw std::invalid_argument(
        "unital cotruncation needs a connected base (dim A^0 == 1); split "
        "link components first");
  }
  Cotruncation out;
  for (const auto& [r, dimr] : c.space.dims) {
    if (dimr == 0) continue;
    const bool full = p.is_finite() && r > p.value();
    if (full) {
      out.strata[r] = Subspace::full(dimr);
      continue;
    }
    IncrementalSpan span(dimr);
    std::vector<Vec> cols;
    auto push = [&](const Vec& v) {
      if (span.try_insert(v)) cols.push_back(v);
    };
    auto push_basis_vector = [&](Index idx) {
      Vec v = Vec::Zero(dimr);
      v(idx) = 1;
      push(v);
    };
    if (r == 0) push_basis_vector(c.unit);
    for (int i = 1; i <= a.t_width(r); ++i) {
      for (Index e = 0; e < base.space.dim(r); ++e) {
        push_basis_vector(a.t_index(r, i, e));
      }
    }
    for (int i = 0; i < a.t_width(r - 1); ++i) {
      for (Index e = 0; e < base.space.dim(r - 1); ++e) {
        push_basis_vector(a.dt_index(r - 1, i, e));
      }
    }
    if (p.is_finite() && r == p.value()) {
      // the base-level section, embedded at t^0
      auto it = choice.coim.find(r);
      if (it != choice.coim.end()) {
        for (Index col = 0; col < it->second.dim(); ++col) {
          Vec v = Vec::Zero(dimr);
          for (Index e = 0; e < base.space.dim(r); ++e) {
            const Rational& x = it->second.basis(e, col);
            if (!x.is_zero()) v(a.t_index(r, 0, e)) = x;
          }
          push(v);
        }
      }
    }
    Mat basis(dimr, static_cast<Index>(cols.size()));
    for (size_t i = 0; i < cols.size(); ++i) {
      basis.col(static_cast<Index>(i)) = cols[i];
    }
    out.strata[r] = Subspace{dimr, std::move(basis)};
  }

  // assemble the sub-cdga on the stratum bases
  auto alg = std::make_shared<FiniteCDGA>();
  for (const auto& [r, sub] : out.strata) {
    alg->space.set_dim(r, sub.dim());
    std::vector<std::string> names;
    for (Index col = 0; col < sub.dim(); ++col) {
      Index hits = 0, where = -1;
      for (Index row = 0; row < sub.ambient_dim; ++row) {
        if (!sub.basis(row, col).is_zero()) {
          ++hits;
          where = row;
        }
      }
      if (hits == 1 && sub.basis(where, col) == Rational(1)) {
        names.push_back(c.space.label(r, where));
      } else {
        names.push_back("c" + std::to_string(r) + "_" + std::to_string(col));
      }
    }
    alg->space.labels[r] = std::move(names);
  }
  alg->unit = 0;  // the unit column is inserted first in degree 0

  auto stratum = [&](int r) -> Subspace {
    auto it = out.strata.find(r);
    if (it != out.strata.end()) return it->second;
    return Subspace::zero(c.space.dim(r));
  };
  for (const auto& [r, sub] : out.strata) {
    try {
      alg->diff[r] = matrix_in_bases(c.d_at(r), sub, stratum(r + 1));
    } catch (const std::exception&) {
      throw std::runtime_error(
          "cotruncation strata not closed under d at degree " +
          std::to_string(r) + " (invalid Coim choice?)");
    }
  }
  for (const auto& [r, sub_r] : out.strata) {
    for (const auto& [s, sub_s] : out.strata) {
      const Subspace target = stratum(r + s);
      for (Index i = 0; i < sub_r.dim(); ++i) {
        for (Index j = 0; j < sub_s.dim(); ++j) {
          const Vec v =
              c.multiply(r, sub_r.basis.col(i), s, sub_s.basis.col(j));
          if (v.isZero()) continue;
          try {
            alg->set_product(r, i, s, j, target.coords(Mat(v)).col(0));
          } catch (const std::exception&) {
            throw std::runtime_error(
                "cotruncation strata not closed under the product at degrees "
                "(" + std::to_string(r) + "," + std::to_string(s) + ")");
          }
        }
      }
    }
  }

  out.algebra = alg;
  out.inclusion.source = alg;
  out.inclusion.target = a.carrier;
  for (const auto& [r, sub] : out.strata) out.inclusion.maps[r] = sub.basis;
  return out;
}

// ------------------------------------------------------------------ pullbacks

namespace {

struct PullbackParts {
  std::vector<TdtAlgebra> tdts;
  std::vector<CotruncationChoice> choices;
};

PullbackParts make_parts(const std::vector<CDGAMorphism>& components,
                         int tbound,
                         const std::vector<CotruncationChoice>* choices) {
  if (components.empty())
    throw std::invalid_argument("pullback: need at least one link component");
  for (size_t i = 1; i < components.size(); ++i) {
    if (components[i].source.get() != components[0].source.get())
      throw std::invalid_argument("pullback: components must share the source");
  }
  PullbackParts parts;
  for (size_t i = 0; i < components.size(); ++i) {
    // the staircase realization keeps evaluation multiplicative, which the
    // fiber product needs to close under its componentwise product
    parts.tdts.push_back(build_staircase(components[i].target, tbound));
    parts.choices.push_back(choices != nullptr
                                ? choices->at(i)
                                : default_cotruncation_choice(parts.tdts.back()));
  }
  return parts;
}

PullbackCDGA pullback_from_parts(const std::vector<CDGAMorphism>& components,
                                 const Perversity& p,
                                 const PullbackParts& parts,
                                 bool with_products) {
  PullbackCDGA out;
  out.source = components[0].source;
  const FiniteCDGA& a = *out.source;
  for (size_t i = 0; i < components.size(); ++i) {
    out.factors.push_back(
        unital_cotruncation(parts.tdts[i], p, parts.choices[i]));
  }
  const size_t nc = components.size();

  // degrees where anything lives
  std::set<int> degrees;
  for (const auto& [k, d] : a.space.dims) degrees.insert(k);
  for (const auto& f : out.factors) {
    for (const auto& [k, s] : f.strata) degrees.insert(k);
  }

  // ambient = A ⊕ (⊕ cotruncation algebras); per-degree block offsets
  auto cotr_dim = [&](size_t i, int k) {
    return out.factors[i].algebra->space.dim(k);
  };
  auto ambient_dim = [&](int k) {
    Index n = a.space.dim(k);
    for (size_t i = 0; i < nc; ++i) n += cotr_dim(i, k);
    return n;
  };

  // constraint rows: f_i(x) - evaluation(w_i) == 0 for each component
  std::map<int, Mat> kernel_bases;
  for (int k : degrees) {
    Index rows = 0;
    for (size_t i = 0; i < nc; ++i) {
      rows += components[i].target->space.dim(k);
    }
    Mat constraint = Mat::Zero(rows, ambient_dim(k));
    Index row0 = 0;
    Index col0 = a.space.dim(k);
    for (size_t i = 0; i < nc; ++i) {
      const Index bi = components[i].target->space.dim(k);
      if (bi > 0) {
        constraint.block(row0, 0, bi, a.space.dim(k)) = components[i].map_at(k);
        if (cotr_dim(i, k) > 0) {
          const Mat eval_inc = parts.tdts[i].evaluation.map_at(k) *
                               out.factors[i].inclusion.map_at(k);
          constraint.block(row0, col0, bi, cotr_dim(i, k)) = -eval_inc;
        }
      }
      row0 += bi;
      col0 += cotr_dim(i, k);
    }
    Mat basis = kernel_basis(constraint);
    if (k == 0) {
      // re-basis so the unit (1_A, 1, ..., 1) is the first column
      Vec unit = Vec::Zero(ambient_dim(0));
      if (a.space.dim(0) > 0) unit(a.unit) = 1;
      Index off = a.space.dim(0);
      for (size_t i = 0; i < nc; ++i) {
        if (cotr_dim(i, 0) > 0) unit(off + out.factors[i].algebra->unit) = 1;
        off += cotr_dim(i, 0);
      }
      IncrementalSpan span(ambient_dim(0));
      std::vector<Vec> cols;
      if (span.try_insert(unit)) cols.push_back(unit);
      for (Index c = 0; c < basis.cols(); ++c) {
        if (span.try_insert(basis.col(c))) cols.push_back(basis.col(c));
      }
      Mat rebased(ambient_dim(0), static_cast<Index>(cols.size()));
      for (size_t c = 0; c < cols.size(); ++c) {
        rebased.col(static_cast<Index>(c)) = cols[c];
      }
      if (rebased.cols() != basis.cols())
        throw std::logic_error("pullback: unit escapes the fiber product");
      basis = std::move(rebased);
    }
    kernel_bases[k] = std::move(basis);
  }

  // blockwise differential on the ambient sum
  auto ambient_d = [&](int k) {
    Mat d = Mat::Zero(ambient_dim(k + 1), ambient_dim(k));
    d.block(0, 0, a.space.dim(k + 1), a.space.dim(k)) = a.d_at(k);
    Index r0 = a.space.dim(k + 1), c0 = a.space.dim(k);
    for (size_t i = 0; i < nc; ++i) {
      const Mat di = out.factors[i].algebra->d_at(k);
      if (di.rows() > 0 && di.cols() > 0) d.block(r0, c0, di.rows(), di.cols()) = di;
      r0 += cotr_dim(i, k + 1);
      c0 += cotr_dim(i, k);
    }
    return d;
  };

  auto alg = std::make_shared<FiniteCDGA>();
  for (const auto& [k, basis] : kernel_bases) alg->space.set_dim(k, basis.cols());
  alg->unit = 0;
  for (const auto& [k, basis] : kernel_bases) {
    const auto next = kernel_bases.find(k + 1);
    const Mat target = next == kernel_bases.end()
                           ? Mat(Mat::Zero(ambient_dim(k + 1), 0))
                           : next->second;
    alg->diff[k] = solve_or_throw(target, Mat(ambient_d(k) * basis),
                                  "pullback not closed under d");
  }

  if (with_products) {
    // componentwise products of basis columns, re-expressed in the kernel basis
    auto ambient_mul = [&](int ka, const Vec& x, int kb, const Vec& y) {
      Vec v = Vec::Zero(ambient_dim(ka + kb));
      v.head(a.space.dim(ka + kb)) =
          a.multiply(ka, x.head(a.space.dim(ka)), kb, y.head(a.space.dim(kb)));
      Index ra = a.space.dim(ka), rb = a.space.dim(kb), rv = a.space.dim(ka + kb);
      for (size_t i = 0; i < nc; ++i) {
        const auto& ci = *out.factors[i].algebra;
        if (ci.space.dim(ka + kb) > 0) {
          v.segment(rv, ci.space.dim(ka + kb)) =
              ci.multiply(ka, x.segment(ra, ci.space.dim(ka)), kb,
                          y.segment(rb, ci.space.dim(kb)));
        }
        ra += ci.space.dim(ka);
        rb += ci.space.dim(kb);
        rv += ci.space.dim(ka + kb);
      }
      return v;
    };
    for (const auto& [ka, basis_a] : kernel_bases) {
      for (const auto& [kb, basis_b] : kernel_bases) {
        const auto target_it = kernel_bases.find(ka + kb);
        for (Index i = 0; i < basis_a.cols(); ++i) {
          for (Index j = 0; j < basis_b.cols(); ++j) {
            const Vec v = ambient_mul(ka, basis_a.col(i), kb, basis_b.col(j));
            if (v.isZero()) continue;
            if (target_it == kernel_bases.end())
              throw std::logic_error("pullback: product leaves the algebra");
            alg->set_product(ka, i, kb, j,
                             solve_or_throw(target_it->second, Mat(v),
                                            "pullback product closure")
                                 .col(0));
          }
        }
      }
    }
  }

  out.algebra = alg;

  // embedding lifted to A ⊕ (⊕ carriers) coordinates, for family maps
  for (const auto& [k, basis] : kernel_bases) {
    Index carrier_total = a.space.dim(k);
    for (size_t i = 0; i < nc; ++i) {
      carrier_total += parts.tdts[i].carrier->space.dim(k);
    }
    Mat lifted = Mat::Zero(carrier_total, basis.cols());
    lifted.topRows(a.space.dim(k)) = basis.topRows(a.space.dim(k));
    Index src = a.space.dim(k), dst = a.space.dim(k);
    for (size_t i = 0; i < nc; ++i) {
      const Index ci = cotr_dim(i, k);
      const Index wi = parts.tdts[i].carrier->space.dim(k);
      if (ci > 0 && wi > 0) {
        lifted.middleRows(dst, wi) =
            out.factors[i].inclusion.map_at(k) * basis.middleRows(src, ci);
      }
      src += ci;
      dst += wi;
    }
    out.embedding[k] = std::move(lifted);
  }
  return out;
}

}  // namespace

PullbackCDGA pullback_cdga_multi(
    const std::vector<CDGAMorphism>& components, const Perversity& p,
    int tbound, bool with_products,
    const std::vector<CotruncationChoice>* choices) {
  const PullbackParts parts = make_parts(components, tbound, choices);
  return pullback_from_parts(components, p, parts, with_products);
}

PullbackCDGA pullback_cdga(const CDGAMorphism& f, const Perversity& p,
                           int tbound, bool with_products) {
  return pullback_cdga_multi({f}, p, tbound, with_products);
}

std::map<int, Index> pullback_cohomology_dims(
    const std::vector<CDGAMorphism>& components, const Perversity& p,
    int tbound, const std::vector<CotruncationChoice>* choices) {
  const PullbackParts parts = make_parts(components, tbound, choices);
  const std::shared_ptr<const FiniteCDGA> a = components[0].source;
  const size_t nc = components.size();

  std::vector<Cotruncation> factors;
  std::vector<std::map<int, Mat>> evals(nc);  // cotruncation^k -> B^k
  factors.reserve(nc);
  for (size_t i = 0; i < nc; ++i) {
    factors.push_back(unital_cotruncation(parts.tdts[i], p, parts.choices[i]));
    const FiniteCDGA& b = *components[i].target;
    for (const auto& [k, dim] : b.space.dims) {
      if (dim == 0) continue;
      Mat ev = parts.tdts[i].evaluation.map_at(k) *
               factors[i].inclusion.map_at(k);
      // the unit stratum at t^0 plus the t-positive strata always evaluate
      // onto the base, which is what makes J -> A ⊕ ⊕cotr -> ⊕B exact
      if (rank(ev) != dim)
        throw std::logic_error(
            "pullback dims: evaluation is not degreewise surjective");
      evals[i][k] = std::move(ev);
    }
  }

  const Cohomology ha = cohomology(*a);
  std::vector<Cohomology> hc, hb;
  hc.reserve(nc);
  hb.reserve(nc);
  for (size_t i = 0; i < nc; ++i) {
    hc.push_back(cohomology(*factors[i].algebra));
    hb.push_back(cohomology(*components[i].target));
  }

  std::set<int> degrees;
  for (const auto& [k, d] : a->space.dims) degrees.insert(k);
  for (size_t i = 0; i < nc; ++i) {
    for (const auto& [k, d] : components[i].target->space.dims)
      degrees.insert(k);
    for (const auto& [k, d] : factors[i].algebra->space.dims)
      degrees.insert(k);
  }

  // difference map H^k(A) ⊕ ⊕H^k(cotr_i) -> ⊕H^k(B_i), (x, w) -> f(x) - ev(w)
  std::map<int, Index> dom_dim, rng_dim, rk;
  for (int k : degrees) {
    Index rows = 0;
    for (size_t i = 0; i < nc; ++i) rows += hb[i].h.dim(k);
    Index cols = ha.h.dim(k);
    for (size_t i = 0; i < nc; ++i) cols += hc[i].h.dim(k);
    dom_dim[k] = cols;
    rng_dim[k] = rows;
    if (rows == 0 || cols == 0) {
      rk[k] = 0;
      continue;
    }
    Mat u = Mat::Zero(rows, cols);
    Index row0 = 0;
    for (size_t i = 0; i < nc; ++i) {
      const Index bi = hb[i].h.dim(k);
      if (bi == 0) continue;
      for (Index col = 0; col < ha.h.dim(k); ++col) {
        const Vec fx =
            components[i].map_at(k) * ha.representatives.at(k).col(col);
        u.block(row0, col, bi, 1) = hb[i].class_of(k, fx);
      }
      Index col0 = ha.h.dim(k);
      for (size_t m = 0; m < nc; ++m) {
        const Index cm = hc[m].h.dim(k);
        if (m == i) {
          for (Index col = 0; col < cm; ++col) {
            const Vec evw = evals[i].at(k) * hc[i].representatives.at(k).col(col);
            u.block(row0, col0 + col, bi, 1) = -hb[i].class_of(k, evw);
          }
        }
        col0 += cm;
      }
      row0 += bi;
    }
    rk[k] = rank(u);
  }

  // dim H^k(J) = dim ker(u_k) + dim coker(u_{k-1}) from the connecting
  // sequence of the short exact sequence of complexes
  std::map<int, Index> dims;
  auto get = [](const std::map<int, Index>& m, int k) {
    auto it = m.find(k);
    return it == m.end() ? Index{0} : it->second;
  };
  std::set<int> jdegrees = degrees;
  for (int k : degrees) jdegrees.insert(k + 1);
  for (int k : jdegrees) {
    const Index dim = (get(dom_dim, k) - get(rk, k)) +
                      (get(rng_dim, k - 1) - get(rk, k - 1));
    if (dim > 0) dims[k] = dim;
  }
  return dims;
}

CoperverseFamily coperverse_model(const std::vector<CDGAMorphism>& components,
                                  const PerversityPoset& ctx, int tbound,
                                  bool with_products) {
  const PullbackParts parts = make_parts(components, tbound, nullptr);
  CoperverseFamily fam;
  fam.ctx = ctx;
  std::map<Perversity, PullbackCDGA, PerversityLess> pullbacks;
  for (const Perversity& p : ctx.members()) {
    pullbacks.emplace(p,
                      pullback_from_parts(components, p, parts, with_products));
    fam.algebras[p] = pullbacks.at(p).algebra;
  }
  const auto members = ctx.members();
  for (const Perversity& p : members) {
    for (const Perversity& q : members) {
      if (!ctx.leq(p, q)) continue;
      const PullbackCDGA& jp = pullbacks.at(p);
      const PullbackCDGA& jq = pullbacks.at(q);
      CDGAMorphism phi;
      phi.source = jp.algebra;
      phi.target = jq.algebra;
      for (const auto& [k, basis] : jp.embedding) {
        auto it = jq.embedding.find(k);
        const Mat target = it == jq.embedding.end()
                               ? Mat(Mat::Zero(basis.rows(), 0))
                               : it->second;
        phi.maps[k] = solve_or_throw(
            target, basis, "cotruncation inclusion fails between perversities");
      }
      fam.poset_maps[{p, q}] = std::move(phi);
    }
  }
  return fam;
}

}  // namespace ispace
