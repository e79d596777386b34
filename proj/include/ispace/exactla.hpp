// Exact linear algebra over the rationals.
//
// Everything here is deterministic: elimination always pivots on the first
// nonzero entry found by scanning rows top to bottom within each column,
// columns left to right.  Bases produced from equal inputs are identical,
// which the rest of the library relies on for reproducible output.
//
// Row updates iterate only over the nonzero columns of the pivot row; the
// matrices this library produces are block sparse and stay sparse during
// elimination, which keeps large pages (thousands of columns) fast.
//
// Conventions:
//   * A Subspace of Q^n is an n x k matrix of independent basis columns.
//   * A QuotientSpace Q^n / U stores a projection (q x n) and a section
//     `representatives` (n x q) with projection * representatives == id and
//     projection * U == 0.
//   * Zero-sized matrices (0 x k, k x 0) are legal and mean zero maps.
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "ispace/rational.hpp"

namespace ispace {

// Result of row reduction: the reduced matrix together with pivot locations.
struct Echelon {
  Mat reduced;                     // reduced row echelon form
  std::vector<Index> pivot_cols;   // pivot column of row i, increasing
};

namespace detail {

// Subtract factor * source row from every listed target entry.  Touches only
// the columns where the source row is nonzero.
inline void eliminate_row(Mat& m, Index target, Index source,
                          const Rational& factor,
                          const std::vector<Index>& source_nonzeros) {
  for (Index c : source_nonzeros) m(target, c) -= factor * m(source, c);
}

inline std::vector<Index> nonzero_cols(const Mat& m, Index row, Index from) {
  std::vector<Index> nz;
  for (Index c = from; c < m.cols(); ++c) {
    if (!m(row, c).is_zero()) nz.push_back(c);
  }
  return nz;
}

}  // namespace detail

// Reduced row echelon form with the fixed deterministic pivot rule.
template <typename Derived>
Echelon echelon(const Eigen::MatrixBase<Derived>& m_in) {
  Mat m = m_in;
  Echelon out;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index piv = -1;
    for (Index r = row; r < m.rows(); ++r) {
      if (!m(r, col).is_zero()) { piv = r; break; }
    }
    if (piv < 0) continue;
    if (piv != row) m.row(row).swap(m.row(piv));
    const Rational inv_head = Rational(1) / m(row, col);
    if (inv_head != Rational(1)) {
      for (Index c = col; c < m.cols(); ++c) {
        if (!m(row, c).is_zero()) m(row, c) *= inv_head;
      }
    }
    const std::vector<Index> nz = detail::nonzero_cols(m, row, col);
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const Rational factor = m(r, col);
      detail::eliminate_row(m, r, row, factor, nz);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  return static_cast<Index>(echelon(m).pivot_cols.size());
}

// a * b with explicit zero skipping.  Eigen's product multiplies every entry
// pair; for the mostly-zero incidence matrices handled here, touching only
// the stored nonzeros is orders of magnitude cheaper.
inline Mat sparse_product(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("sparse_product: inner dimension mismatch");
  Mat out = Mat::Zero(a.rows(), b.cols());
  for (Index k = 0; k < a.cols(); ++k) {
    for (Index j = 0; j < b.cols(); ++j) {
      const Rational& bkj = b(k, j);
      if (bkj.is_zero()) continue;
      for (Index i = 0; i < a.rows(); ++i) {
        const Rational& aik = a(i, k);
        if (!aik.is_zero()) out(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

// Growable row-echelon model of a span; answers "does this vector enlarge
// the span" in O(current dim * nonzeros) without re-eliminating from scratch.
class IncrementalSpan {
 public:
  explicit IncrementalSpan(Index ambient) : ambient_(ambient) {}

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return static_cast<Index>(rows_.size()); }

  // Inserts the vector if independent of the current span; returns whether
  // the span grew.
  bool try_insert(Vec v) {
    reduce(v);
    Index head = -1;
    for (Index c = 0; c < ambient_; ++c) {
      if (!v(c).is_zero()) { head = c; break; }
    }
    if (head < 0) return false;
    const Rational inv = Rational(1) / v(head);
    if (inv != Rational(1)) {
      for (Index c = head; c < ambient_; ++c) {
        if (!v(c).is_zero()) v(c) *= inv;
      }
    }
    // keep rows ordered by pivot so reduction stays one pass
    size_t at = 0;
    while (at < rows_.size() && pivots_[at] < head) ++at;
    rows_.insert(rows_.begin() + static_cast<long>(at), std::move(v));
    pivots_.insert(pivots_.begin() + static_cast<long>(at), head);
    return true;
  }

  bool contains(Vec v) const {
    reduce(v);
    for (Index c = 0; c < ambient_; ++c) {
      if (!v(c).is_zero()) return false;
    }
    return true;
  }

 private:
  void reduce(Vec& v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
      const Rational& c = v(pivots_[r]);
      if (c.is_zero()) continue;
      const Rational factor = c;
      const Vec& row = rows_[r];
      for (Index j = pivots_[r]; j < ambient_; ++j) {
        if (!row(j).is_zero()) v(j) -= factor * row(j);
      }
    }
  }

  Index ambient_;
  std::vector<Vec> rows_;      // echelon rows, pivot entry 1
  std::vector<Index> pivots_;  // increasing
};

// Basis of ker(m) as columns, one per free column of the echelon form,
// listed in increasing free-column order.
template <typename Derived>
Mat kernel_basis(const Eigen::MatrixBase<Derived>& m) {
  const Echelon e = echelon(m);
  const Index n = m.cols();
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (Index c : e.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;
  const Index null_dim = n - static_cast<Index>(e.pivot_cols.size());
  Mat basis = Mat::Zero(n, null_dim);
  Index k = 0;
  for (Index free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[static_cast<size_t>(free_col)]) continue;
    basis(free_col, k) = 1;
    for (size_t r = 0; r < e.pivot_cols.size(); ++r) {
      basis(e.pivot_cols[r], k) = -e.reduced(static_cast<Index>(r), free_col);
    }
    ++k;
  }
  return basis;
}

// Basis of the column span: the original columns sitting at pivot positions.
template <typename Derived>
Mat image_basis(const Eigen::MatrixBase<Derived>& m) {
  IncrementalSpan span(m.rows());
  std::vector<Index> keep;
  for (Index c = 0; c < m.cols(); ++c) {
    if (span.try_insert(m.col(c))) keep.push_back(c);
  }
  Mat basis(m.rows(), static_cast<Index>(keep.size()));
  for (size_t i = 0; i < keep.size(); ++i) {
    basis.col(static_cast<Index>(i)) = m.col(keep[i]);
  }
  return basis;
}

// Solve a * x = b for every column of b.  Returns std::nullopt if any
// column is outside the span of a.  With consistent input the solution
// returned is the one whose free coordinates are zero.
template <typename DA, typename DB>
std::optional<Mat> solve(const Eigen::MatrixBase<DA>& a,
                         const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  Mat aug(a.rows(), a.cols() + b.cols());
  if (a.cols() > 0) aug.leftCols(a.cols()) = a;
  if (b.cols() > 0) aug.rightCols(b.cols()) = b;
  const Echelon e = echelon(aug);
  for (Index c : e.pivot_cols) {
    if (c >= a.cols()) return std::nullopt;  // pivot in the rhs block
  }
  Mat x = Mat::Zero(a.cols(), b.cols());
  for (size_t r = 0; r < e.pivot_cols.size(); ++r) {
    x.row(e.pivot_cols[r]) =
        e.reduced.block(static_cast<Index>(r), a.cols(), 1, b.cols());
  }
  return x;
}

template <typename DA, typename DB>
Mat solve_or_throw(const Eigen::MatrixBase<DA>& a,
                   const Eigen::MatrixBase<DB>& b, const char* what) {
  auto x = solve(a, b);
  if (!x) throw std::runtime_error(std::string("unsolvable system: ") + what);
  return *x;
}

template <typename DA, typename DB>
bool spans_contain(const Eigen::MatrixBase<DA>& span,
                   const Eigen::MatrixBase<DB>& vectors) {
  return solve(span, vectors).has_value();
}

// A linear subspace of Q^n given by independent basis columns.
struct Subspace {
  Index ambient_dim = 0;
  Mat basis;  // ambient_dim x dim, independent columns

  Index dim() const { return basis.cols(); }

  static Subspace zero(Index ambient) {
    return Subspace{ambient, Mat::Zero(ambient, 0)};
  }
  static Subspace full(Index ambient) {
    return Subspace{ambient, Mat::Identity(ambient, ambient)};
  }
  // Deduplicates dependent columns; keeps the deterministic pivot choice.
  static Subspace span_of(const Mat& vectors) {
    return Subspace{vectors.rows(), image_basis(vectors)};
  }

  bool contains(const Mat& vectors) const {
    return spans_contain(basis, vectors);
  }
  // Coordinates of `vectors` in this basis; throws when not contained.
  Mat coords(const Mat& vectors) const {
    return solve_or_throw(basis, vectors, "not in subspace");
  }
  bool same_space_as(const Subspace& other) const {
    return ambient_dim == other.ambient_dim && contains(other.basis) &&
           other.contains(basis);
  }
};

inline Subspace kernel(const Mat& m) { return Subspace{m.cols(), kernel_basis(m)}; }
inline Subspace image(const Mat& m) { return Subspace{m.rows(), image_basis(m)}; }

// Extends `inside` (defaulting to nothing) to a complement of sub by standard
// basis vectors taken in index order.  Deterministic.
inline Subspace choose_complement(const Subspace& sub) {
  const Index n = sub.ambient_dim;
  IncrementalSpan span(n);
  for (Index c = 0; c < sub.dim(); ++c) {
    if (!span.try_insert(sub.basis.col(c)))
      throw std::invalid_argument("choose_complement: dependent basis");
  }
  std::vector<Index> chosen;
  for (Index i = 0; i < n && span.dim() < n; ++i) {
    Vec e = Vec::Zero(n);
    e(i) = 1;
    if (span.try_insert(e)) chosen.push_back(i);
  }
  Mat comp = Mat::Zero(n, static_cast<Index>(chosen.size()));
  for (size_t k = 0; k < chosen.size(); ++k) {
    comp(chosen[k], static_cast<Index>(k)) = 1;
  }
  return Subspace{n, comp};
}

// Complement of `sub` inside `within` (sub must lie inside `within`):
// extends sub's basis by columns of `within` in order.
inline Subspace complement_within(const Subspace& sub, const Subspace& within) {
  IncrementalSpan span(sub.ambient_dim);
  for (Index c = 0; c < sub.dim(); ++c) span.try_insert(sub.basis.col(c));
  std::vector<Index> chosen;
  for (Index c = 0; c < within.dim(); ++c) {
    if (span.try_insert(within.basis.col(c))) chosen.push_back(c);
  }
  Mat comp(sub.ambient_dim, static_cast<Index>(chosen.size()));
  for (size_t k = 0; k < chosen.size(); ++k) {
    comp.col(static_cast<Index>(k)) = within.basis.col(chosen[k]);
  }
  return Subspace{sub.ambient_dim, comp};
}

// Intersection U ∩ V via the kernel of [U | -V].
inline Subspace intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim != v.ambient_dim)
    throw std::invalid_argument("intersect: ambient mismatch");
  Mat stacked(u.ambient_dim, u.dim() + v.dim());
  if (u.dim() > 0) stacked.leftCols(u.dim()) = u.basis;
  if (v.dim() > 0) stacked.rightCols(v.dim()) = -v.basis;
  const Mat k = kernel_basis(stacked);
  const Mat vectors = u.basis * k.topRows(u.dim());
  return Subspace::span_of(vectors);
}

// The quotient Q^n / relations with an explicit projection and section.
struct QuotientSpace {
  Index ambient_dim = 0;
  Subspace relations;    // the subspace being collapsed
  Mat projection;        // q x n, kills relations
  Mat representatives;   // n x q, projection * representatives == id

  Index dim() const { return projection.rows(); }
};

// Quotient by the column span of m (cokernel when m is a linear map into Q^n).
inline QuotientSpace cokernel(const Mat& m) {
  const Subspace rel = image(m);
  const Index n = rel.ambient_dim;
  const Subspace comp = choose_complement(rel);
  // [rel | comp] is a basis of Q^n; quotient coordinates are the comp block
  // of the inverse change of basis.
  Mat full(n, n);
  if (rel.dim() > 0) full.leftCols(rel.dim()) = rel.basis;
  if (comp.dim() > 0) full.rightCols(comp.dim()) = comp.basis;
  const Mat inv_rows =
      solve_or_throw(full, Mat(Mat::Identity(n, n)), "cokernel basis");
  QuotientSpace q;
  q.ambient_dim = n;
  q.relations = rel;
  q.projection = inv_rows.bottomRows(comp.dim());
  q.representatives = comp.basis;
  return q;
}

inline QuotientSpace quotient_by(const Subspace& rel) { return cokernel(rel.basis); }

// Restriction of m to a subspace of its domain: columns = images of the
// subspace basis, expressed in ambient codomain coordinates.
inline Mat restrict(const Mat& m, const Subspace& sub) {
  if (m.cols() != sub.ambient_dim)
    throw std::invalid_argument("restrict: domain mismatch");
  return m * sub.basis;
}

// Matrix of m : U -> V in the given bases; throws if m(U) is not inside V.
inline Mat matrix_in_bases(const Mat& m, const Subspace& domain,
                           const Subspace& codomain) {
  return solve_or_throw(codomain.basis, Mat(m * domain.basis),
                        "image leaves codomain");
}

inline bool is_direct_sum(const std::vector<Subspace>& parts) {
  if (parts.empty()) return true;
  IncrementalSpan span(parts.front().ambient_dim);
  for (const auto& p : parts) {
    for (Index c = 0; c < p.dim(); ++c) {
      if (!span.try_insert(p.basis.col(c))) return false;
    }
  }
  return true;
}

}  // namespace ispace
