// The perversity-filtered weight spectral sequence of a resolution datum.
//
// For each perversity p the first page is a three-column complex of rows
// s = 0..2n built from H*(D) tensored with truncated polynomial forms Q[t]
// and Q[t]dt (powers up to the bound T) together with a fiber product I^s_k
// of j^s : H^s(X~) -> H^s(D) against evaluation at t = 1,
//
//   (-1,s)  H^{s-2}(D) (x) t-powers  [and the coimage choice at s = p+1]
//    (0,s)  I^s_k  (+)  H^{s-2}(D) (x) dt-powers
//    (1,s)  H^s(D) (x) dt-powers.
//
// Rows with s > p+1 keep all t-powers, rows with s <= p+1 only positive
// ones (k is the lowest power admitted in the fiber product: 0 above the
// cut, 1 below).  The second page is computed two independent ways -- by
// taking cohomology of the built first page, and in closed form from the
// ranks of gamma, j and gamma restricted to the coimage choice -- and the
// two must agree; that agreement is a checked theorem, not an assumption.
//
// Degree k of the intersection-space cohomology HI_p^k is the sum of the
// second-page cells with r+s = k, each summand carrying weight s.  The cell
// (1,0) = coker j^0 counts the loops a one-point cone construction would
// create; the construction modelled here cones each singular point
// separately, so that cell is excluded from HI and reported separately.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ispace/resolution.hpp"

namespace ispace {

// One bigraded cell of a first page: a based vector space with one label per
// basis vector naming its stratum (graph / t-power / kernel combination /
// coimage / dt).
struct PageCell {
  Index dim = 0;
  std::vector<std::string> labels;
};

struct Page {
  Perversity p = Perversity::finite(0);
  int tbound = 2;
  int n = 0;  // complex dimension; rows run over s = 0..2n
  CoimChoice coim;
  std::map<std::pair<int, int>, PageCell> cells;  // (r,s), zero cells omitted
  std::map<int, Mat> d_minus1;  // per s: cell(-1,s) -> cell(0,s)
  std::map<int, Mat> d_zero;    // per s: cell(0,s) -> cell(1,s)
  // Explicit cell bases in ambient coordinates, for membership checks and
  // page comparison maps (t-power-major layout):
  //   column -1: H^{s-2}(D) x {t^0..t^T}
  //   column  0: H^s(X~) ++ H^s(D) x {t^0..t^T} ++ H^{s-2}(D) x {t^0..t^{T-1}} dt
  //   column  1: H^s(D) x {t^0..t^{T-1}} dt with the identity basis (not stored)
  std::map<int, Mat> basis_minus1;
  std::map<int, Mat> basis_zero;

  Index dim(int r, int s) const;
  Mat d_minus1_at(int s) const;  // zero-filled to cell dimensions
  Mat d_zero_at(int s) const;
};

// Builds the first page.  The coimage choice defaults to the deterministic
// one; a provided choice must be valid for (d, p).  Throws for tbound < 1.
Page build_EI1(const ResolutionDatum& d, const Perversity& p, int tbound,
               const std::optional<CoimChoice>& coim = std::nullopt);

struct EI2Result {
  Perversity p = Perversity::finite(0);
  std::map<std::pair<int, int>, Index> dims;  // (r,s), zero cells omitted
  std::map<std::pair<int, int>, std::string> components;  // summand names
  Index dim(int r, int s) const;
};

// Second page as the cohomology of a built first page.  Throws
// std::logic_error if the page differentials do not compose to zero.
EI2Result compute_EI2_direct(const Page& page);

// Second page in closed form, with no t-variable involved:
//   s > p+1:      ker gamma^s | coker gamma^s            | 0
//   s == p+1:     0           | coker gamma^s|coim       | 0
//   1 <= s < p+1: 0           | ker j^s                  | coker j^s
//   s == 0:       0           | H^0(X~)                  | coker j^0 (loops)
// (for infinite p every row s >= 1 is of the third kind).
EI2Result compute_EI2_closed(const ResolutionDatum& d, const Perversity& p,
                             const std::optional<CoimChoice>& coim =
                                 std::nullopt);

struct WeightReport {
  Perversity p = Perversity::finite(0);
  std::map<int, std::map<int, Index>> weights;  // degree -> weight -> dim
  std::map<int, Index> hi;  // degree -> total dim, all degrees 0..2n listed
  Index loop_count = 0;     // dim of the excluded (1,0) cell

  Index dim(int k) const;
};

// Sums second-page cells with r+s = k into HI^k with weight s per summand,
// excluding the loop cell (1,0).
WeightReport assemble_HI(const EI2Result& e2, int n);

// Cocycles modulo boundaries of one page cell, with explicit representative
// cocycles: the concrete second-page cell, in cell coordinates.
struct CellClasses {
  Subspace boundaries{0, Mat::Zero(0, 0)};
  Subspace reps{0, Mat::Zero(0, 0)};
  Mat zb;  // [boundaries | reps], a basis of the cocycles

  Index h_dim() const { return reps.dim(); }

  // Coordinates of the class of cocycle v in the representative basis;
  // throws when v is not a cocycle.
  Vec class_of(const Vec& v) const;
  Mat classes_of(const Mat& vs) const;  // column by column
};

CellClasses cell_classes_of(const Page& page, int r, int s);

// Comparison map between the pages of two perversities with leq(from, to):
// the identity on t-power strata, the inclusion of the smaller fiber product
// and of the coimage into the full t-power block where the rows differ.
struct PageMorphism {
  Perversity from = Perversity::finite(0);
  Perversity to = Perversity::finite(0);
  std::map<std::pair<int, int>, Mat> cell_maps;    // first-page level
  std::map<std::pair<int, int>, Mat> induced_e2;   // second-page level
};

// Throws std::invalid_argument when the pages have different bounds or
// incompatible cells, and std::logic_error if the computed maps fail to
// commute with the differentials.
PageMorphism page_poset_map(const Page& from, const Page& to);

// Whether the second page is unchanged when the t-power bound grows by one.
bool ei2_stable(const ResolutionDatum& d, const Perversity& p, int tbound,
                const std::optional<CoimChoice>& coim = std::nullopt);

}  // namespace ispace
