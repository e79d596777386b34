// Linear-algebra model of a resolved projective variety with isolated
// singularities: the rational cohomology of the resolution X~ and of its
// smooth exceptional divisor D, connected by the restriction maps
// j^s : H^s(X~) -> H^s(D) and the Gysin maps gamma^s : H^{s-2}(D) -> H^s(X~).
//
// The composite jsharp^s = j^s . gamma^s drives a two-column spectral
// sequence computing the cohomology of the link of the singular points, and
// the rank identities checked by `validate` are the consistency conditions a
// geometric datum inherits: Poincare duality of dimensions, semipurity of the
// link (jsharp^s injective below the middle degree, surjective above), and
// the duality pairing kernels of j against cokernels of gamma.
//
// Cup products are optional.  When present they are stored as structure
// constants on H*(X~) and H*(D); the module action of H*(X~) on H*(D) is
// x . a := j(x) a and is therefore not stored separately.  Every
// dimension-level computation works without products; product-level
// certificates simply degrade to linear-level ones when they are absent.
#pragma once

#include <map>
#include <optional>
#include <string>

#include "ispace/cdga.hpp"
#include "ispace/exactla.hpp"
#include "ispace/perversity.hpp"

namespace ispace {

// Graded-commutative structure constants over a graded space; absent entries
// are zero.  Unlike FiniteCDGA this carries no differential and no unit
// index, so it can hold the cohomology ring of a disconnected space (where
// the ring unit is a sum of several degree-0 basis vectors).
struct ProductTable {
  GradedSpace space;
  std::map<ProductKey, Vec> entries;

  // Stores e_i * e_j = value (ambient coordinates of degree ka+kb); zero
  // values are dropped so the table stays sparse.
  void set(int deg_a, Index i, int deg_b, Index j, Vec value);
  // set() plus the graded-commutativity partner e_j * e_i.
  void set_pair(int deg_a, Index i, int deg_b, Index j, const Vec& value);

  Vec at(int deg_a, Index i, int deg_b, Index j) const;
  Vec multiply(int deg_a, const Vec& a, int deg_b, const Vec& b) const;
};

struct ResolutionProducts {
  ProductTable hx;  // cup product of H*(X~)
  ProductTable hd;  // cup product of H*(D)
};

struct ResolutionDatum {
  int n = 0;        // complex dimension of the variety
  int nu = 0;       // number of isolated singular points
  GradedSpace hx;   // H*(X~), degrees 0..2n
  GradedSpace hd;   // H*(D),  degrees 0..2n-2
  // gamma[s] : H^{s-2}(D) -> H^s(X~) and j[s] : H^s(X~) -> H^s(D);
  // omitted degrees are zero maps.
  std::map<int, Mat> gamma;
  std::map<int, Mat> j;
  std::optional<ResolutionProducts> products;

  // Zero-filled to the correct shape when the degree is omitted; throws
  // std::invalid_argument when a stored matrix has the wrong shape (validate
  // reports shape problems without throwing because it checks them first).
  Mat gamma_at(int s) const;
  Mat j_at(int s) const;
  // Always recomputed as j^s . gamma^s : H^{s-2}(D) -> H^s(D), never stored.
  Mat j_sharp(int s) const;
};

// Checks the rank identities a geometrically consistent datum satisfies:
// connectivity (dim H^0(X~) == 1, dim H^0(D) == nu), degree ranges, matrix
// shapes, Poincare duality of dimensions, semipurity (jsharp^s injective for
// s <= n, surjective for s >= n), gamma^s injective for s <= n and gamma^{2n}
// surjective, j^s surjective for s >= n, and the duality ranks
//   dim coker gamma^{n+s} == dim ker j^{n-s},
//   dim ker  gamma^{n+s} == dim coker j^{n-s}   for 0 <= s <= n.
// When products are present it also checks unitality, graded commutativity,
// associativity, multiplicativity of j, and the projection formula
// gamma(j(x) a) == x gamma(a).  Violations are reported, never thrown.
ValidationReport validate(const ResolutionDatum& d);

// Extra identities available for threefolds (n == 3) whose links are simply
// connected: jsharp^k an isomorphism for k in {1,3,5}, jsharp^2 injective,
// jsharp^4 surjective, gamma^k injective for k not in {4,6}, j^k surjective
// for k not in {0,2}, the splittings H^k(X~) == ker j^k + im gamma^k for odd
// k, ker j^2 meeting im gamma^2 in zero, and
// H^4(X~) == ker j^4 + im(gamma^4 restricted to the degree-3 coimage choice).
// Throws std::invalid_argument unless n == 3.
ValidationReport validate_threefold(const ResolutionDatum& d);

// Cohomology of the link of the singular set, via the two-column spectral
// sequence of jsharp: degree k receives coker jsharp^k and ker jsharp^{k+1}.
GradedSpace link_cohomology(const ResolutionDatum& d);

// A choice of complement of ker jsharp^{p+1} inside H^{p-1}(D); the weight
// spectral sequence needs one per finite perversity, and its second page is
// independent of which complement is chosen.
struct CoimChoice {
  Perversity p = Perversity::finite(0);
  Subspace subspace;  // inside H^{p-1}(D)
};

// Deterministic complement (standard basis vectors in pivot order).  Degrees
// where jsharp^{p+1} has full kernel -- in particular every degree out of
// range -- get the zero subspace.  Throws for infinite p.
CoimChoice choose_coim(const ResolutionDatum& d, const Perversity& p);

ValidationReport validate_coim(const ResolutionDatum& d, const CoimChoice& c);

// JSON serialization.  Format:
//   { "n": int, "nu": int,
//     "hx": [dim of H^0, H^1, ...], "hd": [...],
//     "hx_labels": { "<degree>": ["name", ...], ... },          optional
//     "hd_labels": { ... },                                     optional
//     "gamma": { "<s>": [[row], ...], ... },                    omitted = 0
//     "j":     { "<s>": [[row], ...], ... },
//     "products": { "hx": [ { "da": k, "i": i, "db": l, "j": j,
//                             "value": ["c0", ...] }, ... ],
//                   "hd": [ ... ] } }                           optional
// with rationals as "num/den" or "num" strings.  Matrices may be given
// either as arrays of rows or as flat row-major arrays.
std::string resolution_to_json(const ResolutionDatum& d);
ResolutionDatum resolution_from_json(const std::string& text);
ResolutionDatum resolution_from_stream(std::istream& in);
ResolutionDatum resolution_from_file(const std::string& path);

}  // namespace ispace
