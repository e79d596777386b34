// Finite-dimensional commutative differential graded algebras over Q with
// explicit bases: validation, cohomology, morphisms, quasi-isomorphism
// testing, and perversity-indexed families with extended products.
//
// Products are stored sparsely: only basis pairs with a nonzero product
// appear, keyed by (deg_a, deg_b, i, j) so a whole degree block can be
// scanned in order.  Bilinear evaluation then costs O(stored entries of the
// block), which keeps the large carriers built elsewhere in this library
// affordable.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ispace/exactla.hpp"
#include "ispace/perversity.hpp"

namespace ispace {

// Dimensions (and optional basis labels) per cohomological degree.
struct GradedSpace {
  std::map<int, Index> dims;                           // degree -> dimension
  std::map<int, std::vector<std::string>> labels;      // optional, per degree

  Index dim(int k) const {
    auto it = dims.find(k);
    return it == dims.end() ? 0 : it->second;
  }
  Index total_dim() const;
  int min_degree() const;  // 0 when empty
  int max_degree() const;
  std::string label(int k, Index i) const;  // falls back to "e<k>_<i>"
  void set_dim(int k, Index d);

  friend bool operator==(const GradedSpace& a, const GradedSpace& b) {
    return a.dims == b.dims;  // labels are cosmetic
  }
};

// One axiom violation, phrased with basis labels so reports read on their own.
struct Violation {
  std::string axiom;  // "shape", "d_squared", "graded_commutativity", ...
  std::string where;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const;
};

// (deg_a, deg_b, index_a, index_b); ordered so one degree block is contiguous.
using ProductKey = std::tuple<int, int, Index, Index>;

struct FiniteCDGA {
  GradedSpace space;
  std::map<int, Mat> diff;             // d^k : degree k -> k+1
  std::map<ProductKey, Vec> product;   // basis products, zero entries omitted
  Index unit = 0;                      // basis index in degree 0

  Mat d_at(int k) const;               // correctly shaped zero when absent

  // Product of basis vectors; zero vector when no entry is stored.
  Vec mu_basis(int deg_a, Index i, int deg_b, Index j) const;
  // Bilinear extension to arbitrary vectors of fixed degree.
  Vec multiply(int deg_a, const Vec& a, int deg_b, const Vec& b) const;

  // Stores one structure constant (dropping explicit zeros).
  void set_product(int deg_a, Index i, int deg_b, Index j, const Vec& value);
  // Stores the pair related by graded commutativity in one call.
  void set_product_pair(int deg_a, Index i, int deg_b, Index j, const Vec& value);

  Vec unit_vector() const;
};

// Exhaustive axiom check: shapes, d^2 = 0, graded commutativity, Leibniz,
// associativity, unitality.  Violations are data, not exceptions.
ValidationReport validate(const FiniteCDGA& a);

// Cohomology with explicit representing cocycles per degree.
struct Cohomology {
  GradedSpace h;
  std::map<int, Mat> representatives;  // cocycle columns spanning H^k
  std::map<int, Mat> boundaries;       // basis of im d^{k-1}

  // Coordinates of a cocycle's class in the representative basis.
  Vec class_of(int k, const Vec& cocycle) const;
};

Cohomology cohomology(const FiniteCDGA& a);

struct CDGAMorphism {
  std::shared_ptr<const FiniteCDGA> source, target;
  std::map<int, Mat> maps;  // f^k : source degree k -> target degree k

  Mat map_at(int k) const;
  Vec apply(int k, const Vec& v) const;
};

CDGAMorphism identity_morphism(std::shared_ptr<const FiniteCDGA> a);
// g after f; requires matching middle algebra.
CDGAMorphism compose(const CDGAMorphism& g, const CDGAMorphism& f);

// Chain-map, multiplicativity and unit checks.
ValidationReport validate_morphism(const CDGAMorphism& f);

// Matrices of H(f) in the representative bases, one per degree.
std::map<int, Mat> induced_on_cohomology(const CDGAMorphism& f,
                                         const Cohomology& source_h,
                                         const Cohomology& target_h);

bool is_quasi_iso(const CDGAMorphism& f);

// Stable ordering for keying containers by perversity.
struct PerversityLess {
  bool operator()(const Perversity& a, const Perversity& b) const {
    const int ea = a.is_finite() ? a.value() : -1;
    const int eb = b.is_finite() ? b.value() : -1;
    return ea < eb;
  }
};

template <typename Less>
struct PairLessFrom {
  Less less;
  template <typename P>
  bool operator()(const std::pair<P, P>& a, const std::pair<P, P>& b) const {
    if (less(a.first, b.first)) return true;
    if (less(b.first, a.first)) return false;
    return less(a.second, b.second);
  }
};

// A functor from the perversity chain to cdga's: one algebra per perversity
// and a structure map for every related pair.
struct CoperverseFamily {
  PerversityPoset ctx = PerversityPoset::with_top(0);
  std::map<Perversity, std::shared_ptr<const FiniteCDGA>, PerversityLess> algebras;
  std::map<std::pair<Perversity, Perversity>, CDGAMorphism,
           PairLessFrom<PerversityLess>> poset_maps;

  const FiniteCDGA& at(const Perversity& p) const;
  std::shared_ptr<const FiniteCDGA> at_ptr(const Perversity& p) const;
  // The structure map for p <= q in the reversed order.
  const CDGAMorphism& map_between(const Perversity& p, const Perversity& q) const;
};

// Identity maps, functoriality over all chains, and per-map morphism axioms.
ValidationReport validate_family(const CoperverseFamily& fam);

// The product A_p x A_q -> A_q obtained by pushing the first factor along
// the structure map; equals the internal product when p == q.
struct ExtendedProduct {
  const CoperverseFamily* family = nullptr;
  Perversity p = Perversity::finite(0);
  Perversity q = Perversity::finite(0);

  Vec multiply(int deg_a, const Vec& a, int deg_b, const Vec& b) const;
  Vec mu_basis(int deg_a, Index i, int deg_b, Index j) const;
};

ExtendedProduct extended_product(const CoperverseFamily& fam,
                                 const Perversity& p, const Perversity& q);

}  // namespace ispace
