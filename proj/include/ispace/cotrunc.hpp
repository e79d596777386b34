// The t-augmented algebra A(t,dt) realized at a finite t-degree bound,
// unital cotruncation in a perversity, and the fiber-product algebra J_p(f)
// modelling intersection spaces.
//
// A(t,dt) = A ⊗ Q[t,dt] is infinite-dimensional; two finite realizations
// are provided, both with H(carrier) = H(A):
//
//   * build_tdt: the quotient by the differential ideal (t^{T+1}, t^T dt).
//     Every degree keeps t-powers 0..T.  Evaluation at t = 1 is a chain-map
//     quasi-isomorphism but loses multiplicativity exactly on products whose
//     t-powers overflow the cut.
//   * build_staircase: the sub-cdga keeping t-powers 0..T·k in degree k.
//     The widths add under multiplication, so products never overflow and
//     evaluation at t = 1 is a genuine cdga morphism.  No finite realization
//     with degree-0 padding can achieve this (a degree-0 element w with
//     ev(w^n) = 1 for all n is never nilpotent), which is why the widths
//     must start at zero in degree 0.
//
// The fiber product J_p(f) needs evaluation to be an algebra map — otherwise
// it is not closed under the product — so the pullback operations use the
// staircase realization internally.
//
// Carrier layout, fixed throughout: degree k splits into a t-stratum
// (A^k ⊗ t^0..t^{w(k)}, t-power major) followed by a dt-stratum
// (A^{k-1} ⊗ t^0 dt..t^{w(k-1)-1} dt, t-power major), where w is the
// per-degree width (uniformly T for build_tdt, T·k for build_staircase).
//
// Cotruncation in perversity p keeps, per degree r:
//   r < p   : the t-positive part  A^r⊗tQ[t] ⊕ A^{r-1}⊗Q[t]dt
//   r == p  : the same plus a chosen section Coim^p of the base
//             differential, embedded at t^0
//   r > p   : the whole carrier degree
// plus the unit 1⊗t^0; p = infinity keeps the t-positive part everywhere
// (the resulting algebra is the cone model: a unit plus an acyclic part).
// The section lives in the base algebra: base-level sections all produce the
// same cohomology, whereas an arbitrary complement of ker d chosen inside
// the carrier could smuggle t^0-cocycles into the degree-p stratum and
// change H^p.
#pragma once

#include <memory>
#include <vector>

#include "ispace/cdga.hpp"

namespace ispace {

struct TdtAlgebra {
  std::shared_ptr<const FiniteCDGA> base;
  int tbound = 1;
  std::map<int, int> twidth;  // highest kept t-power per base degree
  std::shared_ptr<const FiniteCDGA> carrier;
  CDGAMorphism evaluation;  // evaluation at t = 1: carrier -> base, dt -> 0

  // Highest t-power kept on base degree deg (0 if the degree is absent).
  int t_width(int deg) const;
  // Basis position of e ⊗ t^i inside carrier degree deg (|e| = deg).
  Index t_index(int deg, int i, Index e) const;
  // Basis position of e ⊗ t^i dt inside carrier degree deg+1 (|e| = deg);
  // dt powers run 0..t_width(deg)-1.
  Index dt_index(int deg, int i, Index e) const;
};

// A ⊗ Q[t,dt] cut by the differential ideal (t^{T+1}, t^T dt).
TdtAlgebra build_tdt(std::shared_ptr<const FiniteCDGA> base, int tbound);

// The width-graded sub-cdga of A ⊗ Q[t,dt] with t-powers up to T·k in
// degree k; evaluation at t = 1 is a full cdga morphism on this model.
TdtAlgebra build_staircase(std::shared_ptr<const FiniteCDGA> base, int tbound);

// A chosen complement of ker d per base degree (a section of the base
// differential onto its image).  Everything downstream is tested to be
// independent of this choice.
struct CotruncationChoice {
  std::map<int, Subspace> coim;  // base coordinates per degree
};

CotruncationChoice default_cotruncation_choice(const TdtAlgebra& a);
ValidationReport validate_choice(const TdtAlgebra& a,
                                 const CotruncationChoice& choice);

struct Cotruncation {
  std::shared_ptr<const FiniteCDGA> algebra;  // the sub-cdga on its own basis
  std::map<int, Subspace> strata;             // carrier coordinates per degree
  CDGAMorphism inclusion;                     // algebra -> carrier
};

// The unital p-cotruncation of A(t,dt); requires a connected base
// (A^0 = Q·1).  Throws if the selected strata fail to close under d or the
// product, which signals an invalid Coim choice.
Cotruncation unital_cotruncation(const TdtAlgebra& a, const Perversity& p,
                                 const CotruncationChoice& choice);

// The fiber product J_p(f) = { (x, w) : f(x) = evaluation(w) } of
// A --f--> B <--eval-- cotruncation_p(B(t,dt)), with componentwise
// differential and product.  For a link with several components pass one
// morphism A -> B_i per component; the cotruncation factor is the direct
// sum of the per-component cotruncations.
struct PullbackCDGA {
  std::shared_ptr<const FiniteCDGA> algebra;
  std::shared_ptr<const FiniteCDGA> source;  // the A factor
  std::vector<Cotruncation> factors;         // per link component
  // columns: basis of J in A ⊕ (⊕ carriers) coordinates, per degree
  std::map<int, Mat> embedding;
};

PullbackCDGA pullback_cdga(const CDGAMorphism& f, const Perversity& p,
                           int tbound, bool with_products = true);

PullbackCDGA pullback_cdga_multi(
    const std::vector<CDGAMorphism>& components, const Perversity& p,
    int tbound, bool with_products = true,
    const std::vector<CotruncationChoice>* choices = nullptr);

// Graded dimensions of H(J_p(f)) without materializing J.  Evaluation is
// degreewise surjective onto each B_i (checked; throws std::logic_error
// otherwise), so J sits in a short exact sequence of complexes
//   0 -> J -> A ⊕ (⊕ cotruncations) -> ⊕ B_i -> 0
// whose connecting sequence gives dim H^k(J) as ker/coker dimensions of the
// induced map on cohomology.  Matches the dimensions of
// pullback_cdga_multi(...).algebra's cohomology while only ever reducing
// cohomology-sized matrices, so it stays cheap when the link has many
// components.
std::map<int, Index> pullback_cohomology_dims(
    const std::vector<CDGAMorphism>& components, const Perversity& p,
    int tbound, const std::vector<CotruncationChoice>* choices = nullptr);

// The whole family J over [infinity,] top, ..., 0 with inclusion-induced
// structure maps (one shared carrier and Coim choice per link component, so
// the maps are literal inclusions and functoriality holds on the nose).
CoperverseFamily coperverse_model(const std::vector<CDGAMorphism>& components,
                                  const PerversityPoset& ctx, int tbound,
                                  bool with_products = true);

}  // namespace ispace
