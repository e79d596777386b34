// Built-in example resolutions with golden expected outcomes.
//
// Four classical projective varieties with isolated singularities:
//
//   * k3cone          — the projective cone over a quartic K3 surface in P4:
//                       one singular point, exceptional divisor the K3 itself.
//                       Ships with full cup-product tables.
//   * kummer          — a Kummer quartic surface (T^4 modulo the involution):
//                       16 ordinary double points, links rational 3-spheres.
//   * generic-quintic — a Calabi-Yau generic quintic threefold containing a
//                       plane: 16 ordinary double points, links S2 x S3.
//   * quintic         — the psi = 1 degeneration of the Fermat-type quintic
//                       pencil: 125 ordinary double points, links S2 x S3.
//
// The matrices are constructed from block identities, all-ones blocks and
// pivot sections; their only contract is to realize the documented ranks of
// the geometric restriction and Gysin maps and to pass validate().  Expected
// tables (EI2 grids, cohomology dims, weight splittings, loop counts) are
// frozen here as golden data; the pipeline must reproduce them exactly.
//
// The two quintic entries carry linear data only, so their formality
// verdicts downstream are "linear-level witness"; k3cone products are small
// enough to specify fully.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ispace/cdga.hpp"
#include "ispace/resolution.hpp"

namespace ispace {

// Golden values for one perversity of one example.  hi lists every degree
// 0..2n (zeros included); ei2 and weights list nonzero entries only.
struct ExpectedPage {
  std::map<std::pair<int, int>, Index> ei2;      // (r, s) -> dim
  std::map<int, Index> hi;                       // degree -> dim
  std::map<int, std::map<int, Index>> weights;   // degree -> weight -> dim
  Index loop_count = 0;
  std::vector<std::pair<int, int>> purity_failures;  // (degree, weight)
};

// Assignment of the divisor cohomology basis to link components:
// component_of[s][i] is the component of basis vector i of H^s(D).
// Degrees absent from the map have no basis vectors.
struct ComponentPartition {
  std::map<int, std::vector<int>> component_of;
};

struct CorpusEntry {
  std::string name;
  ResolutionDatum datum;
  ComponentPartition partition;
  std::map<int, Index> link_dims;                 // nonzero link cohomology
  std::map<std::string, ExpectedPage> expected;   // key: "0".."4" or "inf"
};

std::vector<std::string> corpus_names();
// Throws std::invalid_argument for an unknown name.
CorpusEntry load(const std::string& name);

// Formal models of the regular part and the link components derived from a
// resolution datum: A = H*(X_reg) and B_i = H*(L_i) with zero differential
// and square-zero products, and the restriction morphisms A -> B_i.
//
// The Gysin sequence of D in X~ identifies H^k(X_reg) with
// coker gamma^k + ker gamma^{k+1}, and the link spectral sequence identifies
// H^k(L) with coker jsharp^k + ker jsharp^{k+1}; the restriction morphism is
// the map induced by j on the first summand and the literal inclusion
// ker gamma into ker jsharp on the second.  These are the inputs of the
// fiber-product route, whose cohomology must agree with the direct page
// computation degreewise.
struct LinkModels {
  std::shared_ptr<const FiniteCDGA> regular;            // A
  std::vector<std::shared_ptr<const FiniteCDGA>> links; // B_i per component
  std::vector<CDGAMorphism> restrictions;               // A -> B_i
};

LinkModels datum_models(const ResolutionDatum& d,
                        const ComponentPartition& partition);

}  // namespace ispace
