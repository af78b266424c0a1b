#ifndef MLTC_MULTITOPIC_HPP
#define MLTC_MULTITOPIC_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mltc/presentation.hpp"

namespace mltc {

// The per-dimension multicategory view of a presentation: C_n are the level-n
// indet names, P_n the many-to-one n-cells, d/c the boundary restricted to
// them.  A pure repackaging; no cell data is copied.
struct MultitopicSet {
  Presentation base;

  int top_dim() const { return base.top_dim(); }
  const std::vector<std::string>& indet_names(int n) const { return base.levels.at(n).order; }
};

MultitopicSet mlt_of_presentation(const Presentation& p);
MultitopicSet truncate(const MultitopicSet& s, int n);

// Inverse direction: rebuild the presentation from the view's indets and
// boundary functions.  Exact round trip with mlt_of_presentation.
Presentation computad_of_mlt(const MultitopicSet& s);

// ---------------------------------------------------------------------------
// enumeration

// All distinct many-to-one n-cells with at most max_indets indet
// occurrences, in size-lexicographic order of the canonical rendering.
std::vector<Cell> enumerate_pasting_diagrams(const MultitopicSet& s, int n, int max_indets);

// Every n-cell, identities over non-indets included; payload complexity is
// bounded by the same occurrence budget one dimension down.
std::vector<Cell> enumerate_cells(const Presentation& p, int n, int max_indets);

// ---------------------------------------------------------------------------
// structural law checking

struct LawReport {
  std::vector<std::string> violations;
  long instances = 0;
  bool ok() const { return violations.empty(); }
};

using BoundaryFn = std::function<Boundary(const Presentation&, const Cell&)>;

// Exhaustively verifies the source/target bookkeeping, boundary behaviour of
// multicomposition, identity boundaries and globularity over the enumerated
// pasting diagrams.  A custom boundary function supports fault injection.
LawReport check_multitopic_laws(const MultitopicSet& s, int n, int bound,
                                const BoundaryFn& boundary_fn = {});

// ---------------------------------------------------------------------------
// morphisms

struct MltMorphism {
  MultitopicSet source, target;
  std::vector<std::map<std::string, std::string>> indet_images;  // per dimension
};

// Validates the boundary conditions dimension by dimension; throws
// KernelError naming the offending indet.
MltMorphism build_morphism(const MultitopicSet& source, const MultitopicSet& target,
                           const std::vector<std::map<std::string, std::string>>& indet_images);

MltMorphism identity_morphism(const MultitopicSet& s);
MltMorphism compose_morphisms(const MltMorphism& g, const MltMorphism& f);

// Structural action on pasting diagrams: heads map through the indet images.
Cell apply_morphism(const MltMorphism& m, const Cell& u);

// Parse `.map` files / --map flags: `name -> name` per line.
std::vector<std::map<std::string, std::string>> parse_morphism_map(
    const std::string& text, const Presentation& source);

}  // namespace mltc

#endif
