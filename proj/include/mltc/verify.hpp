#ifndef MLTC_VERIFY_HPP
#define MLTC_VERIFY_HPP

#include <random>
#include <string>
#include <vector>

#include "mltc/deduction.hpp"
#include "mltc/multitopic.hpp"

namespace mltc {

struct CheckResult {
  std::string name;
  bool pass = true;
  long instances = 0;
  std::string detail;
};

// random many-to-one cell with roughly `occ_target` indet occurrences
Cell random_pasting_diagram(const Presentation& p, int n, int occ_target, std::mt19937& rng);
// random cell, predet-headed ones included
Cell random_cell(const Presentation& p, int n, int occ_target, std::mt19937& rng);

// multicomposition identity/commutativity/associativity over all enumerated
// cells plus seeded random larger instances
std::vector<CheckResult> check_multicategory_laws(const Presentation& p, int bound, unsigned seed,
                                                  int random_instances);

// associativity, exchange and identity laws of the omega-categorical
// composition, mixed-dimension whiskering included
std::vector<CheckResult> check_omega_laws(const Presentation& p, int bound, unsigned seed,
                                          int random_instances);

// placed-composition rules, replacement laws, the whisker/replacement
// interchange and the composition/placed-composition interchange
std::vector<CheckResult> check_placed_replacement_laws(const Presentation& p, int bound);

// decomposition behaviour of iterated identities and the characterization of
// indets as non-identity indecomposables
std::vector<CheckResult> check_indet_characterization(const Presentation& p, int bound);

// multitopic structure and globularity
std::vector<CheckResult> check_multitopic_structure(const Presentation& p, int bound);

// computad <-> multitopic-set round trips and morphism functoriality
std::vector<CheckResult> check_equivalence_roundtrips(const Presentation& p, int bound);

// eval/readback round trips in both term languages; presentation print/parse
std::vector<CheckResult> check_roundtrips(const Presentation& p, int bound);

// single axiom rewrites preserve evaluation
CheckResult check_axiom_soundness(const Presentation& p, int dim, int size_bound, Lang lang);

// closure oracle versus normalization kernel, with the raised-bound retry
CheckResult check_word_problem(const Presentation& p, int dim, int size_bound, Lang lang,
                               int escape_bump = 2);

// randomized proof checking: valid proofs all check and conclude true
// equations; one-token mutations are rejected or stay valid and sound
std::vector<CheckResult> check_proof_fuzz(const Presentation& p, int dim, int pool_bound,
                                          unsigned seed, int n_valid, int n_mutations);

// everything at modest bounds, for the CLI verify verb
std::vector<CheckResult> run_invariant_suite(const Presentation& p, unsigned seed);

}  // namespace mltc

#endif
