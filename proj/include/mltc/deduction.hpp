#ifndef MLTC_DEDUCTION_HPP
#define MLTC_DEDUCTION_HPP

#include <random>
#include <string>
#include <vector>

#include "mltc/term.hpp"

namespace mltc {

class Presentation;

// ---------------------------------------------------------------------------
// checkable derivation trees for the two equational systems

enum class Rule {
  Reflexivity,
  Associativity,
  Exchange,        // composition only
  IdentityLeft,
  IdentityRight,
  IdentityMerge,   // composition only
  Commutativity,   // multicomposition only
  Symmetry,
  Transitivity,
  CongruenceLeft,
  CongruenceRight,
};

std::string rule_name(Rule r);

struct Equation {
  Lang lang = Lang::C;
  CTermP c_left, c_right;
  MTermP m_left, m_right;
};

std::string print_equation(const Equation& e);

struct ProofStep {
  Rule rule = Rule::Reflexivity;
  std::vector<std::size_t> premises;  // indices into Proof::steps
  Equation conclusion;
  int line = 0;  // as written in the source file, for reporting
};

struct Proof {
  Lang lang = Lang::C;
  std::vector<ProofStep> steps;  // last step is the root
};

struct ProofError : std::runtime_error {
  int line;
  explicit ProofError(const std::string& msg, int line_ = 0)
      : std::runtime_error(line_ > 0 ? "step " + std::to_string(line_) + ": " + msg : msg),
        line(line_) {}
};

// Validates every step as an instance of its rule, including the
// composability side conditions, and returns the root equation.
Equation check_proof(const Presentation& p, const Proof& pf);

// .prf format: `n. <rule> [premise-lines]: <term> = <term>` per line, the
// last line is the root.  The language is inferred from the term syntax.
Proof parse_proof(const std::string& text, const Presentation& p);
std::string print_proof(const Proof& pf);

// ---------------------------------------------------------------------------
// bounded term enumeration

struct CTermCell {
  CTermP term;
  Cell cell;
};
struct MTermCell {
  MTermP term;
  Cell cell;
};

// All well-formed terms of the given dimension with at most size_bound AST
// nodes, evaluated; deterministic order.
std::vector<CTermCell> enumerate_cterms(const Presentation& p, int dim, int size_bound);
std::vector<MTermCell> enumerate_mterms(const Presentation& p, int dim, int size_bound);

// Results of one axiom rewrite applied at any subterm; every neighbor
// denotes the same cell.
std::vector<CTermP> axiom_neighbors(const CTermP& t, const Presentation& p);
std::vector<MTermP> axiom_neighbors(const MTermP& t, const Presentation& p);

// ---------------------------------------------------------------------------
// brute-force provability oracle

struct OraclePartition {
  Lang lang = Lang::C;
  std::vector<std::string> printed;              // index-aligned with terms
  std::vector<Cell> cells;                       // index-aligned evaluations
  std::vector<std::size_t> block_of;             // term index -> block index
  std::vector<std::vector<std::size_t>> blocks;  // sorted members, sorted by least member

  bool same_block(std::size_t i, std::size_t j) const { return block_of[i] == block_of[j]; }
  std::optional<std::size_t> index_of(const std::string& printed_term) const;
};

// Least equivalence relation on the enumerated terms closed under single
// axiom rewrites (with both endpoints inside the enumeration) and congruence
// at arbitrary depth.
OraclePartition closure_oracle(const Presentation& p, int dim, int size_bound,
                               Lang lang = Lang::C);

// ---------------------------------------------------------------------------
// randomized proofs, for fuzzing the checker

Proof random_valid_proof(const Presentation& p, int dim, std::mt19937& rng,
                         const std::vector<CTermCell>& pool);

// One-token mutation of a serialized proof; returns the mutated text.
std::string mutate_proof_text(const std::string& text, std::mt19937& rng);

}  // namespace mltc

#endif
