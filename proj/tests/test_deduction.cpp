#include "doctest.h"

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "mltc/deduction.hpp"

using namespace mltc;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("single axiom steps") {
  Presentation f1 = fixtures::f1();
  Proof pf = parse_proof("1. associativity: ((x *0 y) *0 x) = (x *0 (y *0 x))\n", f1);
  Equation eq = check_proof(f1, pf);
  CHECK(print_equation(eq) == "((x *0 y) *0 x) = (x *0 (y *0 x))");

  // identity axioms with their side conditions
  check_proof(f1, parse_proof("1. identity-right: (x *0 1_a) = x\n", f1));
  check_proof(f1, parse_proof("1. identity-left: (1_b *0 x) = x\n", f1));
  CHECK_THROWS_AS(check_proof(f1, parse_proof("1. identity-right: (x *0 1_b) = x\n", f1)),
                  ProofError);
  CHECK_THROWS_AS(check_proof(f1, parse_proof("1. identity-left: (x *0 1_a) = x\n", f1)),
                  ProofError);
}

TEST_CASE("exchange step plus symmetry") {
  Presentation f2 = fixtures::f2();
  std::string text =
      "1. exchange: ((Y *1 Y1) *0 (X *1 X1)) = ((Y *0 X) *1 (Y1 *0 X1))\n"
      "2. symmetry [1]: ((Y *0 X) *1 (Y1 *0 X1)) = ((Y *1 Y1) *0 (X *1 X1))\n";
  Proof pf = parse_proof(text, f2);
  Equation eq = check_proof(f2, pf);
  CHECK(decide_equal(eq.c_left, eq.c_right, f2));
}

TEST_CASE("congruence needs well-defined composites") {
  Presentation f1 = fixtures::f1();
  // wrapping x = x with a boundary-mismatched partner is rejected
  std::string text =
      "1. reflexivity: x = x\n"
      "2. congruence-left [1]: (x *0 x) = (x *0 x)\n";
  CHECK_THROWS_AS(check_proof(f1, parse_proof(text, f1)), ProofError);

  std::string good =
      "1. reflexivity: y = y\n"
      "2. congruence-left [1]: (y *0 x) = (y *0 x)\n";
  check_proof(f1, parse_proof(good, f1));
}

TEST_CASE("structural rules check their shapes") {
  Presentation f1 = fixtures::f1();
  CHECK_THROWS_AS(check_proof(f1, parse_proof("1. reflexivity: x = y\n", f1)), ProofError);
  CHECK_THROWS_AS(
      check_proof(f1, parse_proof("1. associativity: ((x *0 y) *0 x) = ((x *0 y) *0 x)\n", f1)),
      ProofError);
  CHECK_THROWS_AS(check_proof(f1, parse_proof("1. reflexivity: x = x\n"
                                              "2. symmetry [1]: x = y\n",
                                              f1)),
                  ProofError);
  // premises must be earlier lines
  CHECK_THROWS_AS(parse_proof("1. symmetry [2]: x = x\n2. reflexivity: x = x\n", f1), ParseError);
}

TEST_CASE("multicomposition proofs") {
  Presentation f2 = fixtures::f2();
  check_proof(f2, parse_proof("1. identity-right: (X o[0] 1_f2) = X\n", f2));
  check_proof(f2, parse_proof("1. identity-left: (1_f1 o[0] X) = X\n", f2));
  check_proof(f2, parse_proof("1. associativity: ((X o[0] X1) o[0] 1_f3) = (X o[0] (X1 o[0] 1_f3))\n", f2));
  CHECK_THROWS_AS(check_proof(f2, parse_proof("1. identity-left: (1_f2 o[0] X) = X\n", f2)),
                  ProofError);
  // exchange is not a multicomposition rule
  CHECK_THROWS_AS(check_proof(f2, parse_proof("1. exchange: (X o[0] 1_f2) = (X o[0] 1_f2)\n", f2)),
                  ProofError);
}

TEST_CASE("commutativity bookkeeping over a two-slot source") {
  // a fixture with a genuinely two-ary 2-indet
  Presentation p = parse_presentation(
      "dim 0: a b c\n"
      "dim 1: f : a -> b\n"
      "       g : b -> c\n"
      "       h : a -> c\n"
      "dim 2: K : (g o[0] f) => h\n"
      "       F : f => f\n"
      "       G : g => g\n");
  // K has source (g, f): compose F into slot 1 and G into slot 0 in both orders
  check_proof(p, parse_proof("1. commutativity: ((K o[0] G) o[1] F) = ((K o[1] F) o[0] G)\n", p));
  CHECK_THROWS_AS(
      check_proof(p, parse_proof("1. commutativity: ((K o[0] G) o[0] F) = ((K o[1] F) o[0] G)\n", p)),
      ProofError);
}

TEST_CASE("proof files from disk") {
  Presentation f1 = fixtures::f1();
  Proof pf = parse_proof(slurp(std::string(TEST_DATA_DIR) + "/assoc.prf"), f1);
  Equation eq = check_proof(f1, pf);
  CHECK(decide_equal(eq.c_left, eq.c_right, f1));

  // print/parse round trip
  Proof again = parse_proof(print_proof(pf), f1);
  CHECK(print_proof(again) == print_proof(pf));
}

TEST_CASE("term enumeration grows by size and stays well-formed") {
  Presentation f1 = fixtures::f1();
  auto terms = enumerate_cterms(f1, 1, 5);
  CHECK(!terms.empty());
  for (const CTermCell& tc : terms) {
    CHECK(term_size(tc.term) <= 5);
    CHECK(tc.cell == eval_cterm(tc.term, f1));
  }
  auto smaller = enumerate_cterms(f1, 1, 4);
  CHECK(smaller.size() < terms.size());

  auto mterms = enumerate_mterms(f1, 1, 5);
  for (const MTermCell& tc : mterms) CHECK(tc.cell == eval_mterm(tc.term, f1));
}

TEST_CASE("closure oracle blocks") {
  Presentation f1 = fixtures::f1();
  OraclePartition part = closure_oracle(f1, 1, 5, Lang::C);

  auto block_containing = [&part](const std::string& s) {
    auto i = part.index_of(s);
    REQUIRE(i.has_value());
    return part.block_of[*i];
  };
  // the identity axioms collapse onto x
  CHECK(block_containing("x") == block_containing("(x *0 1_a)"));
  CHECK(block_containing("x") == block_containing("(1_b *0 x)"));
  // distinct indets stay distinct
  CHECK(block_containing("x") != block_containing("y"));

  // the exchange pair shares a block over the richer fixture
  Presentation f2 = fixtures::f2();
  OraclePartition p2 = closure_oracle(f2, 2, 7, Lang::C);
  auto bc = [&p2](const std::string& s) {
    auto i = p2.index_of(s);
    REQUIRE(i.has_value());
    return p2.block_of[*i];
  };
  CHECK(bc("((Y *1 Y1) *0 (X *1 X1))") == bc("((Y *0 X) *1 (Y1 *0 X1))"));
}

TEST_CASE("oracle monotonicity: blocks only merge as the bound grows") {
  Presentation f1 = fixtures::f1();
  OraclePartition small = closure_oracle(f1, 1, 5, Lang::C);
  OraclePartition large = closure_oracle(f1, 1, 7, Lang::C);
  for (std::size_t i = 0; i < small.printed.size(); ++i) {
    for (std::size_t j = i + 1; j < small.printed.size(); ++j) {
      if (!small.same_block(i, j)) continue;
      auto li = large.index_of(small.printed[i]);
      auto lj = large.index_of(small.printed[j]);
      REQUIRE(li.has_value());
      REQUIRE(lj.has_value());
      CHECK(large.same_block(*li, *lj));
    }
  }
}

TEST_CASE("multicomposition oracle") {
  Presentation f1 = fixtures::f1();
  OraclePartition part = closure_oracle(f1, 1, 5, Lang::M);
  auto bc = [&part](const std::string& s) {
    auto i = part.index_of(s);
    REQUIRE(i.has_value());
    return part.block_of[*i];
  };
  CHECK(bc("x") == bc("(x o[0] 1_a)"));
  CHECK(bc("x") == bc("(1_b o[0] x)"));
  CHECK(bc("x") != bc("y"));
  CHECK(bc("(x o[0] y)") == bc("((x o[0] 1_a) o[0] y)"));
  // every block evaluates to a single cell
  for (const auto& block : part.blocks)
    for (std::size_t m : block) CHECK(part.cells[m] == part.cells[block.front()]);
}

TEST_CASE("enumeration budget guard") {
  // a presentation with enough generators to overflow the budget quickly
  std::string text = "dim 0: o\ndim 1:";
  for (int i = 0; i < 26; ++i)
    text += std::string(i ? "       " : " ") + "e" + std::to_string(i) + " : o -> o\n";
  Presentation p = parse_presentation(text);
  CHECK_THROWS_AS(enumerate_cterms(p, 1, 12), KernelError);
}

TEST_CASE("axiom neighbors preserve evaluation") {
  Presentation f2 = fixtures::f2();
  for (const CTermCell& tc : enumerate_cterms(f2, 2, 5))
    for (const CTermP& nb : axiom_neighbors(tc.term, f2))
      CHECK(eval_cterm(nb, f2) == tc.cell);
  for (const MTermCell& tc : enumerate_mterms(f2, 2, 5))
    for (const MTermP& nb : axiom_neighbors(tc.term, f2))
      CHECK(eval_mterm(nb, f2) == tc.cell);
}
