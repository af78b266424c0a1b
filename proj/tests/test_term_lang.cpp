#include "doctest.h"

#include "fixtures.hpp"
#include "mltc/deduction.hpp"
#include "mltc/term.hpp"

using namespace mltc;

TEST_CASE("parsing composition terms") {
  Presentation f1 = fixtures::f1();
  CTermP t = parse_cterm("((x *0 y) *0 x)", f1);
  REQUIRE(t->kind == CTerm::Kind::Comp);
  CHECK(t->k == 0);
  CHECK(t->left->kind == CTerm::Kind::Comp);
  CHECK(t->right->name == "x");
  CHECK(print_cterm(t) == "((x *0 y) *0 x)");

  CTermP id = parse_cterm("1_{(x *0 y)}", f1);
  REQUIRE(id->kind == CTerm::Kind::Id);
  CHECK(id->dim == 2);
  CHECK(id->inner->kind == CTerm::Kind::Comp);

  CHECK(parse_cterm("1_a", f1)->dim == 1);
  CHECK(parse_cterm("1^2_a", f1)->dim == 2);
  CHECK(print_cterm(parse_cterm("1^2_a", f1)) == "1_{1_a}");

  CHECK_THROWS_AS(parse_cterm("(x *1 y)", f1), ParseError);  // k >= dimension
  CHECK_THROWS_AS(parse_cterm("(x *0 )", f1), ParseError);
  CHECK_THROWS_AS(parse_cterm("zebra", f1), ParseError);
  CHECK_THROWS_AS(parse_cterm("x y", f1), ParseError);  // trailing input
  CHECK_THROWS_AS(parse_cterm("x", f1, 2), ParseError);  // expected dimension
}

TEST_CASE("parsing multicomposition terms") {
  Presentation f1 = fixtures::f1();
  Presentation f2 = fixtures::f2();
  MTermP t = parse_mterm("(x o[0] y)", f1);
  REQUIRE(t->kind == MTerm::Kind::Comp);
  CHECK(t->r == 0);
  CHECK(print_mterm(t) == "(x o[0] y)");
  CHECK(parse_mterm("(X o[0] X1)", f2)->kind == MTerm::Kind::Comp);
  // position validity is deferred to evaluation
  MTermP loose = parse_mterm("(x o[3] y)", f1);
  CHECK(loose->r == 3);
  CHECK_THROWS_AS(eval_mterm(loose, f1), KernelError);
}

TEST_CASE("evaluation") {
  Presentation f1 = fixtures::f1();
  Presentation f2 = fixtures::f2();
  CHECK(eval_cterm(parse_cterm("((x *0 y) *0 x)", f1), f1).render() == "x(y(x(#a)))");
  CHECK(eval_cterm(parse_cterm("(x *0 1_a)", f1), f1).render() == "x(#a)");
  CHECK(eval_cterm(parse_cterm("((Y *1 Y1) *0 (X *1 X1))", f2), f2).render() ==
        "e{g1(f1(#a))}(Y(Y1(#g3)), X(X1(#f3)))");

  CHECK(eval_mterm(parse_mterm("(x o[0] y)", f1), f1).render() == "x(y(#b))");
  CHECK(eval_mterm(parse_mterm("1_f2", f2), f2).render() == "#f2");
  CHECK_THROWS_AS(eval_mterm(parse_mterm("((X o[0] X1) o[0] Y1)", f2), f2), KernelError);

  // composability violations name the offending subterm
  try {
    eval_cterm(parse_cterm("(x *0 x)", f1), f1);
    FAIL("expected an error");
  } catch (const KernelError& e) {
    CHECK(std::string(e.what()).find("(x *0 x)") != std::string::npos);
  }
}

TEST_CASE("agreement of the two languages") {
  Presentation f2 = fixtures::f2();
  Cell via_c = eval_cterm(parse_cterm("(X *1 X1)", f2), f2);
  Cell via_m = eval_mterm(parse_mterm("(X o[0] X1)", f2), f2);
  CHECK(via_c == via_m);
}

TEST_CASE("readback") {
  Presentation f1 = fixtures::f1();
  Presentation f2 = fixtures::f2();
  Cell xy = eval_cterm(parse_cterm("(x *0 y)", f1), f1);
  CHECK(readback(f1, xy, Lang::M) == "(x o[0] y)");
  CHECK(readback(f2, Cell::obj_id("f2", 2), Lang::C) == "1_f2");

  // many-to-one restriction of the multicomposition readback
  Cell big = eval_cterm(parse_cterm("((Y *1 Y1) *0 (X *1 X1))", f2), f2);
  CHECK_THROWS_AS(readback_m(f2, big), KernelError);

  // round trips across every enumerated term
  for (const CTermCell& tc : enumerate_cterms(f1, 1, 6)) {
    CHECK(eval_cterm(readback_c(f1, tc.cell), f1) == tc.cell);
    CHECK(eval_mterm(readback_m(f1, tc.cell), f1) == tc.cell);
  }
  for (const CTermCell& tc : enumerate_cterms(f2, 2, 5)) {
    CHECK(eval_cterm(readback_c(f2, tc.cell), f2) == tc.cell);
    if (classify(tc.cell).is_many_to_one)
      CHECK(eval_mterm(readback_m(f2, tc.cell), f2) == tc.cell);
  }

  // the deep predet-headed example reads back too
  CHECK(eval_cterm(readback_c(f2, big), f2) == big);
}

TEST_CASE("cell syntax reparses renderings") {
  Presentation f2 = fixtures::f2();
  for (const char* text : {"a", "#f2", "X(#f2)", "X(X1(#f3))", "e{#a}()",
                           "e{g1(f1(#a))}(Y(Y1(#g3)), X(X1(#f3)))"}) {
    Cell c = parse_cell(text, f2);
    CHECK(c.render() == text);
  }
  CHECK_THROWS_AS(parse_cell("nope", f2), ParseError);
  CHECK_THROWS_AS(parse_cell("x(#a", fixtures::f1()), ParseError);
  CHECK_THROWS_AS(parse_cell("X(#f3)", f2), KernelError);  // slot typing
}

TEST_CASE("decide_equal") {
  Presentation f1 = fixtures::f1();
  Presentation f2 = fixtures::f2();
  CHECK(decide_equal(parse_cterm("((x *0 y) *0 x)", f1), parse_cterm("(x *0 (y *0 x))", f1), f1));
  CHECK(decide_equal(parse_cterm("((Y *1 Y1) *0 (X *1 X1))", f2),
                     parse_cterm("((Y *0 X) *1 (Y1 *0 X1))", f2), f2));
  CHECK(!decide_equal(parse_cterm("x", f1), parse_cterm("y", f1), f1));
}
