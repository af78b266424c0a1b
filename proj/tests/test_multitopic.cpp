#include "doctest.h"

#include <algorithm>

#include "fixtures.hpp"
#include "mltc/multitopic.hpp"
#include "mltc/term.hpp"

using namespace mltc;

TEST_CASE("the view repackages the presentation") {
  Presentation f1 = fixtures::f1();
  MultitopicSet s = mlt_of_presentation(f1);
  CHECK(s.indet_names(0) == std::vector<std::string>{"a", "b"});
  CHECK(s.indet_names(1) == std::vector<std::string>{"x", "y"});

  Presentation f2 = fixtures::f2();
  MultitopicSet s2 = mlt_of_presentation(f2);
  CHECK(s2.indet_names(2) == std::vector<std::string>{"X", "X1", "Y", "Y1"});

  // truncation compatibility
  CHECK(truncate(s2, 1).base == mlt_of_presentation(truncate_presentation(f2, 1)).base);

  Presentation bad = f2;
  bad.levels[2].decls.at("X").codomain = "a";
  CHECK_THROWS_AS(mlt_of_presentation(bad), KernelError);
}

TEST_CASE("pasting diagram enumeration") {
  Presentation f1 = fixtures::f1();
  MultitopicSet s = mlt_of_presentation(f1);
  std::vector<std::string> got;
  for (const Cell& c : enumerate_pasting_diagrams(s, 1, 2)) got.push_back(c.render());
  CHECK(got == std::vector<std::string>{"#a", "#b", "x(#a)", "y(#b)", "x(y(#b))", "y(x(#a))"});

  // zero budget leaves exactly the identities
  std::vector<std::string> ids;
  for (const Cell& c : enumerate_pasting_diagrams(s, 1, 0)) ids.push_back(c.render());
  CHECK(ids == std::vector<std::string>{"#a", "#b"});

  // one occurrence at dimension 2: identities over the six 1-indets plus the
  // four indet cells
  Presentation f2 = fixtures::f2();
  MultitopicSet s2 = mlt_of_presentation(f2);
  auto cells = enumerate_pasting_diagrams(s2, 2, 1);
  CHECK(cells.size() == 10);
  long indets = std::count_if(cells.begin(), cells.end(),
                              [](const Cell& c) { return classify(c).is_indet; });
  CHECK(indets == 4);
  for (const Cell& c : cells) CHECK(classify(c).is_many_to_one);

  // enumeration of all cells also carries the predet-headed ones
  auto all = enumerate_cells(f2, 2, 2);
  CHECK(all.size() > enumerate_pasting_diagrams(s2, 2, 2).size());
}

TEST_CASE("law checking and the corrupted-boundary control") {
  Presentation f2 = fixtures::f2();
  MultitopicSet s = mlt_of_presentation(f2);
  CHECK(check_multitopic_laws(s, 2, 3).ok());
  CHECK(check_multitopic_laws(s, 1, 4).ok());

  // a lying boundary function must be caught
  BoundaryFn liar = [](const Presentation& p, const Cell& u) {
    Boundary b = boundary(p, u);
    if (u.dim() == 2 && classify(u).is_indet) std::swap(b.domain, b.codomain);
    return b;
  };
  CHECK(!check_multitopic_laws(s, 2, 3, liar).ok());
}

TEST_CASE("morphisms") {
  Presentation f1 = fixtures::f1();
  MultitopicSet s = mlt_of_presentation(f1);

  std::vector<std::map<std::string, std::string>> swap_images = {
      {{"a", "b"}, {"b", "a"}}, {{"x", "y"}, {"y", "x"}}};
  MltMorphism swap = build_morphism(s, s, swap_images);
  CHECK(apply_morphism(swap, parse_cell("x(y(#b))", f1)).render() == "y(x(#a))");
  CHECK(apply_morphism(swap, parse_cell("#a", f1)).render() == "#b");

  MltMorphism id = identity_morphism(s);
  for (const Cell& u : enumerate_pasting_diagrams(s, 1, 3)) CHECK(apply_morphism(id, u) == u);

  // swapping twice is the identity (functoriality of composition)
  MltMorphism swap2 = compose_morphisms(swap, swap);
  for (const Cell& u : enumerate_pasting_diagrams(s, 1, 3)) {
    CHECK(apply_morphism(swap2, u) == u);
    CHECK(apply_morphism(swap, apply_morphism(swap, u)) == apply_morphism(swap2, u));
  }

  // boundary-incompatible images are rejected
  std::vector<std::map<std::string, std::string>> bad = {{{"a", "a"}, {"b", "b"}},
                                                         {{"x", "x"}, {"y", "x"}}};
  CHECK_THROWS_AS(build_morphism(s, s, bad), KernelError);

  // morphisms commute with multicomposition and replacement
  Presentation f2 = fixtures::f2();
  MultitopicSet s2 = mlt_of_presentation(f2);
  std::vector<std::map<std::string, std::string>> rot = {
      {{"a", "a"}, {"b", "b"}, {"c", "c"}},
      {{"f1", "f2"}, {"f2", "f3"}, {"f3", "f1"}, {"g1", "g1"}, {"g2", "g2"}, {"g3", "g3"}}};
  MltMorphism m = build_morphism(truncate(s2, 1), truncate(s2, 1), rot);
  Cell g1 = indet_cell(f2, "g1");
  Cell f1c = indet_cell(f2, "f1");
  Cell comp = multicompose(f2, g1, 0, f1c).cell;
  CHECK(apply_morphism(m, comp) ==
        multicompose(f2, apply_morphism(m, g1), 0, apply_morphism(m, f1c)).cell);
  Cell rep = replace(f2, comp, 1, indet_cell(f2, "f3"));
  CHECK(apply_morphism(m, rep) ==
        replace(f2, apply_morphism(m, comp), 1, apply_morphism(m, indet_cell(f2, "f3"))));
}

TEST_CASE("equivalence round trips") {
  for (const Presentation& p : {fixtures::f1(), fixtures::f2()}) {
    MultitopicSet s = mlt_of_presentation(p);
    CHECK(computad_of_mlt(s) == p);
    CHECK(mlt_of_presentation(computad_of_mlt(s)).base == s.base);
  }
}

TEST_CASE("morphism map files") {
  Presentation f1 = fixtures::f1();
  auto images = parse_morphism_map("a -> b\nb -> a\nx -> y\ny -> x\n", f1);
  REQUIRE(images.size() == 2);
  CHECK(images[0].at("a") == "b");
  CHECK(images[1].at("x") == "y");
  CHECK_THROWS_AS(parse_morphism_map("zebra -> a\n", f1), ParseError);
}
