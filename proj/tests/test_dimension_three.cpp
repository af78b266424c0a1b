#include "doctest.h"

#include "fixtures.hpp"
#include "mltc/term.hpp"
#include "mltc/verify.hpp"

using namespace mltc;

// the two-dimensional fixtures keep every loop small; this tower checks that
// nothing is special-cased to dimension two

TEST_CASE("a three-dimensional presentation validates and enumerates") {
  Presentation p = fixtures::f3();
  CHECK(p.top_dim() == 3);
  CHECK(validate_presentation(p).ok());
  CHECK(p.decl("T").domain.render() == "U(V(#x), #y, #x)");

  auto cells = enumerate_cells(p, 3, 2);
  CHECK(cells.size() > 100);
  for (const Cell& u : cells) {
    validate_cell(p, u);
    Boundary b = boundary(p, u);
    Boundary bd = boundary(p, b.domain);
    Boundary bc = boundary(p, b.codomain);
    CHECK(bd.domain == bc.domain);
    CHECK(bd.codomain == bc.codomain);
  }
}

TEST_CASE("deep composition and readback at dimension three") {
  Presentation p = fixtures::f3();
  Cell t = indet_cell(p, "T");
  Cell s = indet_cell(p, "S");

  // k = 2: whisker t into the domain of t, then compose on top
  Cell dt = boundary(p, t).domain;
  Cell ts = compose(p, t, 2, whisker(p, dt, 0, t)).cell;
  CHECK(boundary(p, ts).codomain == indet_cell(p, "U"));
  validate_cell(p, ts);

  // placed composition into the V slot of T's source
  Cell tps = placed_compose(p, t, 1, s);
  CHECK(occurrences(tps, OccKind::Indets) == std::vector<std::string>{"T", "S"});

  // k = 0 and k = 1 force the structural recursion through predets
  auto cells = enumerate_cells(p, 3, 2);
  int budget = 1500;
  for (const Cell& u : cells) {
    if (budget <= 0) break;
    for (int k = 0; k < 3; ++k) {
      for (std::size_t j = 0; j < cells.size(); j += 5) {
        const Cell& v = cells[j];
        Cell du = iterated_boundary(p, u, k, BoundarySide::Domain);
        Cell cv = iterated_boundary(p, v, k, BoundarySide::Codomain);
        if (du != cv) continue;
        Cell c = compose(p, u, k, v).cell;
        validate_cell(p, c);
        CHECK(eval_cterm(readback_c(p, c), p) == c);
        --budget;
      }
    }
  }
  CHECK(budget < 1500);  // the loops actually fired
}

TEST_CASE("the invariant suites hold over the tower") {
  Presentation p = fixtures::f3();
  for (const CheckResult& r : check_multicategory_laws(p, 2, 11u, 100)) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
    CHECK(r.instances > 0);
  }
  for (const CheckResult& r : check_omega_laws(p, 1, 11u, 50)) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
    CHECK(r.instances > 0);
  }
  for (const CheckResult& r : check_placed_replacement_laws(p, 2)) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
  }
  for (const CheckResult& r : check_roundtrips(p, 2)) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
  }
  CheckResult wp = check_word_problem(p, 3, 5, Lang::C);
  INFO(wp.detail);
  CHECK(wp.pass);
}
