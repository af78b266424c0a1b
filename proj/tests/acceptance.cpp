#include <sys/wait.h>
// acceptance suite: one pass/fail line per criterion, exact structural
// equality throughout, bounds pinned in code

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "fixtures.hpp"
#include "mltc/deduction.hpp"
#include "mltc/multitopic.hpp"
#include "mltc/term.hpp"
#include "mltc/verify.hpp"

using namespace mltc;

namespace {

int failures = 0;

struct Criterion {
  int number;
  std::string title;
  bool pass = true;
  long instances = 0;
  std::string detail;

  void absorb(const std::vector<CheckResult>& rs) {
    for (const CheckResult& r : rs) absorb(r);
  }
  void absorb(const CheckResult& r) {
    instances += r.instances;
    if (!r.pass && pass) {
      pass = false;
      detail = r.name + ": " + r.detail;
    }
  }
  void require(bool ok, const std::string& what) {
    ++instances;
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

void report(const Criterion& c, double seconds) {
  std::printf("criterion %2d  %-58s  %s  (%ld instances, %.2fs)\n", c.number, c.title.c_str(),
              c.pass ? "PASS" : "FAIL", c.instances, seconds);
  if (!c.pass) {
    std::printf("              %s\n", c.detail.c_str());
    ++failures;
  }
}

template <typename Fn>
void run(int number, const std::string& title, Fn fn) {
  Criterion c{number, title};
  auto t0 = std::chrono::steady_clock::now();
  try {
    fn(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(c, secs);
}

struct CliResult {
  std::string output;
  int status = -1;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(MLTC_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  CliResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) res.output.append(buf.data(), n);
  int st = pclose(pipe);
  res.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return res;
}

}  // namespace

int main() {
  const unsigned seed = 20240501u;
  Presentation f1 = fixtures::f1();
  Presentation f2 = fixtures::f2();
  const std::string data = TEST_DATA_DIR;

  run(1, "multicategory laws, exhaustive <=6 plus 10k random", [&](Criterion& c) {
    c.absorb(check_multicategory_laws(f1, 6, seed, 5000));
    c.absorb(check_multicategory_laws(f2, 6, seed + 1, 5000));
  });

  run(2, "omega-category laws with mixed-dimension whiskering", [&](Criterion& c) {
    c.absorb(check_omega_laws(f1, 6, seed, 5000));
    c.absorb(check_omega_laws(f2, 6, seed + 1, 5000));
  });

  run(3, "placed composition, replacement, interchange", [&](Criterion& c) {
    c.absorb(check_placed_replacement_laws(f1, 6));
    c.absorb(check_placed_replacement_laws(f2, 6));
  });

  run(4, "word problem completeness against the closure oracle", [&](Criterion& c) {
    c.absorb(check_word_problem(f1, 1, 8, Lang::C));
    c.absorb(check_word_problem(f2, 2, 7, Lang::C));
    c.absorb(check_axiom_soundness(f1, 1, 8, Lang::C));
    c.absorb(check_axiom_soundness(f2, 2, 6, Lang::C));
  });

  run(5, "running examples reproduced exactly", [&](Criterion& c) {
    Cell u = eval_cterm(parse_cterm("((x *0 y) *0 x)", f1), f1);
    c.require(occurrences(u, OccKind::Indets) == std::vector<std::string>{"x", "y", "x"},
              "occurrence sequence of ((x *0 y) *0 x) is not (x, y, x)");
    c.require(decide_equal(parse_cterm("((Y *1 Y1) *0 (X *1 X1))", f2),
                           parse_cterm("((Y *0 X) *1 (Y1 *0 X1))", f2), f2),
              "the exchange pair does not denote the same cell");
    Cell x = indet_cell(f2, "X");
    c.require(placed_compose(f2, x, 0, Cell::obj_id("f2", 2)) == x, "u o_r 1 failed");
    c.require(placed_compose(f2, Cell::obj_id("f1", 2), 0, x) == x, "1 o_r v failed");
  });

  run(6, "indets are exactly the non-identity indecomposables", [&](Criterion& c) {
    c.absorb(check_indet_characterization(f2, 6));
    c.absorb(check_indet_characterization(f1, 6));
  });

  run(7, "globularity and free-extension conditions", [&](Criterion& c) {
    c.absorb(check_multitopic_structure(f1, 4));
    c.absorb(check_multitopic_structure(f2, 4));
  });

  run(8, "equivalence round trips and morphism functoriality", [&](Criterion& c) {
    c.absorb(check_equivalence_roundtrips(f1, 4));
    c.absorb(check_equivalence_roundtrips(f2, 4));
    // the swap automorphism: applying it twice is the identity
    MultitopicSet s = mlt_of_presentation(f1);
    MltMorphism swap = build_morphism(
        s, s, {{{"a", "b"}, {"b", "a"}}, {{"x", "y"}, {"y", "x"}}});
    MltMorphism swap2 = compose_morphisms(swap, swap);
    for (int n = 0; n <= 1; ++n) {
      for (const Cell& u : enumerate_pasting_diagrams(s, n, 5)) {
        c.require(apply_morphism(swap2, u) == u, "swap twice moved " + u.render());
        c.require(apply_morphism(swap, apply_morphism(swap, u)) == apply_morphism(swap2, u),
                  "composite action differs from composed images on " + u.render());
      }
    }
    c.require(apply_morphism(swap, parse_cell("x(y(#b))", f1)).render() == "y(x(#a))",
              "swap morphism image of x(y(#b))");
  });

  run(9, "proof checker soundness under fuzzing", [&](Criterion& c) {
    c.absorb(check_proof_fuzz(f1, 1, 6, seed, 500, 500));
    c.absorb(check_proof_fuzz(f2, 2, 5, seed + 1, 500, 500));
  });

  run(10, "readback round trips and CLI determinism", [&](Criterion& c) {
    c.absorb(check_roundtrips(f1, 6));
    c.absorb(check_roundtrips(f2, 6));
    const std::string invocations[] = {
        "enumerate -p " + data + "/f1.cmp -n 1 --max-indets 3",
        "enumerate -p " + data + "/f2.cmp -n 2 --max-indets 3 --many-to-one-only",
        "eval -p " + data + "/f2.cmp --lang c \"((Y *1 Y1) *0 (X *1 X1))\"",
        "oracle -p " + data + "/f1.cmp -n 1 --size-bound 5",
        "export -p " + data + "/f2.cmp --max-indets 2",
        "verify -p " + data + "/f1.cmp --seed 7",
    };
    for (const std::string& inv : invocations) {
      CliResult first = run_cli(inv);
      CliResult second = run_cli(inv);
      c.require(!first.output.empty() && first.output == second.output && first.status == 0,
                "non-deterministic output of: mltc " + inv);
    }

    // structured output reparses; exit codes follow the contract
    for (const std::string& inv :
         {"eval -p " + data + "/f1.cmp --json \"(x *0 y)\"",
          "check -p " + data + "/f1.cmp --json",
          "boundary -p " + data + "/f2.cmp --json \"X(X1(#f3))\"",
          "export -p " + data + "/f2.cmp --max-indets 2"}) {
      CliResult r = run_cli(inv);
      bool parses = true;
      try {
        auto j = nlohmann::json::parse(r.output);
        (void)j;
      } catch (...) {
        parses = false;
      }
      c.require(parses && r.status == 0, "structured output does not reparse: mltc " + inv);
    }
    c.require(run_cli("eq -p " + data + "/f1.cmp \"((x *0 y) *0 x)\" \"(x *0 (y *0 x))\"").status ==
                  0,
              "eq true must exit 0");
    c.require(run_cli("eq -p " + data + "/f1.cmp x y").status == 1, "eq false must exit 1");
    c.require(run_cli("eval -p " + data + "/f1.cmp \"(x *0\"").status == 2,
              "malformed input must exit 2");
    c.require(run_cli("check-proof -p " + data + "/f1.cmp " + data + "/assoc.prf").status == 0,
              "valid proof must exit 0");
    c.require(run_cli("check-proof -p " + data + "/f1.cmp " + data + "/tampered.prf").status == 1,
              "tampered proof must exit 1");
  });

  std::printf("%s\n", failures == 0 ? "all criteria passed" : "SOME CRITERIA FAILED");
  return failures == 0 ? 0 : 1;
}
