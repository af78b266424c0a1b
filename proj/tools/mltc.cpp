// command-line front end for the many-to-one computad kernel

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mltc/deduction.hpp"
#include "mltc/multitopic.hpp"
#include "mltc/term.hpp"
#include "mltc/verify.hpp"

using nlohmann::json;
using namespace mltc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Presentation load_presentation(const std::string& path) {
  return parse_presentation(slurp(path), path);
}

json cell_to_json(const Cell& c) {
  json j;
  j["dim"] = c.dim();
  json head;
  switch (c.kind()) {
    case Cell::Kind::Name:
      head["kind"] = "name";
      head["name"] = c.head_name();
      break;
    case Cell::Kind::ObjId:
      head["kind"] = "objid";
      head["name"] = c.head_name();
      break;
    case Cell::Kind::App:
      if (c.head_is_predet()) {
        head["kind"] = "predet";
        head["payload"] = cell_to_json(c.predet_payload());
      } else {
        head["kind"] = "indet";
        head["name"] = c.head_name();
      }
      break;
  }
  j["head"] = std::move(head);
  json args = json::array();
  if (c.is_app())
    for (const Cell& a : c.args()) args.push_back(cell_to_json(a));
  j["args"] = std::move(args);
  return j;
}

std::vector<std::string> gather_terms(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const std::string& a : args) {
    if (a == "-") {
      std::string line;
      while (std::getline(std::cin, line))
        if (!line.empty()) out.push_back(line);
    } else {
      out.push_back(a);
    }
  }
  return out;
}

Cell eval_in(const Presentation& p, const std::string& text, const std::string& lang) {
  if (lang == "m") return eval_mterm(parse_mterm(text, p), p);
  if (lang == "c") return eval_cterm(parse_cterm(text, p), p);
  return eval_term_text(text, p);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"many-to-one computad kernel"};
  app.require_subcommand(1);

  std::string pres_path, lang = "auto", kind = "indets", target_path, map_file;
  std::vector<std::string> terms, map_flags;
  bool as_json = false, m21_only = false;
  int dim_n = -1, comp_k = -1, max_indets = 4, size_bound = 5;
  unsigned seed = 1u;

  auto add_common = [&](CLI::App* cmd, bool needs_presentation = true) {
    if (needs_presentation)
      cmd->add_option("-p,--presentation", pres_path, "presentation file")->required();
    cmd->add_flag("--json", as_json, "structured output");
  };

  CLI::App* c_check = app.add_subcommand("check", "validate a presentation");
  add_common(c_check);

  CLI::App* c_eval = app.add_subcommand("eval", "evaluate terms to canonical cells");
  add_common(c_eval);
  c_eval->add_option("--lang", lang, "term language: c, m or auto");
  c_eval->add_option("terms", terms, "terms (or - for stdin)")->required();

  CLI::App* c_eq = app.add_subcommand("eq", "decide equality of two terms");
  add_common(c_eq);
  c_eq->add_option("--lang", lang, "term language: c, m or auto");
  c_eq->add_option("terms", terms, "two terms (or - for stdin)")->required();

  CLI::App* c_compose = app.add_subcommand("compose", "compose two cells");
  add_common(c_compose);
  c_compose->add_option("-k", comp_k, "composition dimension")->required();
  c_compose->add_option("cells", terms, "two cells in canonical syntax")->required();

  CLI::App* c_boundary = app.add_subcommand("boundary", "domain and codomain of a cell");
  add_common(c_boundary);
  c_boundary->add_option("cells", terms, "cell in canonical syntax")->required();

  CLI::App* c_occ = app.add_subcommand("occurrences", "occurrence sequence of a cell");
  add_common(c_occ);
  c_occ->add_option("--kind", kind, "objects or indets");
  c_occ->add_option("cells", terms, "cell in canonical syntax")->required();

  CLI::App* c_enum = app.add_subcommand("enumerate", "enumerate cells of one dimension");
  add_common(c_enum);
  c_enum->add_option("-n", dim_n, "dimension")->required();
  c_enum->add_option("--max-indets", max_indets, "occurrence budget");
  c_enum->add_flag("--many-to-one-only", m21_only, "pasting diagrams only");

  CLI::App* c_proof = app.add_subcommand("check-proof", "check a derivation file");
  add_common(c_proof);
  c_proof->add_option("proof", terms, "proof file (.prf)")->required();

  CLI::App* c_oracle = app.add_subcommand("oracle", "closure oracle partition");
  add_common(c_oracle);
  c_oracle->add_option("-n", dim_n, "term dimension")->required();
  c_oracle->add_option("--size-bound", size_bound, "node-count bound");
  c_oracle->add_option("--lang", lang, "term language: c or m");

  CLI::App* c_morph = app.add_subcommand("morphism-apply", "apply an indet map to a cell");
  add_common(c_morph);
  c_morph->add_option("--target", target_path, "target presentation (defaults to -p)");
  c_morph->add_option("--map", map_flags, "indet image f=g (repeatable)");
  c_morph->add_option("--map-file", map_file, "file of `name -> name` lines");
  c_morph->add_option("cells", terms, "cell in canonical syntax")->required();

  CLI::App* c_export = app.add_subcommand("export", "structured export of a bounded view");
  add_common(c_export);
  c_export->add_option("-n", dim_n, "top dimension to export (defaults to all)");
  c_export->add_option("--max-indets", max_indets, "occurrence budget");

  CLI::App* c_verify = app.add_subcommand("verify", "run the invariant suite");
  add_common(c_verify);
  c_verify->add_option("--seed", seed, "random seed");

  CLI::App* c_help = app.add_subcommand("help", "show usage");
  const std::string usage = app.help();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(c_help)) {
      std::cout << usage;
      return kExitOk;
    }
    if (app.got_subcommand(c_check)) {
      Presentation p = load_presentation(pres_path);
      ValidationReport rep = validate_presentation(p);
      if (as_json) {
        json j;
        j["valid"] = rep.ok();
        json v = json::array();
        for (const Violation& viol : rep.violations)
          v.push_back({{"indet", viol.indet}, {"message", viol.message}});
        j["violations"] = std::move(v);
        std::cout << j.dump(2) << "\n";
      } else if (rep.ok()) {
        std::cout << "valid\n";
      } else {
        for (const Violation& viol : rep.violations)
          std::cout << viol.indet << ": " << viol.message << "\n";
      }
      return rep.ok() ? kExitOk : kExitNegative;
    }

    if (app.got_subcommand(c_eval)) {
      Presentation p = load_presentation(pres_path);
      json out = json::array();
      for (const std::string& t : gather_terms(terms)) {
        Cell c = eval_in(p, t, lang);
        if (as_json)
          out.push_back({{"term", t}, {"render", c.render()}, {"cell", cell_to_json(c)}});
        else
          std::cout << c.render() << "\n";
      }
      if (as_json) std::cout << out.dump(2) << "\n";
      return kExitOk;
    }

    if (app.got_subcommand(c_eq)) {
      Presentation p = load_presentation(pres_path);
      std::vector<std::string> ts = gather_terms(terms);
      if (ts.size() != 2) throw std::runtime_error("eq needs exactly two terms");
      bool equal = eval_in(p, ts[0], lang) == eval_in(p, ts[1], lang);
      if (as_json)
        std::cout << json{{"equal", equal}}.dump(2) << "\n";
      else
        std::cout << (equal ? "equal" : "not equal") << "\n";
      return equal ? kExitOk : kExitNegative;
    }

    if (app.got_subcommand(c_compose)) {
      Presentation p = load_presentation(pres_path);
      if (terms.size() != 2) throw std::runtime_error("compose needs exactly two cells");
      Cell u = parse_cell(terms[0], p);
      Cell v = parse_cell(terms[1], p);
      ComposeResult r = compose(p, u, comp_k, v);
      if (as_json) {
        json j;
        j["render"] = r.cell.render();
        j["cell"] = cell_to_json(r.cell);
        json left = json::array(), right = json::array();
        for (const auto& m : r.prov.left) left.push_back(m ? json(*m) : json(nullptr));
        for (std::size_t m : r.prov.right) right.push_back(m);
        j["provenance"] = {{"left", left}, {"right", right}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << r.cell.render() << "\n";
      }
      return kExitOk;
    }

    if (app.got_subcommand(c_boundary)) {
      Presentation p = load_presentation(pres_path);
      if (terms.size() != 1) throw std::runtime_error("boundary needs exactly one cell");
      Boundary b = boundary(p, parse_cell(terms[0], p));
      if (as_json)
        std::cout << json{{"domain", b.domain.render()}, {"codomain", b.codomain.render()}}.dump(2)
                  << "\n";
      else
        std::cout << "domain: " << b.domain.render() << "\ncodomain: " << b.codomain.render()
                  << "\n";
      return kExitOk;
    }

    if (app.got_subcommand(c_occ)) {
      Presentation p = load_presentation(pres_path);
      if (terms.size() != 1) throw std::runtime_error("occurrences needs exactly one cell");
      OccKind k = kind == "objects" ? OccKind::Objects : OccKind::Indets;
      if (kind != "objects" && kind != "indets")
        throw std::runtime_error("--kind must be objects or indets");
      std::vector<std::string> occ = occurrences(parse_cell(terms[0], p), k);
      if (as_json) {
        std::cout << json(occ).dump(2) << "\n";
      } else {
        for (std::size_t i = 0; i < occ.size(); ++i) std::cout << (i ? " " : "") << occ[i];
        std::cout << "\n";
      }
      return kExitOk;
    }

    if (app.got_subcommand(c_enum)) {
      Presentation p = load_presentation(pres_path);
      std::vector<Cell> cells =
          m21_only ? enumerate_pasting_diagrams(mlt_of_presentation(p), dim_n, max_indets)
                   : enumerate_cells(p, dim_n, max_indets);
      if (as_json) {
        json j = json::array();
        for (const Cell& c : cells) j.push_back(c.render());
        std::cout << j.dump(2) << "\n";
      } else {
        for (const Cell& c : cells) std::cout << c.render() << "\n";
      }
      return kExitOk;
    }

    if (app.got_subcommand(c_proof)) {
      Presentation p = load_presentation(pres_path);
      if (terms.size() != 1) throw std::runtime_error("check-proof needs one proof file");
      Proof pf = parse_proof(slurp(terms[0]), p);
      try {
        Equation eq = check_proof(p, pf);
        if (as_json)
          std::cout << json{{"valid", true}, {"equation", print_equation(eq)}}.dump(2) << "\n";
        else
          std::cout << print_equation(eq) << "\n";
        return kExitOk;
      } catch (const ProofError& e) {
        if (as_json)
          std::cout << json{{"valid", false}, {"error", e.what()}}.dump(2) << "\n";
        else
          std::cout << "invalid proof: " << e.what() << "\n";
        return kExitNegative;
      }
    }

    if (app.got_subcommand(c_oracle)) {
      Presentation p = load_presentation(pres_path);
      Lang l = lang == "m" ? Lang::M : Lang::C;
      OraclePartition part = closure_oracle(p, dim_n, size_bound, l);
      if (as_json) {
        json blocks = json::array();
        for (const auto& b : part.blocks) {
          json block = json::array();
          for (std::size_t m : b) block.push_back(part.printed[m]);
          blocks.push_back(std::move(block));
        }
        std::cout << json{{"terms", part.printed.size()}, {"blocks", blocks}}.dump(2) << "\n";
      } else {
        for (const auto& b : part.blocks) {
          for (std::size_t i = 0; i < b.size(); ++i)
            std::cout << (i ? "  =  " : "") << part.printed[b[i]];
          std::cout << "\n";
        }
      }
      return kExitOk;
    }

    if (app.got_subcommand(c_morph)) {
      Presentation p = load_presentation(pres_path);
      Presentation q = target_path.empty() ? p : load_presentation(target_path);
      std::vector<std::map<std::string, std::string>> images(p.top_dim() + 1);
      if (!map_file.empty()) images = parse_morphism_map(slurp(map_file), p);
      for (const std::string& flag : map_flags) {
        auto eq = flag.find('=');
        if (eq == std::string::npos) throw std::runtime_error("--map expects f=g");
        std::string from = flag.substr(0, eq), to = flag.substr(eq + 1);
        auto lvl = p.level_of(from);
        if (!lvl) throw std::runtime_error("unknown source indet " + from);
        images[*lvl][from] = to;
      }
      MltMorphism m =
          build_morphism(mlt_of_presentation(p), mlt_of_presentation(q), images);
      if (terms.size() != 1) throw std::runtime_error("morphism-apply needs one cell");
      Cell img = apply_morphism(m, parse_cell(terms[0], p));
      if (as_json)
        std::cout << json{{"render", img.render()}, {"cell", cell_to_json(img)}}.dump(2) << "\n";
      else
        std::cout << img.render() << "\n";
      return kExitOk;
    }

    if (app.got_subcommand(c_export)) {
      Presentation p = load_presentation(pres_path);
      int top = dim_n < 0 ? p.top_dim() : dim_n;
      json j;
      j["dims"] = top;
      json cells = json::object(), d = json::object(), c = json::object();
      for (int n = 0; n <= top; ++n) {
        json level = json::array(), dn = json::array(), cn = json::array();
        for (const Cell& u : enumerate_cells(p, n, max_indets)) {
          level.push_back({{"render", u.render()}, {"cell", cell_to_json(u)}});
          if (n >= 1) {
            Boundary b = boundary(p, u);
            dn.push_back({{"cell", u.render()}, {"to", b.domain.render()}});
            cn.push_back({{"cell", u.render()}, {"to", b.codomain.render()}});
          }
        }
        cells[std::to_string(n)] = std::move(level);
        if (n >= 1) {
          d[std::to_string(n)] = std::move(dn);
          c[std::to_string(n)] = std::move(cn);
        }
      }
      j["cells"] = std::move(cells);
      j["d"] = std::move(d);
      j["c"] = std::move(c);
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }

    if (app.got_subcommand(c_verify)) {
      Presentation p = load_presentation(pres_path);
      std::vector<CheckResult> results = run_invariant_suite(p, seed);
      bool all = true;
      for (const CheckResult& r : results) {
        all = all && r.pass;
        if (as_json) continue;
        std::cout << (r.pass ? "pass" : "FAIL") << "  " << r.name << "  (" << r.instances
                  << " instances)";
        if (!r.pass) std::cout << "  " << r.detail;
        std::cout << "\n";
      }
      if (as_json) {
        json j = json::array();
        for (const CheckResult& r : results)
          j.push_back({{"name", r.name},
                       {"pass", r.pass},
                       {"instances", r.instances},
                       {"detail", r.detail}});
        std::cout << j.dump(2) << "\n";
      }
      return all ? kExitOk : kExitNegative;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
