#include "mltc/presentation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mltc/term.hpp"

namespace mltc {

std::optional<int> Presentation::level_of(const std::string& indet) const {
  for (std::size_t n = 0; n < levels.size(); ++n) {
    if (n == 0) {
      const auto& order = levels[0].order;
      if (std::find(order.begin(), order.end(), indet) != order.end()) return 0;
    } else if (levels[n].decls.count(indet)) {
      return static_cast<int>(n);
    }
  }
  return std::nullopt;
}

const IndetDecl& Presentation::decl(const std::string& indet) const {
  for (std::size_t n = 1; n < levels.size(); ++n) {
    auto it = levels[n].decls.find(indet);
    if (it != levels[n].decls.end()) return it->second;
  }
  throw KernelError("no boundary data for indet: " + indet);
}

// ---------------------------------------------------------------------------
// parsing

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// "lhs -> name" or "lhs => name"; returns position of the separator
bool split_arrow(const std::string& s, std::string& lhs, std::string& rhs) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if ((s[i] == '-' || s[i] == '=') && s[i + 1] == '>') {
      lhs = trim(s.substr(0, i));
      rhs = trim(s.substr(i + 2));
      return true;
    }
  }
  return false;
}

void parse_entry_line(Presentation& p, int dim, const std::string& content, int lineno) {
  std::string body = trim(content);
  if (body.empty()) return;
  if (dim == 0) {
    std::istringstream in(body);
    std::string name;
    while (in >> name) {
      if (p.level_of(name)) throw ParseError("duplicate indet name: " + name, lineno, 1);
      p.levels[0].order.push_back(name);
    }
    return;
  }
  auto colon = body.find(':');
  if (colon == std::string::npos)
    throw ParseError("expected `name : domain -> codomain`", lineno, 1);
  std::string name = trim(body.substr(0, colon));
  if (name.empty()) throw ParseError("missing indet name", lineno, 1);
  if (p.level_of(name)) throw ParseError("duplicate indet name: " + name, lineno, 1);
  std::string lhs, rhs;
  if (!split_arrow(body.substr(colon + 1), lhs, rhs))
    throw ParseError("expected `->` or `=>` in declaration of " + name, lineno, 1);
  if (rhs.empty()) throw ParseError("missing codomain name for " + name, lineno, 1);
  auto cod_lvl = p.level_of(rhs);
  if (!cod_lvl)
    throw ParseError("unresolved codomain name `" + rhs + "` for " + name, lineno, 1);
  if (*cod_lvl != dim - 1)
    throw ParseError("codomain of " + name + " must be an indet of dimension " +
                         std::to_string(dim - 1),
                     lineno, 1);
  Cell dom;
  try {
    dom = eval_term_text(lhs, p, dim - 1);
  } catch (const std::exception& e) {
    throw ParseError("domain of " + name + ": " + e.what(), lineno, 1);
  }
  if (dom.dim() != dim - 1)
    throw ParseError("dimension mismatch in domain of " + name, lineno, 1);
  if (dim >= 2) {
    Cell cod_cell = indet_cell(p, rhs);
    Boundary bd = boundary(p, dom);
    Boundary bc = boundary(p, cod_cell);
    if (bd.domain != bc.domain || bd.codomain != bc.codomain)
      throw ParseError("parallelism violated in declaration of " + name + ": domain " +
                           dom.render() + " is not parallel to " + cod_cell.render(),
                       lineno, 1);
  }
  p.levels[dim].order.push_back(name);
  p.levels[dim].decls.emplace(name, IndetDecl{dom, rhs});
}

}  // namespace

Presentation parse_presentation(const std::string& text, const std::string& name) {
  Presentation p;
  p.name = name;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  int current = -1;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.rfind("dim", 0) == 0 &&
        (line.size() == 3 || line[3] == ' ' || line[3] == '\t')) {
      std::istringstream hd(line.substr(3));
      int d = -1;
      char colon = 0;
      if (!(hd >> d) || !(hd >> colon) || colon != ':' || d < 0)
        throw ParseError("malformed section header, expected `dim N:`", lineno, 1);
      if (d != static_cast<int>(p.levels.size()))
        throw ParseError("sections must appear in order of dimension", lineno, 1);
      p.levels.emplace_back();
      current = d;
      std::string rest;
      std::getline(hd, rest);
      parse_entry_line(p, current, rest, lineno);
      continue;
    }
    if (current < 0) throw ParseError("content before the first `dim N:` header", lineno, 1);
    parse_entry_line(p, current, line, lineno);
  }
  if (p.levels.empty()) throw ParseError("empty presentation", lineno, 1);
  return p;
}

// ---------------------------------------------------------------------------
// validation

ValidationReport validate_presentation(const Presentation& p) {
  ValidationReport rep;
  auto add = [&rep](const std::string& indet, const std::string& msg) {
    rep.violations.push_back({indet, msg});
  };
  std::set<std::string> seen;
  for (std::size_t n = 0; n < p.levels.size(); ++n) {
    const IndetTable& tbl = p.levels[n];
    for (const std::string& name : tbl.order)
      if (!seen.insert(name).second) add(name, "indet name declared more than once");
    if (n == 0) {
      if (!tbl.decls.empty()) add("", "dimension 0 entries must not carry boundary data");
      continue;
    }
    for (const std::string& name : tbl.order) {
      auto it = tbl.decls.find(name);
      if (it == tbl.decls.end()) {
        add(name, "missing boundary data");
        continue;
      }
      const IndetDecl& d = it->second;
      auto cod_lvl = p.level_of(d.codomain);
      if (!cod_lvl) {
        add(name, "codomain `" + d.codomain + "` is not a declared indet");
        continue;
      }
      if (*cod_lvl != static_cast<int>(n) - 1) {
        add(name, "codomain not an indet of dimension " + std::to_string(n - 1));
        continue;
      }
      Presentation below = truncate_presentation(p, static_cast<int>(n) - 1);
      try {
        validate_cell(below, d.domain);
      } catch (const KernelError& e) {
        add(name, std::string("invalid domain cell: ") + e.what());
        continue;
      }
      if (d.domain.dim() != static_cast<int>(n) - 1) {
        add(name, "domain cell has the wrong dimension");
        continue;
      }
      if (n >= 2) {
        Cell cod_cell = indet_cell(below, d.codomain);
        Boundary bd = boundary(below, d.domain);
        Boundary bc = boundary(below, cod_cell);
        if (bd.domain != bc.domain || bd.codomain != bc.codomain)
          add(name, "domain not parallel to codomain");
      }
    }
    for (const auto& [name, decl] : tbl.decls)
      if (std::find(tbl.order.begin(), tbl.order.end(), name) == tbl.order.end())
        add(name, "boundary data for an undeclared indet");
  }
  return rep;
}

Presentation truncate_presentation(const Presentation& p, int n) {
  if (n < 0 || n > p.top_dim())
    throw KernelError("truncation dimension out of range: " + std::to_string(n));
  Presentation out;
  out.name = p.name;
  out.levels.assign(p.levels.begin(), p.levels.begin() + n + 1);
  return out;
}

std::string print_presentation(const Presentation& p) {
  std::ostringstream out;
  for (std::size_t n = 0; n < p.levels.size(); ++n) {
    out << "dim " << n << ":";
    if (n == 0) {
      for (const std::string& name : p.levels[0].order) out << ' ' << name;
      out << '\n';
      continue;
    }
    out << '\n';
    for (const std::string& name : p.levels[n].order) {
      const IndetDecl& d = p.levels[n].decls.at(name);
      Presentation below = truncate_presentation(p, static_cast<int>(n) - 1);
      out << "  " << name << " : " << print_mterm(readback_m(below, d.domain)) << " -> "
          << d.codomain << '\n';
    }
  }
  return out.str();
}

}  // namespace mltc
