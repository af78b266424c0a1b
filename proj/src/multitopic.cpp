#include "mltc/multitopic.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace mltc {

MultitopicSet mlt_of_presentation(const Presentation& p) {
  ValidationReport rep = validate_presentation(p);
  if (!rep.ok())
    throw KernelError("invalid presentation: " + rep.violations.front().indet + ": " +
                      rep.violations.front().message);
  return MultitopicSet{p};
}

MultitopicSet truncate(const MultitopicSet& s, int n) {
  return MultitopicSet{truncate_presentation(s.base, n)};
}

Presentation computad_of_mlt(const MultitopicSet& s) {
  Presentation out;
  out.name = s.base.name;
  for (int n = 0; n <= s.top_dim(); ++n) {
    IndetTable tbl;
    tbl.order = s.indet_names(n);
    if (n >= 1) {
      for (const std::string& f : tbl.order) {
        Boundary b = boundary(s.base, indet_cell(s.base, f));
        if (!b.codomain.is_indet_default())
          throw KernelError("codomain of " + f + " is not an indet");
        tbl.decls.emplace(f, IndetDecl{b.domain, b.codomain.head_name()});
      }
    }
    out.levels.push_back(std::move(tbl));
  }
  return out;
}

// ---------------------------------------------------------------------------
// enumeration

namespace {

std::vector<Cell> sorted_cells(std::vector<Cell> cells) {
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    std::string ra = a.render(), rb = b.render();
    if (ra.size() != rb.size()) return ra.size() < rb.size();
    return ra < rb;
  });
  return cells;
}

std::vector<Cell> close_under_multicomposition(const Presentation& p, std::vector<Cell> seeds,
                                               int max_indets) {
  std::unordered_set<Cell, CellHash> seen(seeds.begin(), seeds.end());
  std::vector<Cell> work(seen.begin(), seen.end());
  while (!work.empty()) {
    std::vector<Cell> snapshot(seen.begin(), seen.end());
    std::vector<Cell> next;
    for (const Cell& u : snapshot) {
      std::size_t nu = occurrences(u, OccKind::Indets).size();
      std::vector<std::string> slots = occurrences(u, OccKind::Objects);
      for (const Cell& v : snapshot) {
        if (v.is_obj_id()) continue;  // identity composition is a no-op
        auto t = target_object(p, v);
        if (!t) continue;
        std::size_t nv = occurrences(v, OccKind::Indets).size();
        if (nu + nv > static_cast<std::size_t>(max_indets)) continue;
        for (std::size_t r = 0; r < slots.size(); ++r) {
          if (slots[r] != *t) continue;
          Cell c = multicompose(p, u, r, v).cell;
          if (seen.insert(c).second) next.push_back(c);
        }
      }
    }
    work = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

std::vector<Cell> enumerate_cells(const Presentation& p, int n, int max_indets) {
  if (n < 0 || n > p.top_dim()) throw KernelError("enumeration dimension out of range");
  if (n == 0) {
    std::vector<Cell> out;
    for (const std::string& x : p.levels[0].order) out.push_back(Cell::name(x));
    return sorted_cells(std::move(out));
  }
  std::vector<Cell> seeds;
  for (const Cell& w : enumerate_cells(p, n - 1, max_indets)) seeds.push_back(identity_over(w));
  for (const std::string& f : p.levels[n].order) seeds.push_back(indet_cell(p, f));
  std::vector<Cell> bounded;
  for (Cell& c : seeds)
    if (occurrences(c, OccKind::Indets).size() <= static_cast<std::size_t>(max_indets))
      bounded.push_back(std::move(c));
  return sorted_cells(close_under_multicomposition(p, std::move(bounded), max_indets));
}

std::vector<Cell> enumerate_pasting_diagrams(const MultitopicSet& s, int n, int max_indets) {
  if (n < 0 || n > s.top_dim()) throw KernelError("enumeration dimension out of range");
  if (n == 0) return enumerate_cells(s.base, 0, max_indets);
  std::vector<Cell> seeds;
  for (const std::string& x : s.indet_names(n - 1))
    seeds.push_back(Cell::obj_id(x, n));
  for (const std::string& f : s.indet_names(n)) seeds.push_back(indet_cell(s.base, f));
  std::vector<Cell> bounded;
  for (Cell& c : seeds)
    if (occurrences(c, OccKind::Indets).size() <= static_cast<std::size_t>(max_indets))
      bounded.push_back(std::move(c));
  return sorted_cells(close_under_multicomposition(s.base, std::move(bounded), max_indets));
}

// ---------------------------------------------------------------------------
// law checking

LawReport check_multitopic_laws(const MultitopicSet& s, int n, int bound,
                                const BoundaryFn& boundary_fn) {
  const Presentation& p = s.base;
  BoundaryFn bfn = boundary_fn;
  if (!bfn) bfn = [](const Presentation& pp, const Cell& u) { return boundary(pp, u); };
  LawReport rep;
  auto fail = [&rep](const std::string& msg) { rep.violations.push_back(msg); };
  if (n < 1 || n > s.top_dim()) return rep;

  std::vector<Cell> cells = enumerate_pasting_diagrams(s, n, bound);

  // identity boundaries
  for (const std::string& x : s.indet_names(n - 1)) {
    Cell id = Cell::obj_id(x, n);
    Boundary b = bfn(p, id);
    Cell xc = indet_cell(p, x);
    ++rep.instances;
    if (b.domain != xc || b.codomain != xc)
      fail("boundary of the identity over " + x + " is not " + xc.render());
  }

  for (const Cell& u : cells) {
    Boundary b = bfn(p, u);
    ++rep.instances;
    // source bookkeeping: Su = <du>, Tu = cu
    if (occurrences(u, OccKind::Objects) != occurrences(b.domain, OccKind::Indets))
      fail("source of " + u.render() + " differs from the occurrences of its domain");
    auto t = target_object(p, u);
    if (!t || indet_cell(p, *t) != b.codomain)
      fail("target of " + u.render() + " differs from its codomain");
    // globularity
    if (n >= 2) {
      Boundary bd = bfn(p, b.domain);
      Boundary bc = bfn(p, b.codomain);
      if (bd.domain != bc.domain) fail("dd != dc for " + u.render());
      if (bd.codomain != bc.codomain) fail("cd != cc for " + u.render());
    }
  }

  // boundary of multicompositions
  for (const Cell& u : cells) {
    Boundary bu = bfn(p, u);
    std::vector<std::string> slots = occurrences(u, OccKind::Objects);
    for (const Cell& v : cells) {
      auto t = target_object(p, v);
      if (!t) continue;
      for (std::size_t r = 0; r < slots.size(); ++r) {
        if (slots[r] != *t) continue;
        Cell c = multicompose(p, u, r, v).cell;
        Boundary bc = bfn(p, c);
        Boundary bv = bfn(p, v);
        ++rep.instances;
        if (bc.domain != replace(p, bu.domain, r, bv.domain))
          fail("domain of " + c.render() + " is not the replacement of domains");
        if (bc.codomain != bu.codomain)
          fail("codomain of " + c.render() + " differs from the codomain of " + u.render());
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// morphisms

namespace {

std::string image_of(const MltMorphism& m, int dim, const std::string& name) {
  if (dim < 0 || dim >= static_cast<int>(m.indet_images.size()))
    throw KernelError("morphism has no images at dimension " + std::to_string(dim));
  auto it = m.indet_images[dim].find(name);
  if (it == m.indet_images[dim].end())
    throw KernelError("morphism has no image for " + name);
  return it->second;
}

}  // namespace

Cell apply_morphism(const MltMorphism& m, const Cell& u) {
  switch (u.kind()) {
    case Cell::Kind::Name:
      return Cell::name(image_of(m, 0, u.head_name()));
    case Cell::Kind::ObjId:
      return Cell::obj_id(image_of(m, u.dim() - 1, u.head_name()), u.dim());
    case Cell::Kind::App: {
      if (u.head_is_predet())
        throw KernelError("morphisms act on many-to-one cells only: " + u.render());
      std::vector<Cell> args;
      args.reserve(u.args().size());
      for (const Cell& a : u.args()) args.push_back(apply_morphism(m, a));
      return Cell::app_indet(image_of(m, u.dim(), u.head_name()), u.dim(), std::move(args));
    }
  }
  throw KernelError("unreachable");
}

MltMorphism build_morphism(const MultitopicSet& source, const MultitopicSet& target,
                           const std::vector<std::map<std::string, std::string>>& indet_images) {
  if (source.top_dim() > target.top_dim())
    throw KernelError("morphism source exceeds the target's top dimension");
  MltMorphism m{source, target, indet_images};
  if (static_cast<int>(indet_images.size()) != source.top_dim() + 1)
    throw KernelError("morphism needs one image map per source dimension");
  for (int n = 0; n <= source.top_dim(); ++n) {
    for (const std::string& f : source.indet_names(n)) {
      std::string g = image_of(m, n, f);
      auto lvl = target.base.level_of(g);
      if (!lvl || *lvl != n)
        throw KernelError("image of " + f + " is not an indet of dimension " + std::to_string(n));
      if (n == 0) continue;
      const IndetDecl& fd = source.base.decl(f);
      const IndetDecl& gd = target.base.decl(g);
      if (image_of(m, n - 1, fd.codomain) != gd.codomain)
        throw KernelError("boundary condition fails at " + f + ": codomain image mismatch");
      if (apply_morphism(m, fd.domain) != gd.domain)
        throw KernelError("boundary condition fails at " + f + ": domain image mismatch");
    }
  }
  return m;
}

MltMorphism identity_morphism(const MultitopicSet& s) {
  std::vector<std::map<std::string, std::string>> images(s.top_dim() + 1);
  for (int n = 0; n <= s.top_dim(); ++n)
    for (const std::string& f : s.indet_names(n)) images[n][f] = f;
  return build_morphism(s, s, images);
}

MltMorphism compose_morphisms(const MltMorphism& g, const MltMorphism& f) {
  std::vector<std::map<std::string, std::string>> images(f.source.top_dim() + 1);
  for (int n = 0; n <= f.source.top_dim(); ++n)
    for (const auto& [a, b] : f.indet_images[n]) images[n][a] = image_of(g, n, b);
  return build_morphism(f.source, g.target, images);
}

std::vector<std::map<std::string, std::string>> parse_morphism_map(
    const std::string& text, const Presentation& source) {
  std::vector<std::map<std::string, std::string>> images(source.top_dim() + 1);
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::istringstream ls(raw);
    std::string from, arrow, to;
    if (!(ls >> from)) continue;
    if (!(ls >> arrow >> to) || (arrow != "->" && arrow != "=>"))
      throw ParseError("expected `name -> name`", lineno, 1);
    auto lvl = source.level_of(from);
    if (!lvl) throw ParseError("unknown source indet `" + from + "`", lineno, 1);
    images[*lvl][from] = to;
  }
  return images;
}

}  // namespace mltc
