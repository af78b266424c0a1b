#include "mltc/cell.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

#include "mltc/presentation.hpp"

namespace mltc {

// ---------------------------------------------------------------------------
// construction and accessors

Cell Cell::name(std::string n) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::Name;
  rep->dim = 0;
  rep->name = std::move(n);
  return Cell(std::move(rep));
}

Cell Cell::obj_id(std::string n, int dim) {
  if (dim < 1) throw KernelError("identity arrow needs positive dimension");
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::ObjId;
  rep->dim = dim;
  rep->name = std::move(n);
  return Cell(std::move(rep));
}

Cell Cell::app_indet(std::string head, int dim, std::vector<Cell> args) {
  if (dim < 1) throw KernelError("indet application needs positive dimension");
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::App;
  rep->dim = dim;
  rep->name = std::move(head);
  rep->args = std::move(args);
  return Cell(std::move(rep));
}

Cell Cell::app_predet(Cell payload, std::vector<Cell> args) {
  if (payload.is_indet_default())
    throw KernelError("predet payload must not be an indet default cell: " + payload.render());
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::App;
  rep->dim = payload.dim() + 1;
  rep->payload = std::move(payload);
  rep->args = std::move(args);
  return Cell(std::move(rep));
}

Cell::Kind Cell::kind() const { return rep_->kind; }
int Cell::dim() const { return rep_->dim; }
bool Cell::head_is_predet() const { return rep_->payload.has_value(); }

const std::string& Cell::head_name() const {
  if (head_is_predet()) throw KernelError("predet head has no name");
  return rep_->name;
}

const Cell& Cell::predet_payload() const {
  if (!head_is_predet()) throw KernelError("not a predet application");
  return *rep_->payload;
}

const std::vector<Cell>& Cell::args() const { return rep_->args; }

bool Cell::is_indet_default() const {
  switch (kind()) {
    case Kind::Name:
      return true;
    case Kind::ObjId:
      return false;
    case Kind::App:
      if (head_is_predet()) return false;
      for (const Cell& a : rep_->args)
        if (!a.is_obj_id()) return false;
      return true;
  }
  return false;
}

bool Cell::is_identity_cell() const {
  switch (kind()) {
    case Kind::Name:
      return false;
    case Kind::ObjId:
      return true;
    case Kind::App:
      if (!head_is_predet()) return false;
      for (const Cell& a : rep_->args)
        if (!a.is_obj_id()) return false;
      return true;
  }
  return false;
}

std::string Cell::render() const {
  std::ostringstream out;
  std::function<void(const Cell&)> go = [&](const Cell& c) {
    switch (c.kind()) {
      case Kind::Name:
        out << c.rep_->name;
        return;
      case Kind::ObjId:
        out << '#' << c.rep_->name;
        return;
      case Kind::App:
        if (c.head_is_predet()) {
          out << "e{";
          go(c.predet_payload());
          out << '}';
        } else {
          out << c.rep_->name;
        }
        out << '(';
        for (std::size_t i = 0; i < c.args().size(); ++i) {
          if (i) out << ", ";
          go(c.args()[i]);
        }
        out << ')';
        return;
    }
  };
  go(*this);
  return out.str();
}

bool Cell::operator==(const Cell& o) const {
  if (rep_ == o.rep_) return true;
  if (!rep_ || !o.rep_) return false;
  if (rep_->kind != o.rep_->kind || rep_->dim != o.rep_->dim) return false;
  if (rep_->payload.has_value() != o.rep_->payload.has_value()) return false;
  if (rep_->payload) {
    if (!(*rep_->payload == *o.rep_->payload)) return false;
  } else {
    if (rep_->name != o.rep_->name) return false;
  }
  if (rep_->args.size() != o.rep_->args.size()) return false;
  for (std::size_t i = 0; i < rep_->args.size(); ++i)
    if (!(rep_->args[i] == o.rep_->args[i])) return false;
  return true;
}

std::size_t Cell::hash() const {
  std::size_t h = std::hash<int>()(rep_->dim) * 31 + static_cast<std::size_t>(rep_->kind);
  auto mix = [&h](std::size_t v) { h = h * 1000003u ^ v; };
  if (rep_->payload)
    mix(rep_->payload->hash());
  else
    mix(std::hash<std::string>()(rep_->name));
  for (const Cell& a : rep_->args) mix(a.hash());
  return h;
}

// ---------------------------------------------------------------------------
// helpers over the Polish rendering

std::optional<std::string> target_object(const Presentation& p, const Cell& u) {
  switch (u.kind()) {
    case Cell::Kind::Name:
    case Cell::Kind::ObjId:
      return u.head_name();
    case Cell::Kind::App:
      if (u.head_is_predet()) return std::nullopt;
      return p.decl(u.head_name()).codomain;
  }
  return std::nullopt;
}

namespace {

struct Symbol {
  bool is_slot = false;    // ObjId leaf (object occurrence)
  bool is_indet = false;   // indet head occurrence
  std::string name;
};

void scan(const Cell& u, std::vector<Symbol>& out) {
  switch (u.kind()) {
    case Cell::Kind::Name:
      return;
    case Cell::Kind::ObjId:
      out.push_back({true, false, u.head_name()});
      return;
    case Cell::Kind::App:
      if (!u.head_is_predet()) out.push_back({false, true, u.head_name()});
      for (const Cell& a : u.args()) scan(a, out);
      return;
  }
}

std::vector<Symbol> symbols(const Cell& u) {
  std::vector<Symbol> out;
  scan(u, out);
  return out;
}

std::size_t count_indets(const Cell& u) {
  if (u.is_name() || u.is_obj_id()) return 0;
  std::size_t n = u.head_is_predet() ? 0 : 1;
  for (const Cell& a : u.args()) n += count_indets(a);
  return n;
}

std::size_t count_slots(const Cell& u) {
  if (u.is_name()) return 0;
  if (u.is_obj_id()) return 1;
  std::size_t n = 0;
  for (const Cell& a : u.args()) n += count_slots(a);
  return n;
}

// number of indet occurrences strictly before the r-th object slot
std::size_t indets_before_slot(const Cell& u, std::size_t r) {
  std::size_t slots = 0, indets = 0;
  for (const Symbol& s : symbols(u)) {
    if (s.is_slot) {
      if (slots == r) return indets;
      ++slots;
    } else if (s.is_indet) {
      ++indets;
    }
  }
  throw KernelError("object position out of range");
}

// replace the r-th ObjId leaf of u by v, rebuilding the path
Cell splice_slot(const Cell& u, std::size_t r, const Cell& v) {
  std::size_t counter = 0;
  std::function<Cell(const Cell&)> go = [&](const Cell& c) -> Cell {
    switch (c.kind()) {
      case Cell::Kind::Name:
        return c;
      case Cell::Kind::ObjId:
        return counter++ == r ? v : c;
      case Cell::Kind::App: {
        if (counter > r) return c;  // already spliced to the left
        std::vector<Cell> args;
        args.reserve(c.args().size());
        for (const Cell& a : c.args()) args.push_back(go(a));
        return c.head_is_predet() ? Cell::app_predet(c.predet_payload(), std::move(args))
                                  : Cell::app_indet(c.head_name(), c.dim(), std::move(args));
      }
    }
    return c;
  };
  Cell out = go(u);
  if (counter <= r) throw KernelError("object position out of range");
  return out;
}

// simultaneous substitution of every object slot of u, slot i <- vs[i]
Cell subst_slots(const Cell& u, const std::vector<Cell>& vs) {
  std::size_t counter = 0;
  std::function<Cell(const Cell&)> go = [&](const Cell& c) -> Cell {
    switch (c.kind()) {
      case Cell::Kind::Name:
        return c;
      case Cell::Kind::ObjId:
        return vs.at(counter++);
      case Cell::Kind::App: {
        std::vector<Cell> args;
        args.reserve(c.args().size());
        for (const Cell& a : c.args()) args.push_back(go(a));
        return c.head_is_predet() ? Cell::app_predet(c.predet_payload(), std::move(args))
                                  : Cell::app_indet(c.head_name(), c.dim(), std::move(args));
      }
    }
    return c;
  };
  Cell out = go(u);
  if (counter != vs.size()) throw KernelError("slot count mismatch in substitution");
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// occurrences

std::vector<std::string> occurrences(const Cell& u, OccKind kind) {
  if (u.is_name()) return {u.head_name()};  // singleton, both kinds
  std::vector<std::string> out;
  for (const Symbol& s : symbols(u)) {
    if (kind == OccKind::Objects && s.is_slot) out.push_back(s.name);
    if (kind == OccKind::Indets && s.is_indet) out.push_back(s.name);
  }
  return out;
}

// ---------------------------------------------------------------------------
// indet cells and identities

Cell indet_cell(const Presentation& p, const std::string& name) {
  auto lvl = p.level_of(name);
  if (!lvl) throw KernelError("unknown indet: " + name);
  if (*lvl == 0) return Cell::name(name);
  const IndetDecl& d = p.decl(name);
  std::vector<Cell> args;
  for (const std::string& x : occurrences(d.domain, OccKind::Indets))
    args.push_back(Cell::obj_id(x, *lvl));
  return Cell::app_indet(name, *lvl, std::move(args));
}

Cell identity_over(const Cell& w) {
  if (w.is_name()) return Cell::obj_id(w.head_name(), 1);
  if (w.is_indet_default()) return Cell::obj_id(w.head_name(), w.dim() + 1);
  std::vector<Cell> args;
  for (const std::string& x : occurrences(w, OccKind::Indets))
    args.push_back(Cell::obj_id(x, w.dim() + 1));
  return Cell::app_predet(w, std::move(args));
}

Cell iterated_identity(const Cell& w, int m) {
  if (m < w.dim()) throw KernelError("iterated identity target below cell dimension");
  Cell out = w;
  for (int i = w.dim(); i < m; ++i) out = identity_over(out);
  return out;
}

// ---------------------------------------------------------------------------
// boundaries

Boundary boundary(const Presentation& p, const Cell& u) {
  switch (u.kind()) {
    case Cell::Kind::Name:
      throw KernelError("0-cells have no boundary");
    case Cell::Kind::ObjId: {
      Cell c = indet_cell(p, u.head_name());
      return {c, c};
    }
    case Cell::Kind::App: {
      Cell head_dom = u.head_is_predet() ? u.predet_payload() : p.decl(u.head_name()).domain;
      Cell head_cod = u.head_is_predet()
                          ? u.predet_payload()
                          : indet_cell(p, p.decl(u.head_name()).codomain);
      // simultaneous replacement of the head domain's indet occurrences,
      // right to left so earlier positions stay put
      Cell dom = head_dom;
      const auto& args = u.args();
      for (std::size_t i = args.size(); i-- > 0;) {
        const Cell& a = args[i];
        Cell ad = a.is_obj_id() ? indet_cell(p, a.head_name()) : boundary(p, a).domain;
        dom = replace(p, dom, i, ad);
      }
      return {dom, head_cod};
    }
  }
  throw KernelError("unreachable");
}

Cell iterated_boundary(const Presentation& p, const Cell& u, int k, BoundarySide side) {
  if (k >= u.dim()) throw KernelError("iterated boundary dimension out of range");
  Cell out = u;
  for (int d = u.dim(); d > k; --d) {
    Boundary b = boundary(p, out);
    out = side == BoundarySide::Domain ? b.domain : b.codomain;
  }
  return out;
}

// ---------------------------------------------------------------------------
// multicomposition

ComposeResult multicompose(const Presentation& p, const Cell& u, std::size_t r, const Cell& v) {
  if (u.dim() < 1 || u.dim() != v.dim())
    throw KernelError("multicomposition needs equal positive dimensions");
  std::vector<std::string> slots = occurrences(u, OccKind::Objects);
  if (r >= slots.size()) throw KernelError("object position out of range");
  std::optional<std::string> tv = target_object(p, v);
  if (!tv) throw KernelError("multicomposed cell must be many-to-one: " + v.render());
  if (*tv != slots[r])
    throw KernelError("target mismatch: slot " + std::to_string(r) + " holds " + slots[r] +
                      ", cell targets " + *tv);
  ComposeResult out;
  out.cell = splice_slot(u, r, v);
  std::size_t nu = slots.size(), nv = count_slots(v);
  out.prov.left.resize(nu);
  for (std::size_t i = 0; i < nu; ++i) {
    if (i < r)
      out.prov.left[i] = i;
    else if (i > r)
      out.prov.left[i] = i - 1 + nv;
  }
  out.prov.right.resize(nv);
  for (std::size_t j = 0; j < nv; ++j) out.prov.right[j] = r + j;
  return out;
}

// ---------------------------------------------------------------------------
// replacement

Cell replace(const Presentation& p, const Cell& u, std::size_t r, const Cell& v) {
  if (u.is_name()) {
    if (r != 0) throw KernelError("occurrence position out of range");
    return v;  // constant-to-v at dimension 0
  }
  if (u.dim() != v.dim()) throw KernelError("replacement needs equal dimensions");
  std::vector<std::string> occ = occurrences(u, OccKind::Indets);
  if (r >= occ.size()) throw KernelError("occurrence position out of range");
  const std::string& f = occ[r];
  // parallelism: source sequence and codomain of v match those of f
  Cell fcell = indet_cell(p, f);
  if (occurrences(v, OccKind::Objects) != occurrences(fcell, OccKind::Objects))
    throw KernelError("replacement not parallel to occurrence " + f + ": source mismatch");
  {
    auto tf = target_object(p, fcell);
    auto tv = target_object(p, v);
    if (!tv || *tv != *tf)
      throw KernelError("replacement not parallel to occurrence " + f + ": target mismatch");
  }

  std::function<Cell(const Cell&, std::size_t)> go = [&](const Cell& c, std::size_t rr) -> Cell {
    if (!c.is_app()) throw KernelError("occurrence position out of range");
    std::size_t base = c.head_is_predet() ? 0 : 1;
    if (!c.head_is_predet() && rr == 0) return subst_slots(v, c.args());
    std::size_t pos = rr - base;
    std::vector<Cell> args = c.args();
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::size_t n = count_indets(args[i]);
      if (pos < n) {
        args[i] = go(args[i], pos);
        return c.head_is_predet() ? Cell::app_predet(c.predet_payload(), std::move(args))
                                  : Cell::app_indet(c.head_name(), c.dim(), std::move(args));
      }
      pos -= n;
    }
    throw KernelError("occurrence position out of range");
  };
  return go(u, r);
}

ProvenancePair replace_occurrences(const Presentation& p, const Cell& u, std::size_t r,
                                   const Cell& v) {
  ProvenancePair out;
  if (u.is_name()) {
    if (r != 0) throw KernelError("occurrence position out of range");
    out.left = {std::nullopt};
    out.right = {0};
    return out;
  }
  (void)p;
  out.left.assign(count_indets(u), std::nullopt);
  out.right.assign(count_indets(v), 0);
  std::size_t seen = 0, vseen = 0, pos = 0;
  bool found = false;

  std::function<void(const Cell&)> walk_u = [&](const Cell& c) {
    if (!c.is_app()) return;
    if (!c.head_is_predet()) {
      std::size_t idx = seen++;
      if (idx == r) {
        // v's string with its slots occupied by this head's arguments
        found = true;
        std::size_t slot = 0;
        std::function<void(const Cell&)> walk_v = [&](const Cell& d) {
          if (d.is_obj_id()) {
            walk_u(c.args().at(slot++));
            return;
          }
          if (!d.is_app()) return;
          if (!d.head_is_predet()) out.right[vseen++] = pos++;
          for (const Cell& a : d.args()) walk_v(a);
        };
        walk_v(v);
        return;
      }
      out.left[idx] = pos++;
    }
    for (const Cell& a : c.args()) walk_u(a);
  };
  walk_u(u);
  if (!found) throw KernelError("occurrence position out of range");
  return out;
}

// ---------------------------------------------------------------------------
// whiskering and placed composition

Cell whisker(const Presentation& p, const Cell& w, std::size_t r, const Cell& v) {
  if (v.dim() != w.dim() + 1) throw KernelError("whiskering needs a cell one dimension up");
  return multicompose(p, identity_over(w), r, v).cell;
}

Cell placed_compose(const Presentation& p, const Cell& u, std::size_t r, const Cell& v) {
  return multicompose(p, u, r, v).cell;
}

// ---------------------------------------------------------------------------
// omega-categorical composition

namespace {

struct CompProv {
  std::vector<std::size_t> left, right;  // total maps on indet occurrences
};

struct CompRes {
  Cell cell;
  CompProv prov;
};

// indet occurrence maps of a splice at object position r
CompProv splice_indet_maps(const Cell& u, std::size_t r, const Cell& v) {
  CompProv pr;
  std::size_t b = indets_before_slot(u, r);
  std::size_t nu = count_indets(u), nv = count_indets(v);
  pr.left.resize(nu);
  for (std::size_t i = 0; i < nu; ++i) pr.left[i] = i < b ? i : i + nv;
  pr.right.resize(nv);
  for (std::size_t j = 0; j < nv; ++j) pr.right[j] = b + j;
  return pr;
}

// indet occurrence maps of the simultaneous slot substitution u[slots <- vs]
CompProv subst_indet_maps(const Cell& u, const std::vector<Cell>& vs) {
  CompProv pr;
  std::vector<std::size_t> block(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) block[i] = count_indets(vs[i]);
  std::size_t slot = 0, out_pos = 0;
  std::vector<std::size_t> block_start(vs.size());
  for (const Symbol& s : symbols(u)) {
    if (s.is_indet) {
      pr.left.push_back(out_pos++);
    } else if (s.is_slot) {
      block_start[slot] = out_pos;
      out_pos += block[slot];
      ++slot;
    }
  }
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < block[i]; ++j) pr.right.push_back(block_start[i] + j);
  return pr;
}

bool has_app_arg(const Cell& u) {
  if (!u.is_app()) return false;
  for (const Cell& a : u.args())
    if (a.is_app()) return true;
  return false;
}

Cell rebuild_with_default(const Presentation& p, const Cell& u, std::size_t j) {
  std::vector<Cell> args = u.args();
  auto t = target_object(p, args[j]);
  if (!t) throw KernelError("argument is not many-to-one");
  args[j] = Cell::obj_id(*t, u.dim());
  return u.head_is_predet() ? Cell::app_predet(u.predet_payload(), std::move(args))
                            : Cell::app_indet(u.head_name(), u.dim(), std::move(args));
}

std::size_t first_app_index(const Cell& u) {
  const auto& args = u.args();
  for (std::size_t j = 0; j < args.size(); ++j)
    if (args[j].is_app()) return j;
  throw KernelError("cell has no compound argument");
}

// payload of an identity cell: the cell it is the identity over
Cell identity_payload(const Presentation& p, const Cell& u) {
  if (u.is_obj_id()) return indet_cell(p, u.head_name());
  if (u.is_app() && u.head_is_predet() && u.is_identity_cell()) return u.predet_payload();
  throw KernelError("not an identity cell: " + u.render());
}

CompRes compose_impl(const Presentation& p, const Cell& u, int k, const Cell& v);

// k = dim - 1: substitution along the domain
CompRes compose_top(const Presentation& p, const Cell& u, const Cell& v) {
  Cell du = boundary(p, u).domain;
  CompRes out;
  if (du.is_indet_default()) {
    // single object slot
    auto mc = multicompose(p, u, 0, v);
    out.cell = mc.cell;
    out.prov = splice_indet_maps(u, 0, v);
    return out;
  }
  if (!(v.is_app() && v.head_is_predet() && v.predet_payload() == du))
    throw KernelError("composite undefined: domain/codomain mismatch");
  out.cell = subst_slots(u, v.args());
  out.prov = subst_indet_maps(u, v.args());
  return out;
}

// k < dim - 1: structural recursion, left layers first
CompRes compose_deep(const Presentation& p, const Cell& u, int k, const Cell& v) {
  const int m = u.dim();
  CompRes out;
  if (has_app_arg(u)) {
    std::size_t j = first_app_index(u);
    Cell u2 = u.args()[j];
    Cell u1 = rebuild_with_default(p, u, j);
    std::size_t r = 0, b = u.head_is_predet() ? 0 : 1;
    for (std::size_t i = 0; i < j; ++i) {
      r += count_slots(u.args()[i]);
      b += count_indets(u.args()[i]);
    }
    CompRes inner = compose_impl(p, u1, k, v);
    CompRes dcr = compose_impl(p, boundary(p, u1).domain, k, boundary(p, v).domain);
    std::size_t rr = dcr.prov.left.at(r);
    Cell spliced = multicompose(p, inner.cell, rr, u2).cell;
    CompProv spl = splice_indet_maps(inner.cell, rr, u2);
    out.cell = spliced;
    std::size_t n2 = count_indets(u2), nu = count_indets(u);
    out.prov.left.resize(nu);
    for (std::size_t i = 0; i < nu; ++i) {
      if (i < b)
        out.prov.left[i] = spl.left.at(inner.prov.left.at(i));
      else if (i < b + n2)
        out.prov.left[i] = spl.right.at(i - b);
      else
        out.prov.left[i] = spl.left.at(inner.prov.left.at(i - n2));
    }
    out.prov.right.resize(count_indets(v));
    for (std::size_t jv = 0; jv < out.prov.right.size(); ++jv)
      out.prov.right[jv] = spl.left.at(inner.prov.right.at(jv));
    return out;
  }
  if (u.is_app() && !u.head_is_predet() && u.is_indet_default()) {
    // f *_k v  =  (1_x *_k v) (.)_r f, x the codomain of f
    std::string x = p.decl(u.head_name()).codomain;
    Cell eps = Cell::obj_id(x, m);
    CompRes inner = compose_impl(p, eps, k, v);
    CompRes dcr = compose_impl(p, indet_cell(p, x), k, boundary(p, v).domain);
    std::size_t rr = dcr.prov.left.at(0);
    CompProv spl = splice_indet_maps(inner.cell, rr, u);
    out.cell = multicompose(p, inner.cell, rr, u).cell;
    out.prov.left = {spl.right.at(0)};
    out.prov.right.resize(count_indets(v));
    for (std::size_t jv = 0; jv < out.prov.right.size(); ++jv)
      out.prov.right[jv] = spl.left.at(inner.prov.right.at(jv));
    return out;
  }
  // u is an identity; recurse on v
  Cell w = identity_payload(p, u);
  if (has_app_arg(v)) {
    std::size_t j = first_app_index(v);
    Cell v2 = v.args()[j];
    Cell v1 = rebuild_with_default(p, v, j);
    std::size_t r = 0, b = v.head_is_predet() ? 0 : 1;
    for (std::size_t i = 0; i < j; ++i) {
      r += count_slots(v.args()[i]);
      b += count_indets(v.args()[i]);
    }
    CompRes inner = compose_impl(p, u, k, v1);
    CompRes dcr = compose_impl(p, w, k, boundary(p, v1).domain);
    std::size_t rr = dcr.prov.right.at(r);
    CompProv spl = splice_indet_maps(inner.cell, rr, v2);
    out.cell = multicompose(p, inner.cell, rr, v2).cell;
    out.prov.left.clear();  // identities carry no occurrences
    std::size_t n2 = count_indets(v2), nv = count_indets(v);
    out.prov.right.resize(nv);
    for (std::size_t i = 0; i < nv; ++i) {
      if (i < b)
        out.prov.right[i] = spl.left.at(inner.prov.right.at(i));
      else if (i < b + n2)
        out.prov.right[i] = spl.right.at(i - b);
      else
        out.prov.right[i] = spl.left.at(inner.prov.right.at(i - n2));
    }
    return out;
  }
  if (v.is_app() && !v.head_is_predet() && v.is_indet_default()) {
    // 1_w *_k g  =  1_{w *_k x} (.)_r g, x the codomain of g
    std::string x = p.decl(v.head_name()).codomain;
    CompRes dcr = compose_impl(p, w, k, indet_cell(p, x));
    Cell base = identity_over(dcr.cell);
    std::size_t rr = dcr.prov.right.at(0);
    CompProv spl = splice_indet_maps(base, rr, v);
    out.cell = multicompose(p, base, rr, v).cell;
    out.prov.left.clear();
    out.prov.right = {spl.right.at(0)};
    return out;
  }
  // both identities: compose the payloads one dimension down
  Cell w2 = identity_payload(p, v);
  CompRes dcr = compose_impl(p, w, k, w2);
  out.cell = identity_over(dcr.cell);
  out.prov.left.clear();
  out.prov.right.clear();
  return out;
}

CompRes compose_impl(const Presentation& p, const Cell& u, int k, const Cell& v) {
  if (u.dim() != v.dim()) throw KernelError("internal: unequal dimensions in composition");
  if (u.dim() == 0) throw KernelError("internal: composition of 0-cells");
  if (k == u.dim() - 1) return compose_top(p, u, v);
  return compose_deep(p, u, k, v);
}

}  // namespace

ComposeResult compose(const Presentation& p, const Cell& u, int k, const Cell& v) {
  int m = std::max(u.dim(), v.dim());
  if (k < 0 || k >= m) throw KernelError("composition dimension out of range");
  Cell uu = iterated_identity(u, m);
  Cell vv = iterated_identity(v, m);
  Cell lhs = iterated_boundary(p, uu, k, BoundarySide::Domain);
  Cell rhs = iterated_boundary(p, vv, k, BoundarySide::Codomain);
  if (lhs != rhs)
    throw KernelError("composite undefined: boundary mismatch at dimension " + std::to_string(k) +
                      " (" + lhs.render() + " vs " + rhs.render() + ")");
  CompRes res = compose_impl(p, uu, k, vv);
  ComposeResult out;
  out.cell = res.cell;
  out.prov.left.assign(res.prov.left.begin(), res.prov.left.end());
  out.prov.right = res.prov.right;
  return out;
}

// ---------------------------------------------------------------------------
// classification

Classification classify(const Cell& u) {
  Classification c;
  c.is_many_to_one = !(u.is_app() && u.head_is_predet());
  c.is_indet = u.is_name() || (u.is_app() && !u.head_is_predet() && u.is_indet_default());
  c.is_identity = u.dim() >= 1 && occurrences(u, OccKind::Indets).empty();
  int depth = 0;
  Cell cur = u;
  while (cur.is_identity_cell()) {
    ++depth;
    if (cur.is_obj_id()) break;
    cur = cur.predet_payload();
  }
  c.identity_depth = depth;
  return c;
}

// ---------------------------------------------------------------------------
// validation

namespace {

void validate_rec(const Presentation& p, const Cell& u) {
  switch (u.kind()) {
    case Cell::Kind::Name: {
      auto lvl = p.level_of(u.head_name());
      if (!lvl || *lvl != 0) throw KernelError("not a 0-indet: " + u.head_name());
      return;
    }
    case Cell::Kind::ObjId: {
      auto lvl = p.level_of(u.head_name());
      if (!lvl || *lvl != u.dim() - 1)
        throw KernelError("identity arrow over a non-indet or wrong dimension: #" + u.head_name());
      return;
    }
    case Cell::Kind::App: {
      std::vector<std::string> src;
      if (u.head_is_predet()) {
        const Cell& w = u.predet_payload();
        if (w.dim() != u.dim() - 1) throw KernelError("predet payload dimension mismatch");
        if (w.is_indet_default())
          throw KernelError("predet over an indet default cell: " + u.render());
        validate_rec(p, w);
        src = occurrences(w, OccKind::Indets);
      } else {
        auto lvl = p.level_of(u.head_name());
        if (!lvl || *lvl != u.dim())
          throw KernelError("head is not an indet of dimension " + std::to_string(u.dim()) + ": " +
                            u.head_name());
        if (*lvl == 0) throw KernelError("0-indet used as head: " + u.head_name());
        src = occurrences(p.decl(u.head_name()).domain, OccKind::Indets);
      }
      if (src.size() != u.args().size())
        throw KernelError("arity mismatch for " + u.render() + ": expected " +
                          std::to_string(src.size()) + " arguments");
      for (std::size_t i = 0; i < u.args().size(); ++i) {
        const Cell& a = u.args()[i];
        if (a.dim() != u.dim()) throw KernelError("argument dimension mismatch in " + u.render());
        validate_rec(p, a);
        auto t = target_object(p, a);
        if (!t) throw KernelError("argument is not many-to-one: " + a.render());
        if (*t != src[i])
          throw KernelError("slot " + std::to_string(i) + " of " + u.render() + " expects " +
                            src[i] + ", argument targets " + *t);
      }
      return;
    }
  }
}

}  // namespace

void validate_cell(const Presentation& p, const Cell& u) { validate_rec(p, u); }

bool is_valid_cell(const Presentation& p, const Cell& u) {
  try {
    validate_cell(p, u);
    return true;
  } catch (const KernelError&) {
    return false;
  }
}

}  // namespace mltc
