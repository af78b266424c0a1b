#ifndef MLTC_CELL_HPP
#define MLTC_CELL_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mltc {

class Presentation;

struct KernelError : std::runtime_error {
  explicit KernelError(const std::string& msg) : std::runtime_error(msg) {}
};

// A cell in canonical normal form.
//
// Dimension 0 cells are bare object names.  A cell of dimension m >= 1 is a
// reduced Polish term over the (m-1)-indets (the objects), the m-indets and
// the predets e_w, where w ranges over non-indet (m-1)-cells:
//
//   Name(x)           -- 0-cell, prints "x"
//   ObjId(x)          -- the identity arrow over the (m-1)-indet x, "#x"
//   App(head, args)   -- head symbol applied to one argument per source slot;
//                        head is either an m-indet or a predet "e{w}"
//
// Two cells are equal in the free structure iff they are structurally equal.
class Cell {
 public:
  enum class Kind { Name, ObjId, App };

  Cell() = default;

  static Cell name(std::string n);
  static Cell obj_id(std::string n, int dim);
  static Cell app_indet(std::string head, int dim, std::vector<Cell> args);
  static Cell app_predet(Cell payload, std::vector<Cell> args);

  Kind kind() const;
  int dim() const;
  bool head_is_predet() const;
  const std::string& head_name() const;   // Name, ObjId, App with indet head
  const Cell& predet_payload() const;     // App with predet head only
  const std::vector<Cell>& args() const;  // App only

  bool is_name() const { return kind() == Kind::Name; }
  bool is_obj_id() const { return kind() == Kind::ObjId; }
  bool is_app() const { return kind() == Kind::App; }

  // True for the canonical term identifying an indet with its default
  // string: a 0-cell name, or an indet head whose arguments are all ObjId.
  bool is_indet_default() const;

  // True iff the cell is an identity arrow: ObjId, or a predet head with all
  // arguments ObjId.  0-cells are not identities.
  bool is_identity_cell() const;

  std::string render() const;
  bool operator==(const Cell& o) const;
  bool operator!=(const Cell& o) const { return !(*this == o); }
  std::size_t hash() const;

 private:
  struct Rep;
  std::shared_ptr<const Rep> rep_;
  explicit Cell(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
};

struct Cell::Rep {
  Kind kind = Kind::Name;
  int dim = 0;
  std::string name;             // Name, ObjId, indet head
  std::optional<Cell> payload;  // predet head
  std::vector<Cell> args;
};

struct CellHash {
  std::size_t operator()(const Cell& c) const { return c.hash(); }
};

// ---------------------------------------------------------------------------
// occurrence bookkeeping

enum class OccKind { Objects, Indets };

// position in the left-to-right occurrence sequence of a cell
using OccIndex = std::size_t;

// Left-to-right occurrence sequences in the Polish rendering of a cell.
// Objects: the ObjId leaves (the source of the arrow).  Indets: the indet
// head symbols, predet heads excluded.  For a 0-cell, both kinds give the
// singleton occurrence of the cell itself.
std::vector<std::string> occurrences(const Cell& u, OccKind kind);

// Coprojections of an occurrence coproduct into a composite, positional.
// multicompose fills it with object positions (left has no entry at the
// spliced slot); compose fills it with indet occurrence positions, total on
// both sides.
struct ProvenancePair {
  std::vector<std::optional<std::size_t>> left;
  std::vector<std::size_t> right;
};

struct ComposeResult {
  Cell cell;
  ProvenancePair prov;
};

enum class BoundarySide { Domain, Codomain };

struct Boundary {
  Cell domain;
  Cell codomain;
};

// ---------------------------------------------------------------------------
// operations

// The canonical cell of a declared indet: the bare name at dimension 0,
// otherwise the default term with one ObjId slot per occurrence of the
// declared domain.
Cell indet_cell(const Presentation& p, const std::string& name);

// The identity cell one dimension up: ObjId over an indet default cell,
// a nullary-or-wider predet application otherwise.
Cell identity_over(const Cell& w);

// identity_over applied (m - dim w) times.
Cell iterated_identity(const Cell& w, int m);

Boundary boundary(const Presentation& p, const Cell& u);
Cell iterated_boundary(const Presentation& p, const Cell& u, int k, BoundarySide side);

// The object an arrow maps to, when its codomain is an indet: the name under
// ObjId, the declared codomain for an indet head, nothing for a predet head.
// For 0-cells, the name itself.
std::optional<std::string> target_object(const Presentation& p, const Cell& u);

// Multicomposition u (.)_r v: splice the term v into the r-th object slot of
// u.  Requires equal dimensions and codomain(v) equal to the indet cell named
// by that slot.  Provenance maps object positions.
ComposeResult multicompose(const Presentation& p, const Cell& u, OccIndex r, const Cell& v);

// Replacement of the r-th indet occurrence of u by a parallel cell v
// (same source sequence, same codomain).  At dimension 0 the result is v.
Cell replace(const Presentation& p, const Cell& u, OccIndex r, const Cell& v);

// Occurrence coprojections of a replacement: where each indet occurrence of
// u (minus r) and of v lands in replace(u, r, v).  The replaced head's
// arguments are rewired into v's slots, so the images interleave.
ProvenancePair replace_occurrences(const Presentation& p, const Cell& u, OccIndex r,
                                   const Cell& v);

// Whiskering of the (dim w + 1)-cell v into occurrence r of w:
// multicompose(identity_over(w), r, v).
Cell whisker(const Presentation& p, const Cell& w, OccIndex r, const Cell& v);

// Placed composition u o_r v at occurrence r of domain(u); coincides with
// multicompose under positional indexing.
Cell placed_compose(const Presentation& p, const Cell& u, OccIndex r, const Cell& v);

// Omega-categorical composition u *_k v.  Operands of different dimensions
// are promoted with iterated_identity (whiskering); requires
// iterated_boundary(u, k, Domain) == iterated_boundary(v, k, Codomain).
// Provenance maps the indet occurrences of the promoted operands.
ComposeResult compose(const Presentation& p, const Cell& u, int k, const Cell& v);

struct Classification {
  bool is_identity = false;
  bool is_indet = false;
  bool is_many_to_one = false;
  int identity_depth = 0;
};

Classification classify(const Cell& u);

// Structural validity of a cell over a presentation: declared heads, arity
// one argument per source slot, slot typing, reduced predet payloads.
// Throws KernelError with a description of the first violation.
void validate_cell(const Presentation& p, const Cell& u);

bool is_valid_cell(const Presentation& p, const Cell& u);

}  // namespace mltc

#endif
