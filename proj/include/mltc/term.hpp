#ifndef MLTC_TERM_HPP
#define MLTC_TERM_HPP

#include <memory>
#include <string>
#include <vector>

#include "mltc/cell.hpp"

namespace mltc {

class Presentation;

enum class Lang { C, M };

// ---------------------------------------------------------------------------
// composition expressions: atoms, identities 1_{t}, composites (t *k s)

struct CTerm;
using CTermP = std::shared_ptr<const CTerm>;

struct CTerm {
  enum class Kind { Indet, Id, Comp };
  Kind kind = Kind::Indet;
  int dim = 0;  // resolved against the presentation
  std::string name;      // Indet
  CTermP inner;          // Id
  int k = 0;             // Comp
  CTermP left, right;    // Comp

  static CTermP indet(std::string n, int dim);
  static CTermP id(CTermP inner);
  static CTermP comp(int k, CTermP l, CTermP r);
};

bool term_equal(const CTermP& a, const CTermP& b);
int term_size(const CTermP& t);  // node count
std::string print_cterm(const CTermP& t);

// ---------------------------------------------------------------------------
// multicomposition expressions: atoms, identities 1_x, composites (t o[r] s)

struct MTerm;
using MTermP = std::shared_ptr<const MTerm>;

struct MTerm {
  enum class Kind { Indet, Id, Comp };
  Kind kind = Kind::Indet;
  int dim = 0;
  std::string name;      // Indet, Id (object name)
  std::size_t r = 0;     // Comp
  MTermP left, right;    // Comp

  static MTermP indet(std::string n, int dim);
  static MTermP id(std::string object, int dim);
  static MTermP comp(std::size_t r, MTermP l, MTermP r2);
};

bool term_equal(const MTermP& a, const MTermP& b);
int term_size(const MTermP& t);
std::string print_mterm(const MTermP& t);

// ---------------------------------------------------------------------------
// parsing; expected_dim < 0 means "infer"

CTermP parse_cterm(const std::string& text, const Presentation& p, int expected_dim = -1);
MTermP parse_mterm(const std::string& text, const Presentation& p, int expected_dim = -1);

// canonical cell rendering is itself parsable
Cell parse_cell(const std::string& text, const Presentation& p);

// ---------------------------------------------------------------------------
// evaluation to canonical cells and readback

Cell eval_cterm(const CTermP& t, const Presentation& p);
Cell eval_mterm(const MTermP& t, const Presentation& p);

// Inverse up to evaluation: eval(readback(u)) == u.  The M readback emits the
// nested normal form and requires a many-to-one cell; the C readback expands
// multicompositions into top-dimensional composition plus whiskering and
// predets into identity terms.
MTermP readback_m(const Presentation& p, const Cell& u);
CTermP readback_c(const Presentation& p, const Cell& u);
std::string readback(const Presentation& p, const Cell& u, Lang lang);

bool decide_equal(const CTermP& a, const CTermP& b, const Presentation& p);
bool decide_equal(const MTermP& a, const MTermP& b, const Presentation& p);

// Parse in whichever language the operators indicate (o[..] selects the
// multicomposition grammar) and evaluate.  Used for domain expressions in
// presentation files and for CLI inputs.
Cell eval_term_text(const std::string& text, const Presentation& p, int expected_dim = -1);

}  // namespace mltc

#endif
