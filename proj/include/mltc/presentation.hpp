#ifndef MLTC_PRESENTATION_HPP
#define MLTC_PRESENTATION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mltc/cell.hpp"

namespace mltc {

struct ParseError : std::runtime_error {
  int line = 0;
  int column = 0;
  ParseError(std::string msg, int line_ = 0, int column_ = 0)
      : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ":" +
                                           std::to_string(column_) + ": " + msg
                                     : msg),
        line(line_),
        column(column_) {}
};

// Boundary data of one declared indet of dimension >= 1.  The domain is a
// canonical cell one dimension down, the codomain an indet name one
// dimension down (indets are many-to-one).
struct IndetDecl {
  Cell domain;
  std::string codomain;
  bool operator==(const IndetDecl& o) const {
    return domain == o.domain && codomain == o.codomain;
  }
};

// One dimension of a presentation.  Dimension 0 carries names only.
struct IndetTable {
  std::vector<std::string> order;          // declaration order
  std::map<std::string, IndetDecl> decls;  // empty at dimension 0
  bool operator==(const IndetTable& o) const {
    return order == o.order && decls == o.decls;
  }
};

// A finite-dimensional many-to-one computad presentation: its indets per
// dimension with domain/codomain data.  Immutable after construction in
// normal use; all kernel operations treat it as read-only.
class Presentation {
 public:
  std::string name;
  std::vector<IndetTable> levels;  // index = dimension

  int top_dim() const { return levels.empty() ? -1 : static_cast<int>(levels.size()) - 1; }

  // dimension of a declared indet, or nullopt
  std::optional<int> level_of(const std::string& indet) const;
  bool has_indet(const std::string& indet) const { return level_of(indet).has_value(); }
  const IndetDecl& decl(const std::string& indet) const;  // dim >= 1 only

  bool operator==(const Presentation& o) const { return levels == o.levels; }
  bool operator!=(const Presentation& o) const { return !(*this == o); }
};

struct Violation {
  std::string indet;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Parse the .cmp presentation format.  Domain expressions are written in
// either term language and are evaluated to canonical cells level by level.
// Throws ParseError with position information.
Presentation parse_presentation(const std::string& text, const std::string& name = "");

// Re-check every presentation invariant; violations are report entries.
ValidationReport validate_presentation(const Presentation& p);

// Levels 0..n of p.
Presentation truncate_presentation(const Presentation& p, int n);

// Render back to the .cmp format (domains as multicomposition terms).
std::string print_presentation(const Presentation& p);

}  // namespace mltc

#endif
