#include "mltc/term.hpp"

#include <cctype>
#include <functional>
#include <sstream>

#include "mltc/presentation.hpp"

namespace mltc {

// ---------------------------------------------------------------------------
// AST construction

CTermP CTerm::indet(std::string n, int dim) {
  auto t = std::make_shared<CTerm>();
  t->kind = Kind::Indet;
  t->name = std::move(n);
  t->dim = dim;
  return t;
}

CTermP CTerm::id(CTermP inner) {
  auto t = std::make_shared<CTerm>();
  t->kind = Kind::Id;
  t->dim = inner->dim + 1;
  t->inner = std::move(inner);
  return t;
}

CTermP CTerm::comp(int k, CTermP l, CTermP r) {
  auto t = std::make_shared<CTerm>();
  t->kind = Kind::Comp;
  t->dim = std::max(l->dim, r->dim);
  t->k = k;
  t->left = std::move(l);
  t->right = std::move(r);
  return t;
}

MTermP MTerm::indet(std::string n, int dim) {
  auto t = std::make_shared<MTerm>();
  t->kind = Kind::Indet;
  t->name = std::move(n);
  t->dim = dim;
  return t;
}

MTermP MTerm::id(std::string object, int dim) {
  auto t = std::make_shared<MTerm>();
  t->kind = Kind::Id;
  t->name = std::move(object);
  t->dim = dim;
  return t;
}

MTermP MTerm::comp(std::size_t r, MTermP l, MTermP r2) {
  auto t = std::make_shared<MTerm>();
  t->kind = Kind::Comp;
  t->dim = std::max(l->dim, r2->dim);
  t->r = r;
  t->left = std::move(l);
  t->right = std::move(r2);
  return t;
}

bool term_equal(const CTermP& a, const CTermP& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case CTerm::Kind::Indet:
      return a->name == b->name;
    case CTerm::Kind::Id:
      return term_equal(a->inner, b->inner);
    case CTerm::Kind::Comp:
      return a->k == b->k && term_equal(a->left, b->left) && term_equal(a->right, b->right);
  }
  return false;
}

bool term_equal(const MTermP& a, const MTermP& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case MTerm::Kind::Indet:
    case MTerm::Kind::Id:
      return a->name == b->name && (a->kind != MTerm::Kind::Id || a->dim == b->dim);
    case MTerm::Kind::Comp:
      return a->r == b->r && term_equal(a->left, b->left) && term_equal(a->right, b->right);
  }
  return false;
}

int term_size(const CTermP& t) {
  switch (t->kind) {
    case CTerm::Kind::Indet:
      return 1;
    case CTerm::Kind::Id:
      return 1 + term_size(t->inner);
    case CTerm::Kind::Comp:
      return 1 + term_size(t->left) + term_size(t->right);
  }
  return 0;
}

int term_size(const MTermP& t) {
  switch (t->kind) {
    case MTerm::Kind::Indet:
    case MTerm::Kind::Id:
      return 1;
    case MTerm::Kind::Comp:
      return 1 + term_size(t->left) + term_size(t->right);
  }
  return 0;
}

std::string print_cterm(const CTermP& t) {
  switch (t->kind) {
    case CTerm::Kind::Indet:
      return t->name;
    case CTerm::Kind::Id:
      if (t->inner->kind == CTerm::Kind::Indet) return "1_" + t->inner->name;
      return "1_{" + print_cterm(t->inner) + "}";
    case CTerm::Kind::Comp:
      return "(" + print_cterm(t->left) + " *" + std::to_string(t->k) + " " +
             print_cterm(t->right) + ")";
  }
  return "";
}

std::string print_mterm(const MTermP& t) {
  switch (t->kind) {
    case MTerm::Kind::Indet:
      return t->name;
    case MTerm::Kind::Id:
      return "1_" + t->name;
    case MTerm::Kind::Comp:
      return "(" + print_mterm(t->left) + " o[" + std::to_string(t->r) + "] " +
             print_mterm(t->right) + ")";
  }
  return "";
}

// ---------------------------------------------------------------------------
// tokenizer

namespace {

struct Token {
  enum class Kind { LParen, RParen, Star, OComp, Ident, IdIntro, LBrace, RBrace, End };
  Kind kind = Kind::End;
  std::string text;   // Ident
  long number = 0;    // Star k, OComp r, IdIntro iteration count
  int pos = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }
  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    tok_ = Token{};
    tok_.pos = static_cast<int>(i_) + 1;
    if (i_ >= s_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      tok_.kind = Token::Kind::LParen;
      return;
    }
    if (c == ')') {
      ++i_;
      tok_.kind = Token::Kind::RParen;
      return;
    }
    if (c == '{') {
      ++i_;
      tok_.kind = Token::Kind::LBrace;
      return;
    }
    if (c == '}') {
      ++i_;
      tok_.kind = Token::Kind::RBrace;
      return;
    }
    if (c == '*') {
      ++i_;
      tok_.kind = Token::Kind::Star;
      tok_.number = read_int("composition dimension");
      return;
    }
    if (c == 'o' && i_ + 1 < s_.size() && s_[i_ + 1] == '[') {
      i_ += 2;
      tok_.kind = Token::Kind::OComp;
      tok_.number = read_int("multicomposition position");
      if (i_ >= s_.size() || s_[i_] != ']')
        throw ParseError("expected `]`", 0, static_cast<int>(i_) + 1);
      ++i_;
      return;
    }
    if (c == '1' && i_ + 1 < s_.size() && (s_[i_ + 1] == '_' || s_[i_ + 1] == '^')) {
      ++i_;
      long n = 1;
      if (s_[i_] == '^') {
        ++i_;
        n = read_int("identity iteration count");
      }
      if (i_ >= s_.size() || s_[i_] != '_')
        throw ParseError("expected `_` after identity intro", 0, static_cast<int>(i_) + 1);
      ++i_;
      tok_.kind = Token::Kind::IdIntro;
      tok_.number = n;
      return;
    }
    if (ident_start(c)) {
      std::size_t j = i_;
      while (j < s_.size() && ident_char(s_[j])) ++j;
      tok_.kind = Token::Kind::Ident;
      tok_.text = s_.substr(i_, j - i_);
      i_ = j;
      return;
    }
    throw ParseError(std::string("unexpected character `") + c + "`", 0,
                     static_cast<int>(i_) + 1);
  }

  long read_int(const std::string& what) {
    std::size_t j = i_;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    if (j == i_) throw ParseError("expected " + what, 0, static_cast<int>(i_) + 1);
    long v = std::stol(s_.substr(i_, j - i_));
    i_ = j;
    return v;
  }

  const std::string& s_;
  std::size_t i_ = 0;
  Token tok_;
};

[[noreturn]] void fail(const Token& t, const std::string& msg) {
  throw ParseError(msg, 0, t.pos);
}

int level_or_fail(const Presentation& p, const std::string& name, const Token& t) {
  auto lvl = p.level_of(name);
  if (!lvl) fail(t, "unknown name `" + name + "`");
  return *lvl;
}

// -------- composition terms --------

CTermP parse_cterm_expr(Lexer& lx, const Presentation& p) {
  Token t = lx.next();
  switch (t.kind) {
    case Token::Kind::Ident:
      return CTerm::indet(t.text, level_or_fail(p, t.text, t));
    case Token::Kind::IdIntro: {
      CTermP inner;
      if (lx.peek().kind == Token::Kind::LBrace) {
        lx.next();
        inner = parse_cterm_expr(lx, p);
        Token rb = lx.next();
        if (rb.kind != Token::Kind::RBrace) fail(rb, "expected `}`");
      } else {
        Token id = lx.next();
        if (id.kind != Token::Kind::Ident) fail(id, "expected a name after `1_`");
        inner = CTerm::indet(id.text, level_or_fail(p, id.text, id));
      }
      CTermP out = std::move(inner);
      for (long i = 0; i < t.number; ++i) out = CTerm::id(std::move(out));
      return out;
    }
    case Token::Kind::LParen: {
      CTermP l = parse_cterm_expr(lx, p);
      Token op = lx.next();
      if (op.kind != Token::Kind::Star) fail(op, "expected `*k`");
      CTermP r = parse_cterm_expr(lx, p);
      Token rp = lx.next();
      if (rp.kind != Token::Kind::RParen) fail(rp, "expected `)`");
      int dim = std::max(l->dim, r->dim);
      if (op.number >= dim)
        fail(op, "k >= dimension: *" + std::to_string(op.number) + " on terms of dimension " +
                     std::to_string(dim));
      return CTerm::comp(static_cast<int>(op.number), std::move(l), std::move(r));
    }
    default:
      fail(t, "expected a term");
  }
}

// -------- multicomposition terms --------

MTermP parse_mterm_expr(Lexer& lx, const Presentation& p) {
  Token t = lx.next();
  switch (t.kind) {
    case Token::Kind::Ident:
      return MTerm::indet(t.text, level_or_fail(p, t.text, t));
    case Token::Kind::IdIntro: {
      if (t.number != 1) fail(t, "iterated identities are not multicomposition terms");
      Token id = lx.next();
      if (id.kind != Token::Kind::Ident) fail(id, "expected a name after `1_`");
      return MTerm::id(id.text, level_or_fail(p, id.text, id) + 1);
    }
    case Token::Kind::LParen: {
      MTermP l = parse_mterm_expr(lx, p);
      Token op = lx.next();
      if (op.kind != Token::Kind::OComp) fail(op, "expected `o[r]`");
      MTermP r = parse_mterm_expr(lx, p);
      Token rp = lx.next();
      if (rp.kind != Token::Kind::RParen) fail(rp, "expected `)`");
      return MTerm::comp(static_cast<std::size_t>(op.number), std::move(l), std::move(r));
    }
    default:
      fail(t, "expected a term");
  }
}

}  // namespace

CTermP parse_cterm(const std::string& text, const Presentation& p, int expected_dim) {
  Lexer lx(text);
  CTermP t = parse_cterm_expr(lx, p);
  Token end = lx.next();
  if (end.kind != Token::Kind::End) fail(end, "trailing input after term");
  if (expected_dim >= 0 && t->dim != expected_dim)
    throw ParseError("term has dimension " + std::to_string(t->dim) + ", expected " +
                     std::to_string(expected_dim));
  return t;
}

MTermP parse_mterm(const std::string& text, const Presentation& p, int expected_dim) {
  Lexer lx(text);
  MTermP t = parse_mterm_expr(lx, p);
  Token end = lx.next();
  if (end.kind != Token::Kind::End) fail(end, "trailing input after term");
  if (expected_dim >= 0 && t->dim != expected_dim)
    throw ParseError("term has dimension " + std::to_string(t->dim) + ", expected " +
                     std::to_string(expected_dim));
  return t;
}

// ---------------------------------------------------------------------------
// canonical cell syntax

Cell parse_cell(const std::string& text, const Presentation& p) {
  struct Mini {
    const std::string& s;
    std::size_t i = 0;
  };
  std::function<Cell(Mini&)> go = [&](Mini& m) -> Cell {
    auto skip = [&m] {
      while (m.i < m.s.size() && (std::isspace(static_cast<unsigned char>(m.s[m.i])) ||
                                  m.s[m.i] == ','))
        ++m.i;
    };
    skip();
    if (m.i >= m.s.size()) throw ParseError("expected a cell", 0, static_cast<int>(m.i) + 1);
    if (m.s[m.i] == '#') {
      ++m.i;
      std::size_t j = m.i;
      while (j < m.s.size() && ident_char(m.s[j])) ++j;
      if (j == m.i) throw ParseError("expected a name after `#`", 0, static_cast<int>(m.i) + 1);
      std::string name = m.s.substr(m.i, j - m.i);
      m.i = j;
      auto lvl = p.level_of(name);
      if (!lvl) throw ParseError("unknown name `" + name + "`");
      return Cell::obj_id(name, *lvl + 1);
    }
    if (m.s[m.i] == 'e' && m.i + 1 < m.s.size() && m.s[m.i + 1] == '{') {
      m.i += 2;
      Cell payload = go(m);
      skip();
      if (m.i >= m.s.size() || m.s[m.i] != '}')
        throw ParseError("expected `}`", 0, static_cast<int>(m.i) + 1);
      ++m.i;
      skip();
      if (m.i >= m.s.size() || m.s[m.i] != '(')
        throw ParseError("expected `(`", 0, static_cast<int>(m.i) + 1);
      ++m.i;
      std::vector<Cell> args;
      skip();
      while (m.i < m.s.size() && m.s[m.i] != ')') {
        args.push_back(go(m));
        skip();
      }
      if (m.i >= m.s.size()) throw ParseError("expected `)`", 0, static_cast<int>(m.i) + 1);
      ++m.i;
      return Cell::app_predet(std::move(payload), std::move(args));
    }
    if (!ident_start(m.s[m.i]))
      throw ParseError(std::string("unexpected character `") + m.s[m.i] + "`", 0,
                       static_cast<int>(m.i) + 1);
    std::size_t j = m.i;
    while (j < m.s.size() && ident_char(m.s[j])) ++j;
    std::string name = m.s.substr(m.i, j - m.i);
    m.i = j;
    auto lvl = p.level_of(name);
    if (!lvl) throw ParseError("unknown name `" + name + "`");
    skip();
    if (m.i < m.s.size() && m.s[m.i] == '(') {
      ++m.i;
      std::vector<Cell> args;
      skip();
      while (m.i < m.s.size() && m.s[m.i] != ')') {
        args.push_back(go(m));
        skip();
      }
      if (m.i >= m.s.size()) throw ParseError("expected `)`", 0, static_cast<int>(m.i) + 1);
      ++m.i;
      if (*lvl == 0) throw ParseError("0-indet `" + name + "` takes no arguments");
      return Cell::app_indet(name, *lvl, std::move(args));
    }
    if (*lvl != 0)
      throw ParseError("`" + name + "` is not a 0-indet; higher cells need arguments");
    return Cell::name(name);
  };
  Mini m{text, 0};
  Cell c = go(m);
  while (m.i < text.size() && std::isspace(static_cast<unsigned char>(text[m.i]))) ++m.i;
  if (m.i != text.size()) throw ParseError("trailing input after cell", 0, static_cast<int>(m.i) + 1);
  validate_cell(p, c);
  return c;
}

// ---------------------------------------------------------------------------
// evaluation

Cell eval_cterm(const CTermP& t, const Presentation& p) {
  switch (t->kind) {
    case CTerm::Kind::Indet:
      return indet_cell(p, t->name);
    case CTerm::Kind::Id:
      return identity_over(eval_cterm(t->inner, p));
    case CTerm::Kind::Comp: {
      Cell l = eval_cterm(t->left, p);
      Cell r = eval_cterm(t->right, p);
      try {
        return compose(p, l, t->k, r).cell;
      } catch (const KernelError& e) {
        throw KernelError(std::string(e.what()) + " in subterm " + print_cterm(t));
      }
    }
  }
  throw KernelError("unreachable");
}

Cell eval_mterm(const MTermP& t, const Presentation& p) {
  switch (t->kind) {
    case MTerm::Kind::Indet:
      return indet_cell(p, t->name);
    case MTerm::Kind::Id: {
      auto lvl = p.level_of(t->name);
      if (!lvl) throw KernelError("unknown name: " + t->name);
      return Cell::obj_id(t->name, *lvl + 1);
    }
    case MTerm::Kind::Comp: {
      Cell l = eval_mterm(t->left, p);
      Cell r = eval_mterm(t->right, p);
      try {
        return multicompose(p, l, t->r, r).cell;
      } catch (const KernelError& e) {
        throw KernelError(std::string(e.what()) + " in subterm " + print_mterm(t));
      }
    }
  }
  throw KernelError("unreachable");
}

// ---------------------------------------------------------------------------
// readback

MTermP readback_m(const Presentation& p, const Cell& u) {
  switch (u.kind()) {
    case Cell::Kind::Name:
      return MTerm::indet(u.head_name(), 0);
    case Cell::Kind::ObjId:
      return MTerm::id(u.head_name(), u.dim());
    case Cell::Kind::App: {
      if (u.head_is_predet())
        throw KernelError("multicomposition readback needs a many-to-one cell: " + u.render());
      MTermP t = MTerm::indet(u.head_name(), u.dim());
      const auto& args = u.args();
      for (std::size_t j = args.size(); j-- > 0;) {
        if (args[j].is_obj_id()) continue;
        t = MTerm::comp(j, std::move(t), readback_m(p, args[j]));
      }
      return t;
    }
  }
  throw KernelError("unreachable");
}

namespace {

// leftmost minimal compound subterm: S with indet head and all-ObjId args
struct MinimalPeel {
  Cell rest;            // u with S replaced by its slot
  Cell sub;             // S
  std::size_t slot;     // object position of the new slot in rest
  std::size_t indets_before;  // indet occurrences of u before S's head
};

bool is_minimal_app(const Cell& c) {
  if (!c.is_app() || c.head_is_predet()) return false;
  for (const Cell& a : c.args())
    if (!a.is_obj_id()) return false;
  return true;
}

MinimalPeel peel_minimal(const Presentation& p, const Cell& u) {
  MinimalPeel out;
  bool found = false;
  std::size_t slots = 0, indets = 0;
  std::function<Cell(const Cell&)> go = [&](const Cell& c) -> Cell {
    if (c.is_obj_id()) {
      if (!found) ++slots;
      return c;
    }
    if (!c.is_app()) return c;
    if (!found && is_minimal_app(c)) {
      found = true;
      out.sub = c;
      out.slot = slots;
      out.indets_before = indets;
      return Cell::obj_id(p.decl(c.head_name()).codomain, c.dim());
    }
    if (!found && !c.head_is_predet()) ++indets;
    std::vector<Cell> args;
    args.reserve(c.args().size());
    for (const Cell& a : c.args()) args.push_back(go(a));
    return c.head_is_predet() ? Cell::app_predet(c.predet_payload(), std::move(args))
                              : Cell::app_indet(c.head_name(), c.dim(), std::move(args));
  };
  out.rest = go(u);
  if (!found) throw KernelError("no compound subterm to peel in " + u.render());
  return out;
}

// C-term denoting the generalized whiskering of v into occurrence r of w
CTermP whisker_cterm(const Presentation& p, const Cell& w, std::size_t r, const Cell& v);

CTermP readback_c_impl(const Presentation& p, const Cell& u) {
  switch (u.kind()) {
    case Cell::Kind::Name:
      return CTerm::indet(u.head_name(), 0);
    case Cell::Kind::ObjId:
      return CTerm::id(CTerm::indet(u.head_name(), u.dim() - 1));
    case Cell::Kind::App: {
      if (u.is_identity_cell()) return CTerm::id(readback_c_impl(p, u.predet_payload()));
      if (u.is_indet_default()) return CTerm::indet(u.head_name(), u.dim());
      // peel the first compound argument: u = u1 o_j u2
      const auto& args = u.args();
      std::size_t j = 0;
      while (!args[j].is_app()) ++j;
      Cell u2 = args[j];
      std::vector<Cell> rest = args;
      rest[j] = Cell::obj_id(*target_object(p, u2), u.dim());
      Cell u1 = u.head_is_predet() ? Cell::app_predet(u.predet_payload(), std::move(rest))
                                   : Cell::app_indet(u.head_name(), u.dim(), std::move(rest));
      if (u1.is_identity_cell()) {
        // u = 1_w (.)_j u2 is the whiskering of w by u2
        return whisker_cterm(p, u1.predet_payload(), j, u2);
      }
      Cell du1 = boundary(p, u1).domain;
      return CTerm::comp(u.dim() - 1, readback_c_impl(p, u1), whisker_cterm(p, du1, j, u2));
    }
  }
  throw KernelError("unreachable");
}

CTermP whisker_cterm(const Presentation& p, const Cell& w, std::size_t r, const Cell& v) {
  if (w.is_name() || w.is_indet_default()) {
    if (r != 0) throw KernelError("occurrence position out of range");
    return readback_c_impl(p, v);
  }
  MinimalPeel peel = peel_minimal(p, w);
  const std::size_t b = peel.indets_before;
  if (peel.rest.is_identity_cell()) {
    // w = 1_Y (.)_q S, so the whiskering factors through Y
    Cell y = peel.rest.is_obj_id() ? indet_cell(p, peel.rest.head_name())
                                   : peel.rest.predet_payload();
    if (r != b) throw KernelError("occurrence position out of range");
    return whisker_cterm(p, y, peel.slot, v);
  }
  Cell dw1 = boundary(p, peel.rest).domain;
  Cell z = whisker(p, dw1, peel.slot, peel.sub);
  if (r == b) return CTerm::comp(w.dim() - 1, readback_c_impl(p, peel.rest), whisker_cterm(p, z, 0, v));
  std::size_t r1 = r < b ? r : r - 1;
  return CTerm::comp(w.dim() - 1, whisker_cterm(p, peel.rest, r1, v), readback_c_impl(p, z));
}

}  // namespace

CTermP readback_c(const Presentation& p, const Cell& u) { return readback_c_impl(p, u); }

std::string readback(const Presentation& p, const Cell& u, Lang lang) {
  return lang == Lang::M ? print_mterm(readback_m(p, u)) : print_cterm(readback_c(p, u));
}

bool decide_equal(const CTermP& a, const CTermP& b, const Presentation& p) {
  return eval_cterm(a, p) == eval_cterm(b, p);
}

bool decide_equal(const MTermP& a, const MTermP& b, const Presentation& p) {
  return eval_mterm(a, p) == eval_mterm(b, p);
}

Cell eval_term_text(const std::string& text, const Presentation& p, int expected_dim) {
  if (text.find("o[") != std::string::npos)
    return eval_mterm(parse_mterm(text, p, expected_dim), p);
  return eval_cterm(parse_cterm(text, p, expected_dim), p);
}

}  // namespace mltc
