#include "mltc/deduction.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "mltc/presentation.hpp"

namespace mltc {

// ---------------------------------------------------------------------------
// rules and equations

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::Reflexivity: return "reflexivity";
    case Rule::Associativity: return "associativity";
    case Rule::Exchange: return "exchange";
    case Rule::IdentityLeft: return "identity-left";
    case Rule::IdentityRight: return "identity-right";
    case Rule::IdentityMerge: return "identity-merge";
    case Rule::Commutativity: return "commutativity";
    case Rule::Symmetry: return "symmetry";
    case Rule::Transitivity: return "transitivity";
    case Rule::CongruenceLeft: return "congruence-left";
    case Rule::CongruenceRight: return "congruence-right";
  }
  return "?";
}

namespace {

std::optional<Rule> rule_from_name(const std::string& s) {
  static const std::map<std::string, Rule> table = {
      {"reflexivity", Rule::Reflexivity},
      {"associativity", Rule::Associativity},
      {"exchange", Rule::Exchange},
      {"identity-left", Rule::IdentityLeft},
      {"identity-right", Rule::IdentityRight},
      {"identity-merge", Rule::IdentityMerge},
      {"commutativity", Rule::Commutativity},
      {"symmetry", Rule::Symmetry},
      {"transitivity", Rule::Transitivity},
      {"congruence-left", Rule::CongruenceLeft},
      {"congruence-right", Rule::CongruenceRight},
  };
  auto it = table.find(s);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

}  // namespace

std::string print_equation(const Equation& e) {
  if (e.lang == Lang::C) return print_cterm(e.c_left) + " = " + print_cterm(e.c_right);
  return print_mterm(e.m_left) + " = " + print_mterm(e.m_right);
}

// ---------------------------------------------------------------------------
// proof checking

namespace {

Cell eval_or_fail(const CTermP& t, const Presentation& p, int line) {
  try {
    return eval_cterm(t, p);
  } catch (const std::exception& e) {
    throw ProofError(std::string("composite undefined: ") + e.what(), line);
  }
}

Cell eval_or_fail(const MTermP& t, const Presentation& p, int line) {
  try {
    return eval_mterm(t, p);
  } catch (const std::exception& e) {
    throw ProofError(std::string("composite undefined: ") + e.what(), line);
  }
}

bool is_comp(const CTermP& t) { return t && t->kind == CTerm::Kind::Comp; }
bool is_comp(const MTermP& t) { return t && t->kind == MTerm::Kind::Comp; }

void check_step_c(const Presentation& p, const Proof& pf, const ProofStep& st) {
  const CTermP& L = st.conclusion.c_left;
  const CTermP& R = st.conclusion.c_right;
  const int line = st.line;
  auto premise = [&](std::size_t i) -> const Equation& {
    if (i >= pf.steps.size()) throw ProofError("premise reference out of range", line);
    return pf.steps[i].conclusion;
  };
  auto need_premises = [&](std::size_t n) {
    if (st.premises.size() != n)
      throw ProofError(rule_name(st.rule) + " expects " + std::to_string(n) + " premises", line);
  };
  switch (st.rule) {
    case Rule::Reflexivity: {
      need_premises(0);
      if (!term_equal(L, R)) throw ProofError("sides of a reflexivity step differ", line);
      eval_or_fail(L, p, line);
      return;
    }
    case Rule::Associativity: {
      need_premises(0);
      if (!is_comp(L) || !is_comp(L->left) || !is_comp(R) || !is_comp(R->right))
        throw ProofError("associativity schema mismatch", line);
      int k = L->k;
      if (L->left->k != k || R->k != k || R->right->k != k)
        throw ProofError("associativity steps must use one composition dimension", line);
      if (!term_equal(L->left->left, R->left) || !term_equal(L->left->right, R->right->left) ||
          !term_equal(L->right, R->right->right))
        throw ProofError("associativity schema mismatch", line);
      eval_or_fail(L, p, line);
      eval_or_fail(R, p, line);
      return;
    }
    case Rule::Exchange: {
      need_premises(0);
      // (t *k t1) *l (s *k s1)  =  (t *l s) *k (t1 *l s1),  l < k
      if (!is_comp(L) || !is_comp(L->left) || !is_comp(L->right) || !is_comp(R) ||
          !is_comp(R->left) || !is_comp(R->right))
        throw ProofError("exchange schema mismatch", line);
      int l = L->k, k = L->left->k;
      if (L->right->k != k || R->k != k || R->left->k != l || R->right->k != l || !(l < k))
        throw ProofError("exchange schema mismatch: dimensions", line);
      if (!term_equal(L->left->left, R->left->left) ||
          !term_equal(L->right->left, R->left->right) ||
          !term_equal(L->left->right, R->right->left) ||
          !term_equal(L->right->right, R->right->right))
        throw ProofError("exchange schema mismatch", line);
      eval_or_fail(L, p, line);
      eval_or_fail(R, p, line);
      return;
    }
    case Rule::IdentityLeft:
    case Rule::IdentityRight: {
      need_premises(0);
      bool left_id = st.rule == Rule::IdentityLeft;
      if (!is_comp(L)) throw ProofError("identity schema mismatch", line);
      const CTermP& I = left_id ? L->left : L->right;
      const CTermP& T = left_id ? L->right : L->left;
      if (!term_equal(T, R)) throw ProofError("identity step must conclude the bare term", line);
      if (I->dim != T->dim)
        throw ProofError("identity tower has the wrong dimension", line);
      Cell tc = eval_or_fail(T, p, line);
      Cell ic = eval_or_fail(I, p, line);
      Cell bd = iterated_boundary(p, tc, L->k,
                                  left_id ? BoundarySide::Codomain : BoundarySide::Domain);
      if (ic != iterated_identity(bd, T->dim))
        throw ProofError("identity side condition failed: expected the iterated identity over " +
                             bd.render(),
                         line);
      return;
    }
    case Rule::IdentityMerge: {
      need_premises(0);
      // 1_a *k 1_b = 1_{a *k b}
      if (!is_comp(L) || L->left->kind != CTerm::Kind::Id || L->right->kind != CTerm::Kind::Id ||
          !R || R->kind != CTerm::Kind::Id || !is_comp(R->inner) || R->inner->k != L->k)
        throw ProofError("identity-merge schema mismatch", line);
      if (!term_equal(L->left->inner, R->inner->left) ||
          !term_equal(L->right->inner, R->inner->right))
        throw ProofError("identity-merge schema mismatch", line);
      eval_or_fail(L, p, line);
      eval_or_fail(R, p, line);
      return;
    }
    case Rule::Commutativity:
      throw ProofError("commutativity is not a composition rule", line);
    case Rule::Symmetry: {
      need_premises(1);
      const Equation& q = premise(st.premises[0]);
      if (!term_equal(L, q.c_right) || !term_equal(R, q.c_left))
        throw ProofError("symmetry conclusion does not flip its premise", line);
      return;
    }
    case Rule::Transitivity: {
      need_premises(2);
      const Equation& q1 = premise(st.premises[0]);
      const Equation& q2 = premise(st.premises[1]);
      if (!term_equal(q1.c_right, q2.c_left))
        throw ProofError("transitivity premises do not chain", line);
      if (!term_equal(L, q1.c_left) || !term_equal(R, q2.c_right))
        throw ProofError("transitivity conclusion mismatch", line);
      return;
    }
    case Rule::CongruenceLeft:
    case Rule::CongruenceRight: {
      need_premises(1);
      const Equation& q = premise(st.premises[0]);
      if (!is_comp(L) || !is_comp(R) || L->k != R->k)
        throw ProofError("congruence schema mismatch", line);
      bool left = st.rule == Rule::CongruenceLeft;
      const CTermP& la = left ? L->left : L->right;
      const CTermP& ra = left ? R->left : R->right;
      const CTermP& lw = left ? L->right : L->left;
      const CTermP& rw = left ? R->right : R->left;
      if (!term_equal(la, q.c_left) || !term_equal(ra, q.c_right) || !term_equal(lw, rw))
        throw ProofError("congruence conclusion does not wrap its premise", line);
      eval_or_fail(L, p, line);
      eval_or_fail(R, p, line);
      return;
    }
  }
}

void check_step_m(const Presentation& p, const Proof& pf, const ProofStep& st) {
  const MTermP& L = st.conclusion.m_left;
  const MTermP& R = st.conclusion.m_right;
  const int line = st.line;
  auto premise = [&](std::size_t i) -> const Equation& {
    if (i >= pf.steps.size()) throw ProofError("premise reference out of range", line);
    return pf.steps[i].conclusion;
  };
  auto need_premises = [&](std::size_t n) {
    if (st.premises.size() != n)
      throw ProofError(rule_name(st.rule) + " expects " + std::to_string(n) + " premises", line);
  };
  auto slot_count = [&](const MTermP& t) {
    return occurrences(eval_or_fail(t, p, line), OccKind::Objects).size();
  };
  switch (st.rule) {
    case Rule::Reflexivity: {
      need_premises(0);
      if (!term_equal(L, R)) throw ProofError("sides of a reflexivity step differ", line);
      eval_or_fail(L, p, line);
      return;
    }
    case Rule::IdentityLeft: {
      need_premises(0);
      // 1_x o[0] t = t
      if (!is_comp(L) || L->left->kind != MTerm::Kind::Id || !term_equal(L->right, R))
        throw ProofError("identity-left schema mismatch", line);
      eval_or_fail(L, p, line);
      return;
    }
    case Rule::IdentityRight: {
      need_premises(0);
      // t o[r] 1_x = t
      if (!is_comp(L) || L->right->kind != MTerm::Kind::Id || !term_equal(L->left, R))
        throw ProofError("identity-right schema mismatch", line);
      eval_or_fail(L, p, line);
      return;
    }
    case Rule::Commutativity: {
      need_premises(0);
      // (t o[r] s) o[q'] w = (t o[q] w) o[r'] s,  r != q in |St|
      if (!is_comp(L) || !is_comp(L->left) || !is_comp(R) || !is_comp(R->left))
        throw ProofError("commutativity schema mismatch", line);
      const MTermP &t = L->left->left, &s = L->left->right, &w = L->right;
      if (!term_equal(t, R->left->left) || !term_equal(s, R->right) ||
          !term_equal(w, R->left->right))
        throw ProofError("commutativity schema mismatch", line);
      std::size_t r = L->left->r, q = R->left->r;
      std::size_t st_count = slot_count(t);
      if (r == q || r >= st_count || q >= st_count)
        throw ProofError("commutativity positions must be distinct source positions", line);
      std::size_t ss = slot_count(s), sw = slot_count(w);
      std::size_t q_adj = q < r ? q : q - 1 + ss;
      std::size_t r_adj = r < q ? r : r - 1 + sw;
      if (L->r != q_adj || R->r != r_adj)
        throw ProofError("commutativity position bookkeeping failed", line);
      eval_or_fail(L, p, line);
      eval_or_fail(R, p, line);
      return;
    }
    case Rule::Associativity: {
      need_premises(0);
      // (t o[r] s) o[r + q] w = t o[r] (s o[q] w)
      if (!is_comp(L) || !is_comp(L->left) || !is_comp(R) || !is_comp(R->right))
        throw ProofError("associativity schema mismatch", line);
      const MTermP &t = L->left->left, &s = L->left->right, &w = L->right;
      if (!term_equal(t, R->left) || !term_equal(s, R->right->left) ||
          !term_equal(w, R->right->right))
        throw ProofError("associativity schema mismatch", line);
      std::size_t r = L->left->r, q = R->right->r;
      if (R->r != r || L->r != r + q || q >= slot_count(s))
        throw ProofError("associativity position bookkeeping failed", line);
      eval_or_fail(L, p, line);
      eval_or_fail(R, p, line);
      return;
    }
    case Rule::Symmetry: {
      need_premises(1);
      const Equation& q = premise(st.premises[0]);
      if (!term_equal(L, q.m_right) || !term_equal(R, q.m_left))
        throw ProofError("symmetry conclusion does not flip its premise", line);
      return;
    }
    case Rule::Transitivity: {
      need_premises(2);
      const Equation& q1 = premise(st.premises[0]);
      const Equation& q2 = premise(st.premises[1]);
      if (!term_equal(q1.m_right, q2.m_left))
        throw ProofError("transitivity premises do not chain", line);
      if (!term_equal(L, q1.m_left) || !term_equal(R, q2.m_right))
        throw ProofError("transitivity conclusion mismatch", line);
      return;
    }
    case Rule::CongruenceLeft:
    case Rule::CongruenceRight: {
      need_premises(1);
      const Equation& q = premise(st.premises[0]);
      if (!is_comp(L) || !is_comp(R) || L->r != R->r)
        throw ProofError("congruence schema mismatch", line);
      bool left = st.rule == Rule::CongruenceLeft;
      const MTermP& la = left ? L->left : L->right;
      const MTermP& ra = left ? R->left : R->right;
      const MTermP& lw = left ? L->right : L->left;
      const MTermP& rw = left ? R->right : R->left;
      if (!term_equal(la, q.m_left) || !term_equal(ra, q.m_right) || !term_equal(lw, rw))
        throw ProofError("congruence conclusion does not wrap its premise", line);
      eval_or_fail(L, p, line);
      eval_or_fail(R, p, line);
      return;
    }
    case Rule::Exchange:
    case Rule::IdentityMerge:
      throw ProofError(rule_name(st.rule) + " is not a multicomposition rule", line);
  }
}

}  // namespace

Equation check_proof(const Presentation& p, const Proof& pf) {
  if (pf.steps.empty()) throw ProofError("empty proof");
  for (const ProofStep& st : pf.steps) {
    for (std::size_t pr : st.premises)
      if (pr >= pf.steps.size() || pf.steps[pr].line >= st.line)
        throw ProofError("premises must refer to earlier steps", st.line);
    try {
      if (pf.lang == Lang::C)
        check_step_c(p, pf, st);
      else
        check_step_m(p, pf, st);
    } catch (const ProofError&) {
      throw;
    } catch (const std::exception& e) {
      throw ProofError(e.what(), st.line);
    }
  }
  return pf.steps.back().conclusion;
}

// ---------------------------------------------------------------------------
// proof files

namespace {

std::string trim_copy(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Proof parse_proof(const std::string& text, const Presentation& p) {
  Proof pf;
  pf.lang = text.find("o[") != std::string::npos ? Lang::M : Lang::C;
  std::istringstream in(text);
  std::string raw;
  std::map<long, std::size_t> line_index;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line = trim_copy(raw);
    if (line.empty()) continue;

    std::size_t i = 0;
    auto skip_ws = [&] { while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i; };
    std::size_t j = i;
    while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
    if (j == i || j >= line.size() || line[j] != '.')
      throw ParseError("proof step must start with `n.`", lineno, 1);
    long num = std::stol(line.substr(i, j - i));
    i = j + 1;
    skip_ws();
    j = i;
    while (j < line.size() && (std::isalpha(static_cast<unsigned char>(line[j])) || line[j] == '-'))
      ++j;
    std::string rname = line.substr(i, j - i);
    auto rule = rule_from_name(rname);
    if (!rule) throw ParseError("unknown rule `" + rname + "`", lineno, static_cast<int>(i) + 1);
    i = j;
    skip_ws();
    std::vector<std::size_t> premises;
    if (i < line.size() && line[i] == '[') {
      ++i;
      while (true) {
        skip_ws();
        if (i < line.size() && line[i] == ']') { ++i; break; }
        j = i;
        while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
        if (j == i) throw ParseError("expected a premise line number", lineno, static_cast<int>(i) + 1);
        long ref = std::stol(line.substr(i, j - i));
        auto it = line_index.find(ref);
        if (it == line_index.end())
          throw ParseError("premise " + std::to_string(ref) + " not seen yet", lineno, 1);
        premises.push_back(it->second);
        i = j;
        skip_ws();
        if (i < line.size() && line[i] == ',') ++i;
      }
    }
    skip_ws();
    if (i >= line.size() || line[i] != ':')
      throw ParseError("expected `:` before the equation", lineno, static_cast<int>(i) + 1);
    ++i;
    std::string eqtext = line.substr(i);
    auto eq = eqtext.find('=');
    if (eq == std::string::npos) throw ParseError("expected `=` in the equation", lineno, 1);
    std::string lhs = trim_copy(eqtext.substr(0, eq));
    std::string rhs = trim_copy(eqtext.substr(eq + 1));

    ProofStep st;
    st.rule = *rule;
    st.premises = std::move(premises);
    st.line = static_cast<int>(num);
    st.conclusion.lang = pf.lang;
    try {
      if (pf.lang == Lang::C) {
        st.conclusion.c_left = parse_cterm(lhs, p);
        st.conclusion.c_right = parse_cterm(rhs, p);
      } else {
        st.conclusion.m_left = parse_mterm(lhs, p);
        st.conclusion.m_right = parse_mterm(rhs, p);
      }
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno, 1);
    }
    line_index[num] = pf.steps.size();
    pf.steps.push_back(std::move(st));
  }
  if (pf.steps.empty()) throw ParseError("empty proof");
  return pf;
}

std::string print_proof(const Proof& pf) {
  std::ostringstream out;
  for (std::size_t i = 0; i < pf.steps.size(); ++i) {
    const ProofStep& st = pf.steps[i];
    out << (i + 1) << ". " << rule_name(st.rule);
    if (!st.premises.empty()) {
      out << " [";
      for (std::size_t j = 0; j < st.premises.size(); ++j) {
        if (j) out << ", ";
        out << (st.premises[j] + 1);
      }
      out << "]";
    }
    out << ": " << print_equation(st.conclusion) << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// bounded enumeration

namespace {
constexpr std::size_t kEnumerationBudget = 500000;
}

std::vector<CTermCell> enumerate_cterms(const Presentation& p, int dim, int size_bound) {
  if (dim < 0 || dim > p.top_dim()) throw KernelError("enumeration dimension out of range");
  std::size_t total = 0;
  // by_dim[d][s] = terms of dimension d with exactly s nodes
  std::vector<std::vector<std::vector<CTermCell>>> by_dim(dim + 1);
  for (int d = 0; d <= dim; ++d) {
    by_dim[d].assign(size_bound + 1, {});
    for (int s = 1; s <= size_bound; ++s) {
      auto& bucket = by_dim[d][s];
      if (s == 1) {
        for (const std::string& n : p.levels[d].order) {
          CTermP t = CTerm::indet(n, d);
          bucket.push_back({t, indet_cell(p, n)});
        }
        continue;
      }
      if (d >= 1) {
        for (const CTermCell& inner : by_dim[d - 1][s - 1])
          bucket.push_back({CTerm::id(inner.term), identity_over(inner.cell)});
        for (int k = 0; k < d; ++k) {
          for (int s1 = 1; s1 <= s - 2; ++s1) {
            int s2 = s - 1 - s1;
            for (const CTermCell& l : by_dim[d][s1]) {
              Cell ld = iterated_boundary(p, l.cell, k, BoundarySide::Domain);
              for (const CTermCell& r : by_dim[d][s2]) {
                Cell rc = iterated_boundary(p, r.cell, k, BoundarySide::Codomain);
                if (ld != rc) continue;
                bucket.push_back({CTerm::comp(k, l.term, r.term),
                                  compose(p, l.cell, k, r.cell).cell});
              }
            }
          }
        }
      }
      total += bucket.size();
      if (total > kEnumerationBudget) throw KernelError("enumeration budget exceeded");
    }
  }
  std::vector<CTermCell> out;
  for (int s = 1; s <= size_bound; ++s)
    for (const CTermCell& tc : by_dim[dim][s]) out.push_back(tc);
  return out;
}

std::vector<MTermCell> enumerate_mterms(const Presentation& p, int dim, int size_bound) {
  if (dim < 1 || dim > p.top_dim()) throw KernelError("enumeration dimension out of range");
  std::size_t total = 0;
  std::vector<std::vector<MTermCell>> by_size(size_bound + 1);
  for (int s = 1; s <= size_bound; ++s) {
    auto& bucket = by_size[s];
    if (s == 1) {
      for (const std::string& n : p.levels[dim].order)
        bucket.push_back({MTerm::indet(n, dim), indet_cell(p, n)});
      for (const std::string& x : p.levels[dim - 1].order)
        bucket.push_back({MTerm::id(x, dim), Cell::obj_id(x, dim)});
      continue;
    }
    for (int s1 = 1; s1 <= s - 2; ++s1) {
      int s2 = s - 1 - s1;
      for (const MTermCell& l : by_size[s1]) {
        std::vector<std::string> slots = occurrences(l.cell, OccKind::Objects);
        for (const MTermCell& r : by_size[s2]) {
          auto t = target_object(p, r.cell);
          if (!t) continue;
          for (std::size_t rr = 0; rr < slots.size(); ++rr) {
            if (slots[rr] != *t) continue;
            bucket.push_back({MTerm::comp(rr, l.term, r.term),
                              multicompose(p, l.cell, rr, r.cell).cell});
          }
        }
      }
    }
    total += bucket.size();
    if (total > kEnumerationBudget) throw KernelError("enumeration budget exceeded");
  }
  std::vector<MTermCell> out;
  for (int s = 1; s <= size_bound; ++s)
    for (const MTermCell& tc : by_size[s]) out.push_back(tc);
  return out;
}

// ---------------------------------------------------------------------------
// axiom rewrite neighbors

namespace {

// rewrites applicable at the root of s
void root_rewrites_c(const CTermP& s, const Presentation& p, std::vector<CTermP>& out) {
  if (!is_comp(s)) {
    if (s->kind == CTerm::Kind::Id && is_comp(s->inner) && s->inner->k < s->inner->left->dim)
      out.push_back(CTerm::comp(s->inner->k, CTerm::id(s->inner->left), CTerm::id(s->inner->right)));
    return;
  }
  int k = s->k;
  const CTermP& a = s->left;
  const CTermP& b = s->right;
  if (is_comp(a) && a->k == k)
    out.push_back(CTerm::comp(k, a->left, CTerm::comp(k, a->right, b)));
  if (is_comp(b) && b->k == k)
    out.push_back(CTerm::comp(k, CTerm::comp(k, a, b->left), b->right));
  if (is_comp(a) && is_comp(b) && a->k == b->k && k < a->k)
    out.push_back(CTerm::comp(a->k, CTerm::comp(k, a->left, b->left),
                              CTerm::comp(k, a->right, b->right)));
  if (is_comp(a) && is_comp(b) && a->k == b->k && a->k < k)
    out.push_back(CTerm::comp(a->k, CTerm::comp(k, a->left, b->left),
                              CTerm::comp(k, a->right, b->right)));
  // identity removals
  Cell ca = eval_cterm(a, p);
  Cell cb = eval_cterm(b, p);
  if (ca == iterated_identity(iterated_boundary(p, cb, k, BoundarySide::Codomain), a->dim))
    out.push_back(b);
  if (cb == iterated_identity(iterated_boundary(p, ca, k, BoundarySide::Domain), b->dim))
    out.push_back(a);
  // identity merge
  if (a->kind == CTerm::Kind::Id && b->kind == CTerm::Kind::Id && k < a->inner->dim)
    out.push_back(CTerm::id(CTerm::comp(k, a->inner, b->inner)));
}

void root_rewrites_m(const MTermP& s, const Presentation& p, std::vector<MTermP>& out) {
  if (!is_comp(s)) return;
  const MTermP& a = s->left;
  const MTermP& b = s->right;
  if (a->kind == MTerm::Kind::Id) out.push_back(b);   // 1_x o[0] t = t
  if (b->kind == MTerm::Kind::Id) out.push_back(a);   // t o[r] 1_x = t
  if (is_comp(a)) {
    // s = (t o[r] u) o[q1] w
    std::size_t r = a->r, q1 = s->r;
    Cell tc = eval_mterm(a->left, p);
    Cell uc = eval_mterm(a->right, p);
    Cell wc = eval_mterm(b, p);
    std::size_t st_count = occurrences(tc, OccKind::Objects).size();
    std::size_t su = occurrences(uc, OccKind::Objects).size();
    std::size_t sw = occurrences(wc, OccKind::Objects).size();
    if (q1 >= r && q1 < r + su) {
      // inside u: associativity
      out.push_back(MTerm::comp(r, a->left, MTerm::comp(q1 - r, a->right, b)));
    } else {
      // in t: commutativity
      std::size_t q = q1 < r ? q1 : q1 + 1 - su;
      if (q < st_count && q != r) {
        std::size_t r_adj = r < q ? r : r - 1 + sw;
        out.push_back(MTerm::comp(r_adj, MTerm::comp(q, a->left, b), a->right));
      }
    }
  }
  if (is_comp(b)) {
    // s = t o[r] (u o[q] w): associativity right-to-left
    out.push_back(MTerm::comp(s->r + b->r, MTerm::comp(s->r, a, b->left), b->right));
  }
}

std::vector<std::pair<CTermP, std::function<CTermP(const CTermP&)>>> subterm_contexts(
    const CTermP& t) {
  std::vector<std::pair<CTermP, std::function<CTermP(const CTermP&)>>> out;
  std::function<void(const CTermP&, std::function<CTermP(const CTermP&)>)> go =
      [&](const CTermP& s, std::function<CTermP(const CTermP&)> rebuild) {
        out.emplace_back(s, rebuild);
        if (s->kind == CTerm::Kind::Id)
          go(s->inner, [s, rebuild](const CTermP& n) { return rebuild(CTerm::id(n)); });
        if (s->kind == CTerm::Kind::Comp) {
          go(s->left,
             [s, rebuild](const CTermP& n) { return rebuild(CTerm::comp(s->k, n, s->right)); });
          go(s->right,
             [s, rebuild](const CTermP& n) { return rebuild(CTerm::comp(s->k, s->left, n)); });
        }
      };
  go(t, [](const CTermP& n) { return n; });
  return out;
}

std::vector<std::pair<MTermP, std::function<MTermP(const MTermP&)>>> subterm_contexts(
    const MTermP& t) {
  std::vector<std::pair<MTermP, std::function<MTermP(const MTermP&)>>> out;
  std::function<void(const MTermP&, std::function<MTermP(const MTermP&)>)> go =
      [&](const MTermP& s, std::function<MTermP(const MTermP&)> rebuild) {
        out.emplace_back(s, rebuild);
        if (s->kind == MTerm::Kind::Comp) {
          go(s->left,
             [s, rebuild](const MTermP& n) { return rebuild(MTerm::comp(s->r, n, s->right)); });
          go(s->right,
             [s, rebuild](const MTermP& n) { return rebuild(MTerm::comp(s->r, s->left, n)); });
        }
      };
  go(t, [](const MTermP& n) { return n; });
  return out;
}

}  // namespace

std::vector<CTermP> axiom_neighbors(const CTermP& t, const Presentation& p) {
  std::vector<CTermP> out;
  for (auto& [sub, rebuild] : subterm_contexts(t)) {
    std::vector<CTermP> here;
    root_rewrites_c(sub, p, here);
    for (const CTermP& n : here) {
      CTermP whole = rebuild(n);
      try {
        eval_cterm(whole, p);
      } catch (const std::exception&) {
        continue;
      }
      out.push_back(whole);
    }
  }
  return out;
}

std::vector<MTermP> axiom_neighbors(const MTermP& t, const Presentation& p) {
  std::vector<MTermP> out;
  for (auto& [sub, rebuild] : subterm_contexts(t)) {
    std::vector<MTermP> here;
    root_rewrites_m(sub, p, here);
    for (const MTermP& n : here) {
      MTermP whole = rebuild(n);
      try {
        eval_mterm(whole, p);
      } catch (const std::exception&) {
        continue;
      }
      out.push_back(whole);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// closure oracle

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::optional<std::size_t> OraclePartition::index_of(const std::string& printed_term) const {
  for (std::size_t i = 0; i < printed.size(); ++i)
    if (printed[i] == printed_term) return i;
  return std::nullopt;
}

OraclePartition closure_oracle(const Presentation& p, int dim, int size_bound, Lang lang) {
  OraclePartition out;
  out.lang = lang;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<CTermP> cterms;
  std::vector<MTermP> mterms;
  if (lang == Lang::C) {
    for (auto& tc : enumerate_cterms(p, dim, size_bound)) {
      out.printed.push_back(print_cterm(tc.term));
      out.cells.push_back(tc.cell);
      cterms.push_back(tc.term);
    }
  } else {
    for (auto& tc : enumerate_mterms(p, dim, size_bound)) {
      out.printed.push_back(print_mterm(tc.term));
      out.cells.push_back(tc.cell);
      mterms.push_back(tc.term);
    }
  }
  for (std::size_t i = 0; i < out.printed.size(); ++i) index.emplace(out.printed[i], i);

  UnionFind uf(out.printed.size());
  for (std::size_t i = 0; i < out.printed.size(); ++i) {
    if (lang == Lang::C) {
      for (const CTermP& n : axiom_neighbors(cterms[i], p)) {
        auto it = index.find(print_cterm(n));
        if (it != index.end()) uf.unite(i, it->second);
      }
    } else {
      for (const MTermP& n : axiom_neighbors(mterms[i], p)) {
        auto it = index.find(print_mterm(n));
        if (it != index.end()) uf.unite(i, it->second);
      }
    }
  }

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < out.printed.size(); ++i) groups[uf.find(i)].push_back(i);
  out.block_of.assign(out.printed.size(), 0);
  for (auto& [root, members] : groups) {
    std::size_t id = out.blocks.size();
    for (std::size_t m : members) out.block_of[m] = id;
    out.blocks.push_back(members);
  }
  return out;
}

// ---------------------------------------------------------------------------
// randomized proofs

namespace {

CTermP identity_tower(const Presentation& p, const Cell& base, int dim) {
  CTermP t = readback_c(p, base);
  for (int d = base.dim(); d < dim; ++d) t = CTerm::id(t);
  return t;
}

}  // namespace

Proof random_valid_proof(const Presentation& p, int dim, std::mt19937& rng,
                         const std::vector<CTermCell>& pool) {
  if (pool.empty()) throw KernelError("empty term pool");
  Proof pf;
  pf.lang = Lang::C;
  auto pick = [&rng](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto add = [&pf](Rule r, std::vector<std::size_t> prem, CTermP l, CTermP rr) {
    ProofStep st;
    st.rule = r;
    st.premises = std::move(prem);
    st.line = static_cast<int>(pf.steps.size()) + 1;
    st.conclusion.lang = Lang::C;
    st.conclusion.c_left = std::move(l);
    st.conclusion.c_right = std::move(rr);
    pf.steps.push_back(std::move(st));
    return pf.steps.size() - 1;
  };

  // one random axiom step
  std::size_t axiom_kind = pick(5);
  std::size_t base = 0;
  switch (axiom_kind) {
    case 0: {  // reflexivity
      const CTermCell& t = pool[pick(pool.size())];
      base = add(Rule::Reflexivity, {}, t.term, t.term);
      break;
    }
    case 1: {  // associativity, if a candidate exists
      std::vector<const CTermCell*> cands;
      for (const auto& tc : pool)
        if (is_comp(tc.term) && is_comp(tc.term->left) && tc.term->left->k == tc.term->k)
          cands.push_back(&tc);
      if (cands.empty()) {
        const CTermCell& t = pool[pick(pool.size())];
        base = add(Rule::Reflexivity, {}, t.term, t.term);
        break;
      }
      const CTermP& t = cands[pick(cands.size())]->term;
      base = add(Rule::Associativity, {}, t,
                 CTerm::comp(t->k, t->left->left, CTerm::comp(t->k, t->left->right, t->right)));
      break;
    }
    case 2: {  // exchange
      std::vector<const CTermCell*> cands;
      for (const auto& tc : pool)
        if (is_comp(tc.term) && is_comp(tc.term->left) && is_comp(tc.term->right) &&
            tc.term->left->k == tc.term->right->k && tc.term->k < tc.term->left->k)
          cands.push_back(&tc);
      if (cands.empty()) {
        const CTermCell& t = pool[pick(pool.size())];
        base = add(Rule::Reflexivity, {}, t.term, t.term);
        break;
      }
      const CTermP& t = cands[pick(cands.size())]->term;
      int l = t->k, k = t->left->k;
      base = add(Rule::Exchange, {}, t,
                 CTerm::comp(k, CTerm::comp(l, t->left->left, t->right->left),
                             CTerm::comp(l, t->left->right, t->right->right)));
      break;
    }
    case 3: {  // identity-left
      const CTermCell& t = pool[pick(pool.size())];
      if (t.term->dim == 0) {
        base = add(Rule::Reflexivity, {}, t.term, t.term);
        break;
      }
      int k = static_cast<int>(pick(static_cast<std::size_t>(t.term->dim)));
      Cell b = iterated_boundary(p, t.cell, k, BoundarySide::Codomain);
      CTermP tower = identity_tower(p, b, t.term->dim);
      base = add(Rule::IdentityLeft, {}, CTerm::comp(k, tower, t.term), t.term);
      break;
    }
    default: {  // identity-right
      const CTermCell& t = pool[pick(pool.size())];
      if (t.term->dim == 0) {
        base = add(Rule::Reflexivity, {}, t.term, t.term);
        break;
      }
      int k = static_cast<int>(pick(static_cast<std::size_t>(t.term->dim)));
      Cell b = iterated_boundary(p, t.cell, k, BoundarySide::Domain);
      CTermP tower = identity_tower(p, b, t.term->dim);
      base = add(Rule::IdentityRight, {}, CTerm::comp(k, t.term, tower), t.term);
      break;
    }
  }

  // a few structural steps on top
  std::size_t extra = pick(3);
  std::size_t cur = base;
  for (std::size_t i = 0; i < extra; ++i) {
    Equation concl = pf.steps[cur].conclusion;  // adding steps may reallocate
    std::size_t choice = pick(3);
    if (choice == 0) {
      cur = add(Rule::Symmetry, {cur}, concl.c_right, concl.c_left);
    } else if (choice == 1) {
      std::size_t sym = add(Rule::Symmetry, {cur}, concl.c_right, concl.c_left);
      cur = add(Rule::Transitivity, {cur, sym}, concl.c_left, concl.c_left);
    } else {
      // congruence with a composable partner, if one turns up quickly
      Cell lc = eval_cterm(concl.c_left, p);
      bool done = false;
      for (int attempt = 0; attempt < 20 && !done; ++attempt) {
        const CTermCell& w = pool[pick(pool.size())];
        if (w.term->dim != concl.c_left->dim) continue;
        for (int k = 0; k < concl.c_left->dim && !done; ++k) {
          if (iterated_boundary(p, lc, k, BoundarySide::Domain) !=
              iterated_boundary(p, w.cell, k, BoundarySide::Codomain))
            continue;
          cur = add(Rule::CongruenceLeft, {cur}, CTerm::comp(k, concl.c_left, w.term),
                    CTerm::comp(k, concl.c_right, w.term));
          done = true;
        }
      }
      if (!done) cur = add(Rule::Symmetry, {cur}, concl.c_right, concl.c_left);
    }
  }
  (void)dim;
  return pf;
}

std::string mutate_proof_text(const std::string& text, std::mt19937& rng) {
  struct Tok {
    std::size_t begin, end;
    bool word;
  };
  std::vector<Tok> toks;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                 text[j] == '_' || text[j] == '-'))
        ++j;
      toks.push_back({i, j, true});
      i = j;
    } else {
      toks.push_back({i, i + 1, false});
      ++i;
    }
  }
  if (toks.empty()) return text;
  auto pick = [&rng](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const Tok& t = toks[pick(toks.size())];
  std::string tok = text.substr(t.begin, t.end - t.begin);
  std::string repl;
  if (t.word) {
    bool numeric = std::isdigit(static_cast<unsigned char>(tok[0]));
    if (numeric) {
      long v = std::stol(tok);
      repl = std::to_string(pick(2) ? v + 1 : std::max(0l, v - 1));
      if (repl == tok) repl = std::to_string(v + 2);
    } else {
      // swap with another word from the text
      std::vector<std::string> words;
      for (const Tok& o : toks) {
        if (!o.word) continue;
        std::string w = text.substr(o.begin, o.end - o.begin);
        if (w != tok && !std::isdigit(static_cast<unsigned char>(w[0]))) words.push_back(w);
      }
      repl = words.empty() ? tok + "_" : words[pick(words.size())];
    }
  } else {
    static const char puncts[] = "()[]{}:=*.,";
    char c = puncts[pick(sizeof(puncts) - 1)];
    repl = std::string(1, c == tok[0] ? (c == '(' ? ')' : '(') : c);
  }
  return text.substr(0, t.begin) + repl + text.substr(t.end);
}

}  // namespace mltc
