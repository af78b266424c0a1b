#include "mltc/verify.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "mltc/term.hpp"

namespace mltc {

namespace {

std::string fail_detail(const std::string& what, const Cell& lhs, const Cell& rhs) {
  return what + ": " + lhs.render() + " vs " + rhs.render();
}

// memoized iterated boundaries, keyed per (k, side)
class BoundaryMemo {
 public:
  explicit BoundaryMemo(const Presentation& p) : p_(p) {}

  const Cell& at(const Cell& u, int k, BoundarySide side) {
    auto& table = side == BoundarySide::Domain ? dom_ : cod_;
    auto& m = table[k];
    auto it = m.find(u);
    if (it != m.end()) return it->second;
    return m.emplace(u, iterated_boundary(p_, u, k, side)).first->second;
  }

  bool composable(const Cell& u, int k, const Cell& v) {
    int m = std::max(u.dim(), v.dim());
    if (k < 0 || k >= m) return false;
    Cell uu = iterated_identity(u, m);
    Cell vv = iterated_identity(v, m);
    return at(uu, k, BoundarySide::Domain) == at(vv, k, BoundarySide::Codomain);
  }

 private:
  const Presentation& p_;
  std::map<int, std::unordered_map<Cell, Cell, CellHash>> dom_, cod_;
};

// many-to-one cells grouped by target object
std::map<std::string, std::vector<Cell>> by_target(const Presentation& p,
                                                   const std::vector<Cell>& cells) {
  std::map<std::string, std::vector<Cell>> out;
  for (const Cell& c : cells) {
    auto t = target_object(p, c);
    if (t) out[*t].push_back(c);
  }
  return out;
}

// level-n indets grouped by codomain
std::map<std::string, std::vector<std::string>> codomain_index(const Presentation& p, int n) {
  std::map<std::string, std::vector<std::string>> out;
  if (n < 1 || n > p.top_dim()) return out;
  for (const std::string& f : p.levels[n].order) out[p.decl(f).codomain].push_back(f);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// random cells

Cell random_pasting_diagram(const Presentation& p, int n, int occ_target, std::mt19937& rng) {
  auto pick = [&rng](std::size_t m) {
    return std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
  };
  if (n == 0) return Cell::name(p.levels[0].order[pick(p.levels[0].order.size())]);
  auto cod = codomain_index(p, n);
  const auto& gens = p.levels[n].order;
  Cell u = gens.empty() ? Cell::obj_id(p.levels[n - 1].order[pick(p.levels[n - 1].order.size())], n)
                        : indet_cell(p, gens[pick(gens.size())]);
  for (int guard = 0; guard < 8 * occ_target; ++guard) {
    if (static_cast<int>(occurrences(u, OccKind::Indets).size()) >= occ_target) break;
    std::vector<std::string> slots = occurrences(u, OccKind::Objects);
    if (slots.empty()) break;
    std::size_t r = pick(slots.size());
    auto it = cod.find(slots[r]);
    if (it == cod.end()) continue;
    const std::string& f = it->second[pick(it->second.size())];
    u = multicompose(p, u, r, indet_cell(p, f)).cell;
  }
  return u;
}

Cell random_cell(const Presentation& p, int n, int occ_target, std::mt19937& rng) {
  if (n == 0) return random_pasting_diagram(p, 0, occ_target, rng);
  std::uniform_int_distribution<int> coin(0, 2);
  if (coin(rng) == 0) {
    // identity over a lower cell, some slots filled
    Cell w = random_cell(p, n - 1, std::max(1, occ_target / 2), rng);
    Cell u = identity_over(w);
    auto cod = codomain_index(p, n);
    auto pick = [&rng](std::size_t m) {
      return std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
    };
    for (int guard = 0; guard < 4 * occ_target; ++guard) {
      if (static_cast<int>(occurrences(u, OccKind::Indets).size()) >= occ_target) break;
      std::vector<std::string> slots = occurrences(u, OccKind::Objects);
      if (slots.empty()) break;
      std::size_t r = pick(slots.size());
      auto it = cod.find(slots[r]);
      if (it == cod.end()) continue;
      u = multicompose(p, u, r, indet_cell(p, it->second[pick(it->second.size())])).cell;
    }
    return u;
  }
  return random_pasting_diagram(p, n, occ_target, rng);
}

// ---------------------------------------------------------------------------
// multicomposition laws

std::vector<CheckResult> check_multicategory_laws(const Presentation& p, int bound, unsigned seed,
                                                  int random_instances) {
  CheckResult identity{"multicomposition identity laws", true, 0, ""};
  CheckResult commutativity{"multicomposition commutativity", true, 0, ""};
  CheckResult associativity{"multicomposition associativity", true, 0, ""};
  CheckResult bookkeeping{"splice source bookkeeping and boundary laws", true, 0, ""};

  auto check_splice = [&](const Cell& u, std::size_t r, const Cell& v, const Cell& result) {
    ++bookkeeping.instances;
    if (!bookkeeping.pass) return;
    // object occurrences: position r replaced by v's block, in order
    std::vector<std::string> expect = occurrences(u, OccKind::Objects);
    std::vector<std::string> block = occurrences(v, OccKind::Objects);
    expect.erase(expect.begin() + static_cast<long>(r));
    expect.insert(expect.begin() + static_cast<long>(r), block.begin(), block.end());
    if (occurrences(result, OccKind::Objects) != expect) {
      bookkeeping.pass = false;
      bookkeeping.detail = "object occurrences of " + result.render() + " are not a splice";
      return;
    }
    Boundary bu = boundary(p, u);
    Boundary bv = boundary(p, v);
    Boundary br = boundary(p, result);
    if (br.domain != replace(p, bu.domain, r, bv.domain) || br.codomain != bu.codomain) {
      bookkeeping.pass = false;
      bookkeeping.detail = "boundary law failed for " + result.render();
      return;
    }
    if (result.dim() >= 2) {
      Boundary bd = boundary(p, br.domain);
      Boundary bc = boundary(p, br.codomain);
      if (bd.domain != bc.domain || bd.codomain != bc.codomain) {
        bookkeeping.pass = false;
        bookkeeping.detail = "globularity failed for " + result.render();
      }
    }
  };

  auto run_laws = [&](const std::vector<Cell>& cells,
                      const std::map<std::string, std::vector<Cell>>& m21, int n) {
    for (const Cell& u : cells) {
      std::vector<std::string> slots = occurrences(u, OccKind::Objects);
      for (std::size_t r = 0; r < slots.size(); ++r) {
        Cell lhs = multicompose(p, u, r, Cell::obj_id(slots[r], n)).cell;
        ++identity.instances;
        if (lhs != u && identity.pass) {
          identity.pass = false;
          identity.detail = fail_detail("u (.) 1 != u", lhs, u);
        }
      }
      auto t = target_object(p, u);
      if (t) {
        Cell lhs = multicompose(p, Cell::obj_id(*t, n), 0, u).cell;
        ++identity.instances;
        if (lhs != u && identity.pass) {
          identity.pass = false;
          identity.detail = fail_detail("1 (.) u != u", lhs, u);
        }
      }
      // commutativity at distinct slots
      for (std::size_t r = 0; r < slots.size(); ++r) {
        auto vi = m21.find(slots[r]);
        if (vi == m21.end()) continue;
        for (std::size_t q = r + 1; q < slots.size(); ++q) {
          auto wi = m21.find(slots[q]);
          if (wi == m21.end()) continue;
          for (const Cell& v : vi->second) {
            auto a1 = multicompose(p, u, r, v);
            std::size_t q1 = *a1.prov.left[q];
            for (const Cell& w : wi->second) {
              Cell lhs = multicompose(p, a1.cell, q1, w).cell;
              auto a2 = multicompose(p, u, q, w);
              std::size_t r1 = *a2.prov.left[r];
              Cell rhs = multicompose(p, a2.cell, r1, v).cell;
              ++commutativity.instances;
              if (lhs != rhs && commutativity.pass) {
                commutativity.pass = false;
                commutativity.detail = fail_detail("(u.v).w != (u.w).v", lhs, rhs);
              }
            }
          }
        }
      }
      // associativity through the right operand
      for (std::size_t r = 0; r < slots.size(); ++r) {
        auto vi = m21.find(slots[r]);
        if (vi == m21.end()) continue;
        for (const Cell& v : vi->second) {
          auto a1 = multicompose(p, u, r, v);
          check_splice(u, r, v, a1.cell);
          std::vector<std::string> vslots = occurrences(v, OccKind::Objects);
          for (std::size_t q = 0; q < vslots.size(); ++q) {
            auto wi = m21.find(vslots[q]);
            if (wi == m21.end()) continue;
            for (const Cell& w : wi->second) {
              Cell lhs = multicompose(p, a1.cell, a1.prov.right[q], w).cell;
              Cell rhs = multicompose(p, u, r, multicompose(p, v, q, w).cell).cell;
              ++associativity.instances;
              if (lhs != rhs && associativity.pass) {
                associativity.pass = false;
                associativity.detail = fail_detail("(u.v).w != u.(v.w)", lhs, rhs);
              }
            }
          }
        }
      }
    }
  };

  for (int n = 1; n <= p.top_dim(); ++n) {
    std::vector<Cell> cells = enumerate_cells(p, n, bound);
    run_laws(cells, by_target(p, cells), n);
  }

  // seeded larger random instances
  std::mt19937 rng(seed);
  int made = p.top_dim() >= 1 ? 0 : random_instances;
  int n = std::max(1, p.top_dim());
  auto cod = codomain_index(p, n);
  auto pick = [&rng](std::size_t m) {
    return std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
  };
  auto random_fitting = [&](const std::string& x) -> Cell {
    auto it = cod.find(x);
    if (it == cod.end()) return Cell::obj_id(x, n);
    Cell v = indet_cell(p, it->second[pick(it->second.size())]);
    for (int g = 0; g < 3; ++g) {
      std::vector<std::string> s = occurrences(v, OccKind::Objects);
      if (s.empty()) break;
      std::size_t r = pick(s.size());
      auto jt = cod.find(s[r]);
      if (jt == cod.end()) continue;
      v = multicompose(p, v, r, indet_cell(p, jt->second[pick(jt->second.size())])).cell;
    }
    return v;
  };
  // presentations whose arrows consume slots without spawning new ones run
  // out of law instances; the draw budget keeps the loop finite regardless
  long draw_budget = 64L * random_instances + 1024;
  while (made < random_instances && draw_budget-- > 0) {
    Cell u = random_cell(p, n, bound + 6, rng);
    std::vector<std::string> slots = occurrences(u, OccKind::Objects);
    if (slots.empty()) {
      if (auto t = target_object(p, u)) {
        Cell lhs = multicompose(p, Cell::obj_id(*t, n), 0, u).cell;
        ++identity.instances;
        ++made;
        if (lhs != u && identity.pass) {
          identity.pass = false;
          identity.detail = fail_detail("random: 1 (.) u != u", lhs, u);
        }
      }
      continue;
    }
    std::size_t r = pick(slots.size());
    Cell v = random_fitting(slots[r]);
    // identity
    {
      Cell lhs = multicompose(p, u, r, Cell::obj_id(slots[r], n)).cell;
      ++identity.instances;
      ++made;
      if (lhs != u && identity.pass) {
        identity.pass = false;
        identity.detail = fail_detail("random: u (.) 1 != u", lhs, u);
      }
    }
    if (slots.size() >= 2) {
      std::size_t q = pick(slots.size());
      if (q != r) {
        Cell w = random_fitting(slots[q]);
        auto a1 = multicompose(p, u, r, v);
        Cell lhs = multicompose(p, a1.cell, *a1.prov.left[q], w).cell;
        auto a2 = multicompose(p, u, q, w);
        Cell rhs = multicompose(p, a2.cell, *a2.prov.left[r], v).cell;
        ++commutativity.instances;
        ++made;
        if (lhs != rhs && commutativity.pass) {
          commutativity.pass = false;
          commutativity.detail = fail_detail("random commutativity", lhs, rhs);
        }
      }
    }
    {
      auto a1 = multicompose(p, u, r, v);
      std::vector<std::string> vslots = occurrences(v, OccKind::Objects);
      if (!vslots.empty()) {
        std::size_t q = pick(vslots.size());
        Cell w = random_fitting(vslots[q]);
        Cell lhs = multicompose(p, a1.cell, a1.prov.right[q], w).cell;
        Cell rhs = multicompose(p, u, r, multicompose(p, v, q, w).cell).cell;
        ++associativity.instances;
        ++made;
        if (lhs != rhs && associativity.pass) {
          associativity.pass = false;
          associativity.detail = fail_detail("random associativity", lhs, rhs);
        }
      }
    }
  }
  return {identity, commutativity, associativity, bookkeeping};
}

// ---------------------------------------------------------------------------
// omega-categorical laws

std::vector<CheckResult> check_omega_laws(const Presentation& p, int bound, unsigned seed,
                                          int random_instances) {
  CheckResult identity{"composition identity laws", true, 0, ""};
  CheckResult associativity{"composition associativity", true, 0, ""};
  CheckResult exchange{"composition exchange", true, 0, ""};
  CheckResult bounds{"composition boundary compatibility", true, 0, ""};

  BoundaryMemo memo(p);
  std::vector<Cell> pool;
  for (int n = 1; n <= p.top_dim(); ++n)
    for (Cell& c : enumerate_cells(p, n, bound)) pool.push_back(std::move(c));

  // identity laws, every k below each cell's dimension
  for (const Cell& u : pool) {
    for (int k = 0; k < u.dim(); ++k) {
      Cell dk = memo.at(u, k, BoundarySide::Domain);
      Cell ck = memo.at(u, k, BoundarySide::Codomain);
      Cell r = compose(p, u, k, iterated_identity(dk, u.dim())).cell;
      Cell l = compose(p, iterated_identity(ck, u.dim()), k, u).cell;
      identity.instances += 2;
      if (r != u && identity.pass) {
        identity.pass = false;
        identity.detail = fail_detail("u *k 1 != u", r, u);
      }
      if (l != u && identity.pass) {
        identity.pass = false;
        identity.detail = fail_detail("1 *k u != u", l, u);
      }
    }
  }

  // composable pairs per k (mixed dimensions included via promotion)
  const long cap = 300000;  // deterministic prefix; the fixtures stay far below it
  int max_dim = p.top_dim();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs(max_dim);
  for (int k = 0; k < max_dim; ++k)
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = 0; j < pool.size(); ++j)
        if (memo.composable(pool[i], k, pool[j])) pairs[k].emplace_back(i, j);

  // boundary compatibility: below the top dimension boundaries compose,
  // at the top they come from the respective operands
  for (int k = 0; k < max_dim && bounds.instances < cap; ++k) {
    for (auto [i, j] : pairs[k]) {
      if (bounds.instances >= cap) break;
      int m = std::max(pool[i].dim(), pool[j].dim());
      Cell uu = iterated_identity(pool[i], m);
      Cell vv = iterated_identity(pool[j], m);
      Cell c = compose(p, uu, k, vv).cell;
      Boundary bc = boundary(p, c);
      Boundary bu = boundary(p, uu);
      Boundary bv = boundary(p, vv);
      Cell expect_dom =
          k == m - 1 ? bv.domain : compose(p, bu.domain, k, bv.domain).cell;
      Cell expect_cod =
          k == m - 1 ? bu.codomain : compose(p, bu.codomain, k, bv.codomain).cell;
      ++bounds.instances;
      if ((bc.domain != expect_dom || bc.codomain != expect_cod) && bounds.pass) {
        bounds.pass = false;
        bounds.detail = "boundary of " + c.render() + "違";
        bounds.detail = "boundary of " + c.render() + " does not follow the recursion";
      }
    }
  }

  for (int k = 0; k < max_dim && associativity.instances < cap; ++k) {
    for (auto [i, j] : pairs[k]) {
      if (associativity.instances >= cap) break;
      Cell uv = compose(p, pool[i], k, pool[j]).cell;
      for (std::size_t w = 0; w < pool.size(); ++w) {
        if (!memo.composable(pool[j], k, pool[w])) continue;
        Cell lhs = compose(p, uv, k, pool[w]).cell;
        Cell rhs = compose(p, pool[i], k, compose(p, pool[j], k, pool[w]).cell).cell;
        ++associativity.instances;
        if (lhs != rhs && associativity.pass) {
          associativity.pass = false;
          associativity.detail = fail_detail("associativity at k=" + std::to_string(k), lhs, rhs);
        }
      }
    }
  }

  // exchange: (u1 *k u1') *l (u2 *k u2') = (u1 *l u2) *k (u1' *l u2')
  for (int k = 1; k < max_dim && exchange.instances < cap; ++k) {
    for (int l = 0; l < k && exchange.instances < cap; ++l) {
      for (auto [i1, j1] : pairs[k]) {
        if (exchange.instances >= cap) break;
        Cell a = compose(p, pool[i1], k, pool[j1]).cell;
        for (auto [i2, j2] : pairs[k]) {
          if (!memo.composable(pool[i1], l, pool[i2])) continue;
          if (!memo.composable(pool[j1], l, pool[j2])) continue;
          Cell b = compose(p, pool[i2], k, pool[j2]).cell;
          if (!memo.composable(a, l, b)) continue;
          Cell lhs = compose(p, a, l, b).cell;
          Cell rhs = compose(p, compose(p, pool[i1], l, pool[i2]).cell, k,
                             compose(p, pool[j1], l, pool[j2]).cell)
                         .cell;
          ++exchange.instances;
          if (lhs != rhs && exchange.pass) {
            exchange.pass = false;
            exchange.detail = fail_detail("exchange l=" + std::to_string(l) +
                                              " k=" + std::to_string(k),
                                          lhs, rhs);
          }
        }
      }
    }
  }

  // random larger instances at the top dimension
  std::mt19937 rng(seed);
  int n = p.top_dim();
  int made = 0;
  while (made < random_instances && n >= 1) {
    Cell u = random_cell(p, n, bound + 4, rng);
    for (int k = 0; k < n; ++k) {
      Cell dk = iterated_boundary(p, u, k, BoundarySide::Domain);
      Cell r = compose(p, u, k, iterated_identity(dk, n)).cell;
      ++identity.instances;
      ++made;
      if (r != u && identity.pass) {
        identity.pass = false;
        identity.detail = fail_detail("random identity law", r, u);
      }
    }
    // chain three cells along the top dimension when possible
    Cell v = random_cell(p, n, bound + 4, rng);
    Cell w = random_cell(p, n, bound + 4, rng);
    if (memo.composable(u, n - 1, v) && memo.composable(v, n - 1, w)) {
      Cell lhs = compose(p, compose(p, u, n - 1, v).cell, n - 1, w).cell;
      Cell rhs = compose(p, u, n - 1, compose(p, v, n - 1, w).cell).cell;
      ++associativity.instances;
      ++made;
      if (lhs != rhs && associativity.pass) {
        associativity.pass = false;
        associativity.detail = fail_detail("random associativity", lhs, rhs);
      }
    }
  }
  return {identity, associativity, exchange, bounds};
}

// ---------------------------------------------------------------------------
// placed composition, replacement, interchange

std::vector<CheckResult> check_placed_replacement_laws(const Presentation& p, int bound) {
  CheckResult pcomp{"placed-composition rules", true, 0, ""};
  CheckResult rep{"replacement laws", true, 0, ""};
  CheckResult mixed{"whisker/replacement interchange", true, 0, ""};
  CheckResult inter{"composition/placed-composition interchange", true, 0, ""};
  CheckResult agree{"placed composition agrees with whiskered composition", true, 0, ""};

  auto fail = [](CheckResult& cr, const std::string& what, const Cell& a, const Cell& b) {
    if (cr.pass) {
      cr.pass = false;
      cr.detail = fail_detail(what, a, b);
    }
  };

  for (int n = 1; n <= p.top_dim(); ++n) {
    std::vector<Cell> cells = enumerate_cells(p, n, bound);
    auto m21 = by_target(p, cells);

    // parallel pools per level-n indet
    std::map<std::string, std::vector<Cell>> parallel;
    for (const std::string& f : p.levels[n].order) {
      Cell fc = indet_cell(p, f);
      std::vector<std::string> src = occurrences(fc, OccKind::Objects);
      for (const Cell& v : cells) {
        auto t = target_object(p, v);
        if (t && *t == p.decl(f).codomain && occurrences(v, OccKind::Objects) == src)
          parallel[f].push_back(v);
      }
    }

    for (const Cell& u : cells) {
      std::vector<std::string> slots = occurrences(u, OccKind::Objects);
      std::vector<std::string> occ = occurrences(u, OccKind::Indets);

      // placed composition identity rules
      for (std::size_t r = 0; r < slots.size(); ++r) {
        Cell lhs = placed_compose(p, u, r, Cell::obj_id(slots[r], n));
        ++pcomp.instances;
        if (lhs != u) fail(pcomp, "u o_r 1 != u", lhs, u);
      }
      if (auto t = target_object(p, u)) {
        Cell lhs = placed_compose(p, Cell::obj_id(*t, n), 0, u);
        ++pcomp.instances;
        if (lhs != u) fail(pcomp, "1 o_0 v != v", lhs, u);
      }

      // placed composition agrees with *_{n-1} after whiskering the domain
      if (n >= 1) {
        Boundary bu = boundary(p, u);
        for (std::size_t r = 0; r < slots.size(); ++r) {
          auto vi = m21.find(slots[r]);
          if (vi == m21.end()) continue;
          for (const Cell& v : vi->second) {
            if (v.is_obj_id()) continue;
            Cell lhs = placed_compose(p, u, r, v);
            Cell rhs = compose(p, u, n - 1, whisker(p, bu.domain, r, v)).cell;
            ++agree.instances;
            if (lhs != rhs) fail(agree, "o_r vs *_{n-1} of whisker", lhs, rhs);
          }
        }
      }

      // replacement identity
      for (std::size_t r = 0; r < occ.size(); ++r) {
        Cell lhs = replace(p, u, r, indet_cell(p, occ[r]));
        ++rep.instances;
        if (lhs != u) fail(rep, "u [r <- f] != u", lhs, u);
      }
      // replacement commutativity and associativity, positions mapped
      // through the occurrence coprojections
      for (std::size_t r = 0; r < occ.size(); ++r) {
        auto pi = parallel.find(occ[r]);
        if (pi == parallel.end()) continue;
        for (const Cell& v : pi->second) {
          ProvenancePair pv = replace_occurrences(p, u, r, v);
          for (std::size_t q = 0; q < occ.size(); ++q) {
            if (q == r) continue;
            auto qi = parallel.find(occ[q]);
            if (qi == parallel.end()) continue;
            for (const Cell& w : qi->second) {
              ProvenancePair pw = replace_occurrences(p, u, q, w);
              Cell lhs = replace(p, replace(p, u, r, v), *pv.left[q], w);
              Cell rhs = replace(p, replace(p, u, q, w), *pw.left[r], v);
              ++rep.instances;
              if (lhs != rhs) fail(rep, "replacement commutativity", lhs, rhs);
            }
          }
          std::vector<std::string> vocc = occurrences(v, OccKind::Indets);
          for (std::size_t q = 0; q < vocc.size(); ++q) {
            auto qi = parallel.find(vocc[q]);
            if (qi == parallel.end()) continue;
            for (const Cell& w : qi->second) {
              Cell lhs = replace(p, replace(p, u, r, v), pv.right[q], w);
              Cell rhs = replace(p, u, r, replace(p, v, q, w));
              ++rep.instances;
              if (lhs != rhs) fail(rep, "replacement associativity", lhs, rhs);
            }
          }
        }
      }
    }

    // whisker/replacement interchange, one dimension up
    if (n + 1 <= p.top_dim()) {
      std::vector<Cell> higher = enumerate_cells(p, n + 1, bound);
      auto m21h = by_target(p, higher);
      std::map<std::string, std::vector<Cell>> parallel_h;
      for (const std::string& f : p.levels[n + 1].order) {
        Cell fc = indet_cell(p, f);
        std::vector<std::string> src = occurrences(fc, OccKind::Objects);
        for (const Cell& v : higher) {
          auto t = target_object(p, v);
          if (t && *t == p.decl(f).codomain && occurrences(v, OccKind::Objects) == src)
            parallel_h[f].push_back(v);
        }
      }
      for (const Cell& w : cells) {
        std::vector<std::string> wocc = occurrences(w, OccKind::Indets);
        for (std::size_t q = 0; q < wocc.size(); ++q) {
          auto ui = m21h.find(wocc[q]);
          if (ui == m21h.end()) continue;
          for (const Cell& u : ui->second) {
            if (u.is_obj_id()) continue;
            Cell wu = whisker(p, w, q, u);
            std::vector<std::string> uocc = occurrences(u, OccKind::Indets);
            for (std::size_t r = 0; r < uocc.size(); ++r) {
              auto pi = parallel_h.find(uocc[r]);
              if (pi == parallel_h.end()) continue;
              for (const Cell& v : pi->second) {
                Cell lhs = replace(p, wu, r, v);
                Cell rhs = whisker(p, w, q, replace(p, u, r, v));
                ++mixed.instances;
                if (lhs != rhs) fail(mixed, "whisker/replacement interchange", lhs, rhs);
              }
            }
          }
        }
      }
    }

    // interchange of *_k with placed composition; a deterministic prefix of
    // the instance space, large enough to cover the fixtures exhaustively
    const long inter_cap = 20000;
    BoundaryMemo memo(p);
    std::unordered_map<Cell, Cell, CellHash> domains;
    auto domain_of = [&](const Cell& c) -> const Cell& {
      auto it = domains.find(c);
      if (it != domains.end()) return it->second;
      return domains.emplace(c, boundary(p, c).domain).first->second;
    };
    for (const Cell& v1 : cells) {
      if (inter.instances >= inter_cap) break;
      std::vector<std::string> v1slots = occurrences(v1, OccKind::Objects);
      for (std::size_t r = 0; r < v1slots.size(); ++r) {
        auto wi = m21.find(v1slots[r]);
        if (wi == m21.end()) continue;
        for (const Cell& v2 : wi->second) {
          if (v2.is_obj_id()) continue;
          if (inter.instances >= inter_cap) break;
          Cell v = placed_compose(p, v1, r, v2);
          for (const Cell& u : cells) {
            for (int k = 0; k < n; ++k) {
              // u *_k (v1 o_r v2) = (u *_k v1) o_r' v2
              if (memo.composable(u, k, v1)) {
                auto z = compose(p, u, k, v1);
                std::size_t rr =
                    k == n - 1 ? r
                               : compose(p, domain_of(u), k, domain_of(v1)).prov.right[r];
                if (memo.composable(u, k, v)) {
                  Cell lhs = compose(p, u, k, v).cell;
                  Cell rhs = placed_compose(p, z.cell, rr, v2);
                  ++inter.instances;
                  if (lhs != rhs) fail(inter, "u *k (v' o v'') interchange", lhs, rhs);
                }
              }
              // (v1 o_r v2) *_k u = (v1 *_k u) o_r' v2   (k < n-1)
              if (k < n - 1 && memo.composable(v1, k, u)) {
                auto z = compose(p, v1, k, u);
                std::size_t rr = *compose(p, domain_of(v1), k, domain_of(u)).prov.left[r];
                if (memo.composable(v, k, u)) {
                  Cell lhs = compose(p, v, k, u).cell;
                  Cell rhs = placed_compose(p, z.cell, rr, v2);
                  ++inter.instances;
                  if (lhs != rhs) fail(inter, "(u' o u'') *k v interchange", lhs, rhs);
                }
              }
            }
          }
        }
      }
    }
  }
  return {pcomp, rep, mixed, inter, agree};
}

// ---------------------------------------------------------------------------
// indecomposability

std::vector<CheckResult> check_indet_characterization(const Presentation& p, int bound) {
  CheckResult indet{"indets are the non-identity indecomposables", true, 0, ""};
  CheckResult wb{"iterated identities factor through iterated identities", true, 0, ""};
  BoundaryMemo memo(p);

  std::vector<Cell> pool;
  for (int n = 1; n <= p.top_dim(); ++n)
    for (Cell& c : enumerate_cells(p, n, bound)) pool.push_back(std::move(c));

  // map composite -> list of (v, k, w) over all pairs
  std::unordered_map<Cell, std::vector<std::tuple<Cell, int, Cell>>, CellHash> decomp;
  for (const Cell& v : pool) {
    for (const Cell& w : pool) {
      int m = std::max(v.dim(), w.dim());
      for (int k = 0; k < m; ++k) {
        if (!memo.composable(v, k, w)) continue;
        Cell c = compose(p, v, k, w).cell;
        decomp[c].emplace_back(v, k, w);
      }
    }
  }

  auto k_identity = [](const Cell& c, int m, int k) {
    Cell cc = iterated_identity(c, m);
    return classify(cc).identity_depth >= m - k;
  };

  for (const auto& [c, ds] : decomp) {
    int m = c.dim();
    for (const auto& [v, k, w] : ds) {
      ++wb.instances;
      if (k_identity(c, m, k)) {
        if (!(k_identity(v, m, k) && k_identity(w, m, k)) && wb.pass) {
          wb.pass = false;
          wb.detail = "a " + std::to_string(k) + "-identity " + c.render() +
                      " decomposes through non-identities " + v.render() + ", " + w.render();
        }
      }
    }
  }

  for (const Cell& u : pool) {
    Classification cl = classify(u);
    bool decomposable = false;
    auto it = decomp.find(u);
    if (it != decomp.end()) {
      for (const auto& [v, k, w] : it->second) {
        if (!k_identity(v, u.dim(), k) && !k_identity(w, u.dim(), k)) {
          decomposable = true;
          break;
        }
      }
    }
    bool expect_indet = !cl.is_identity && !decomposable && u.dim() >= 1;
    ++indet.instances;
    if (cl.is_indet != expect_indet && indet.pass) {
      indet.pass = false;
      indet.detail = u.render() + (cl.is_indet ? " is an indet but decomposes"
                                               : " is indecomposable yet not an indet");
    }
  }
  return {indet, wb};
}

// ---------------------------------------------------------------------------
// multitopic structure

std::vector<CheckResult> check_multitopic_structure(const Presentation& p, int bound) {
  std::vector<CheckResult> out;
  MultitopicSet s = mlt_of_presentation(p);
  for (int n = 1; n <= s.top_dim(); ++n) {
    LawReport rep = check_multitopic_laws(s, n, bound);
    CheckResult cr{"multitopic laws at dimension " + std::to_string(n), rep.ok(), rep.instances,
                   rep.ok() ? "" : rep.violations.front()};
    out.push_back(std::move(cr));
  }
  return out;
}

// ---------------------------------------------------------------------------
// equivalence round trips

std::vector<CheckResult> check_equivalence_roundtrips(const Presentation& p, int bound) {
  CheckResult rt{"computad/multitopic round trips", true, 0, ""};
  CheckResult fun{"morphism functoriality and interchange", true, 0, ""};

  MultitopicSet s = mlt_of_presentation(p);
  Presentation back = computad_of_mlt(s);
  ++rt.instances;
  if (back != p) {
    rt.pass = false;
    rt.detail = "computad_of_mlt(mlt_of_presentation(p)) differs from p";
  }
  MultitopicSet s2 = mlt_of_presentation(back);
  ++rt.instances;
  if (!(s2.base == s.base)) {
    rt.pass = false;
    rt.detail = "mlt_of_presentation(computad_of_mlt(S)) differs from S";
  }
  for (int n = 0; n <= p.top_dim(); ++n) {
    ++rt.instances;
    if (!(truncate(s, n).base == truncate_presentation(p, n))) {
      rt.pass = false;
      rt.detail = "truncation does not commute with the view";
    }
  }

  MltMorphism id = identity_morphism(s);
  MltMorphism idid = compose_morphisms(id, id);
  for (int n = 0; n <= s.top_dim(); ++n) {
    for (const Cell& u : enumerate_pasting_diagrams(s, n, bound)) {
      ++fun.instances;
      if (apply_morphism(id, u) != u || apply_morphism(idid, u) != u) {
        fun.pass = false;
        fun.detail = "identity morphism moved " + u.render();
      }
      if (n >= 1) {
        std::vector<std::string> slots = occurrences(u, OccKind::Objects);
        for (const Cell& v : enumerate_pasting_diagrams(s, n, bound)) {
          auto t = target_object(p, v);
          if (!t) continue;
          for (std::size_t r = 0; r < slots.size(); ++r) {
            if (slots[r] != *t) continue;
            Cell c = multicompose(p, u, r, v).cell;
            ++fun.instances;
            if (apply_morphism(id, c) !=
                multicompose(p, apply_morphism(id, u), r, apply_morphism(id, v)).cell) {
              fun.pass = false;
              fun.detail = "morphism does not commute with multicomposition";
            }
          }
        }
      }
    }
  }
  return {rt, fun};
}

// ---------------------------------------------------------------------------
// readback round trips

std::vector<CheckResult> check_roundtrips(const Presentation& p, int bound) {
  CheckResult c_rt{"composition readback round trip", true, 0, ""};
  CheckResult m_rt{"multicomposition readback round trip", true, 0, ""};
  CheckResult pres{"presentation print/parse round trip", true, 0, ""};
  CheckResult valid{"enumerated cells validate", true, 0, ""};

  for (int n = 0; n <= p.top_dim(); ++n) {
    for (const Cell& u : enumerate_cells(p, n, bound)) {
      ++valid.instances;
      try {
        validate_cell(p, u);
      } catch (const std::exception& e) {
        if (valid.pass) {
          valid.pass = false;
          valid.detail = u.render() + ": " + e.what();
        }
      }
      {
        CTermP t = readback_c(p, u);
        Cell back = eval_cterm(t, p);
        ++c_rt.instances;
        if (back != u && c_rt.pass) {
          c_rt.pass = false;
          c_rt.detail = u.render() + " reads back as " + print_cterm(t) + " evaluating to " +
                        back.render();
        }
      }
      if (classify(u).is_many_to_one) {
        MTermP t = readback_m(p, u);
        Cell back = eval_mterm(t, p);
        ++m_rt.instances;
        if (back != u && m_rt.pass) {
          m_rt.pass = false;
          m_rt.detail = u.render() + " reads back as " + print_mterm(t) + " evaluating to " +
                        back.render();
        }
      }
    }
  }
  ++pres.instances;
  try {
    Presentation again = parse_presentation(print_presentation(p), p.name);
    if (again != p) {
      pres.pass = false;
      pres.detail = "reparsed presentation differs";
    }
  } catch (const std::exception& e) {
    pres.pass = false;
    pres.detail = e.what();
  }
  return {c_rt, m_rt, pres, valid};
}

// ---------------------------------------------------------------------------
// axiom soundness and the word problem

CheckResult check_axiom_soundness(const Presentation& p, int dim, int size_bound, Lang lang) {
  CheckResult cr{"single axiom rewrites preserve evaluation", true, 0, ""};
  if (lang == Lang::C) {
    for (const CTermCell& tc : enumerate_cterms(p, dim, size_bound)) {
      for (const CTermP& nb : axiom_neighbors(tc.term, p)) {
        ++cr.instances;
        if (eval_cterm(nb, p) != tc.cell && cr.pass) {
          cr.pass = false;
          cr.detail = print_cterm(tc.term) + " ~> " + print_cterm(nb) + " changed the value";
        }
      }
    }
  } else {
    for (const MTermCell& tc : enumerate_mterms(p, dim, size_bound)) {
      for (const MTermP& nb : axiom_neighbors(tc.term, p)) {
        ++cr.instances;
        if (eval_mterm(nb, p) != tc.cell && cr.pass) {
          cr.pass = false;
          cr.detail = print_mterm(tc.term) + " ~> " + print_mterm(nb) + " changed the value";
        }
      }
    }
  }
  return cr;
}

CheckResult check_word_problem(const Presentation& p, int dim, int size_bound, Lang lang,
                               int escape_bump) {
  CheckResult cr{"oracle partition matches the normalization kernel", true, 0, ""};
  OraclePartition part = closure_oracle(p, dim, size_bound, lang);
  cr.instances = static_cast<long>(part.printed.size());

  // soundness: one cell per block, exactly
  for (const auto& block : part.blocks) {
    for (std::size_t m : block) {
      if (!(part.cells[m] == part.cells[block.front()])) {
        cr.pass = false;
        cr.detail = "oracle equated " + part.printed[block.front()] + " with " + part.printed[m] +
                    " which evaluate differently";
        return cr;
      }
    }
  }

  // completeness: eval-equal terms must share a block, retrying misses at a
  // raised bound
  std::map<std::string, std::vector<std::size_t>> by_cell;
  for (std::size_t i = 0; i < part.printed.size(); ++i)
    by_cell[part.cells[i].render()].push_back(i);
  std::vector<std::pair<std::string, std::string>> misses;
  for (const auto& [cell, members] : by_cell) {
    for (std::size_t i = 1; i < members.size(); ++i)
      if (!part.same_block(members[0], members[i]))
        misses.emplace_back(part.printed[members[0]], part.printed[members[i]]);
  }
  if (!misses.empty()) {
    OraclePartition raised = closure_oracle(p, dim, size_bound + escape_bump, lang);
    for (const auto& [a, b] : misses) {
      auto ia = raised.index_of(a);
      auto ib = raised.index_of(b);
      if (!ia || !ib || !raised.same_block(*ia, *ib)) {
        cr.pass = false;
        cr.detail = "equal cells not provably equal within the raised bound: " + a + " vs " + b;
        return cr;
      }
    }
    cr.detail = std::to_string(misses.size()) + " pairs needed the raised bound";
  }
  return cr;
}

// ---------------------------------------------------------------------------
// proof fuzzing

std::vector<CheckResult> check_proof_fuzz(const Presentation& p, int dim, int pool_bound,
                                          unsigned seed, int n_valid, int n_mutations) {
  CheckResult valid{"randomly generated proofs check and conclude true equations", true, 0, ""};
  CheckResult mutated{"mutated proofs are rejected or stay sound", true, 0, ""};
  std::vector<CTermCell> pool = enumerate_cterms(p, dim, pool_bound);
  std::mt19937 rng(seed);

  for (int i = 0; i < n_valid; ++i) {
    Proof pf = random_valid_proof(p, dim, rng, pool);
    ++valid.instances;
    try {
      Equation eq = check_proof(p, pf);
      if (!decide_equal(eq.c_left, eq.c_right, p)) {
        valid.pass = false;
        valid.detail = "checked proof concludes a false equation: " + print_equation(eq);
        break;
      }
    } catch (const std::exception& e) {
      valid.pass = false;
      valid.detail = std::string("valid proof rejected: ") + e.what() + "\n" + print_proof(pf);
      break;
    }
  }

  for (int i = 0; i < n_mutations; ++i) {
    Proof pf = random_valid_proof(p, dim, rng, pool);
    std::string text = mutate_proof_text(print_proof(pf), rng);
    ++mutated.instances;
    try {
      Proof pf2 = parse_proof(text, p);
      Equation eq = check_proof(p, pf2);
      if (!decide_equal(eq.c_left, eq.c_right, p)) {
        mutated.pass = false;
        mutated.detail = "mutated proof certified a false equation:\n" + text;
        break;
      }
    } catch (const std::exception&) {
      // rejected: fine
    }
  }
  return {valid, mutated};
}

// ---------------------------------------------------------------------------
// the whole suite at modest bounds

std::vector<CheckResult> run_invariant_suite(const Presentation& p, unsigned seed) {
  std::vector<CheckResult> out;
  auto take = [&out](std::vector<CheckResult> rs) {
    for (auto& r : rs) out.push_back(std::move(r));
  };
  int bound = 3;
  take(check_multicategory_laws(p, bound, seed, 200));
  take(check_omega_laws(p, bound, seed, 100));
  take(check_placed_replacement_laws(p, bound));
  take(check_indet_characterization(p, bound));
  take(check_multitopic_structure(p, bound));
  take(check_equivalence_roundtrips(p, bound));
  take(check_roundtrips(p, bound));
  int dim = p.top_dim();
  int size = dim >= 2 ? 5 : 6;
  out.push_back(check_axiom_soundness(p, dim, size, Lang::C));
  out.push_back(check_word_problem(p, dim, size, Lang::C));
  take(check_proof_fuzz(p, dim, size, seed, 100, 100));
  return out;
}

}  // namespace mltc
