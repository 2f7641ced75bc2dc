#pragma once

#include <optional>
#include <set>
#include <vector>

#include "ctrsnc/analysis.hpp"
#include "ctrsnc/ctrs.hpp"

// Independent reference implementations used to cross-check the library.
// Everything here is deliberately naive: enumeration over small bounded
// universes instead of directed search.
namespace oracles {

// Enumerates all substitutions from `vars` into `universe` and reports
// whether any makes s and t syntactically equal.
inline bool have_common_instance(const ctrsnc::Term& s, const ctrsnc::Term& t,
                                 const std::vector<ctrsnc::Term>& universe) {
  std::vector<std::string> vars;
  {
    std::set<std::string> seen;
    ctrsnc::collect_vars(s, vars, seen);
    ctrsnc::collect_vars(t, vars, seen);
  }
  std::vector<std::size_t> choice(vars.size(), 0);
  for (;;) {
    ctrsnc::Substitution sigma;
    for (std::size_t i = 0; i < vars.size(); ++i)
      sigma.bind(vars[i], universe[choice[i]]);
    if (sigma.apply(s) == sigma.apply(t)) return true;
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == universe.size()) {
      choice[i] = 0;
      ++i;
    }
    if (i == choice.size()) return false;
  }
}

// All terms of depth <= depth over a tiny signature and the given variables;
// the instantiation universe for the brute-force unifier.
inline std::vector<ctrsnc::Term> term_universe(int depth) {
  std::vector<ctrsnc::Term> cur = {
      ctrsnc::Term::var("x"), ctrsnc::Term::var("y"),
      ctrsnc::Term::app("a"), ctrsnc::Term::app("b")};
  for (int d = 0; d < depth; ++d) {
    std::vector<ctrsnc::Term> next = cur;
    for (const ctrsnc::Term& t : cur) next.push_back(ctrsnc::Term::app("g", {t}));
    for (const ctrsnc::Term& t : cur)
      next.push_back(ctrsnc::Term::app("k", {t, cur.front()}));
    cur = std::move(next);
  }
  return cur;
}

// Plain one-step reducts of t in an unconditional system without extra
// right-hand-side variables. Written directly against match/replace so it
// shares no search code with the library.
inline std::vector<ctrsnc::Term> naive_reducts(const ctrsnc::Term& t,
                                               const ctrsnc::Ctrs& trs) {
  std::vector<ctrsnc::Term> out;
  for (const ctrsnc::Position& p : ctrsnc::function_positions(t)) {
    ctrsnc::Term sub = ctrsnc::subterm_at(t, p);
    for (const ctrsnc::Rule& rule : trs.rules()) {
      std::optional<ctrsnc::Substitution> m = ctrsnc::match_term(rule.lhs, sub);
      if (!m) continue;
      out.push_back(ctrsnc::replace_at(t, p, m->apply(rule.rhs)));
    }
  }
  return out;
}

inline std::set<ctrsnc::Term> reducts_to_depth(const ctrsnc::Term& t,
                                               const ctrsnc::Ctrs& trs,
                                               int depth) {
  std::set<ctrsnc::Term> all{t};
  std::vector<ctrsnc::Term> frontier{t};
  for (int d = 0; d < depth; ++d) {
    std::vector<ctrsnc::Term> next;
    for (const ctrsnc::Term& u : frontier)
      for (ctrsnc::Term& v : naive_reducts(u, trs))
        if (all.insert(v).second) next.push_back(v);
    frontier = std::move(next);
  }
  return all;
}

// Exhaustive joint reduction: do s and t reach a common term within the
// given depth?
inline bool joinable_within(const ctrsnc::Term& s, const ctrsnc::Term& t,
                            const ctrsnc::Ctrs& trs, int depth) {
  std::set<ctrsnc::Term> from_s = reducts_to_depth(s, trs, depth);
  for (const ctrsnc::Term& u : reducts_to_depth(t, trs, depth))
    if (from_s.count(u)) return true;
  return false;
}

// Brute-force critical pair enumeration: a double loop over rule pairs and
// non-variable positions, with the inner rule renamed apart.
struct NaiveCp {
  ctrsnc::Term left;
  ctrsnc::Term right;
};

inline std::vector<NaiveCp> naive_critical_pairs(const ctrsnc::Ctrs& system) {
  std::vector<NaiveCp> out;
  const auto& rules = system.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t j = 0; j < rules.size(); ++j) {
      auto [inner, rho] =
          ctrsnc::rename_apart(rules[j], ctrsnc::vars_of(rules[i]));
      for (const ctrsnc::Position& p :
           ctrsnc::function_positions(rules[i].lhs)) {
        if (i == j && p.empty()) continue;
        std::optional<ctrsnc::Substitution> mgu =
            ctrsnc::unify(ctrsnc::subterm_at(rules[i].lhs, p), inner.lhs);
        if (!mgu) continue;
        NaiveCp cp;
        cp.left = mgu->apply(ctrsnc::replace_at(rules[i].lhs, p, inner.rhs));
        cp.right = mgu->apply(rules[i].rhs);
        out.push_back(std::move(cp));
      }
    }
  }
  return out;
}

}  // namespace oracles
