#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ctrsnc/errors.hpp"

namespace ctrsnc {

/// An immutable first-order term: either a variable or a function symbol
/// applied to a (possibly empty) list of argument terms. Terms are values
/// with structural sharing; copies are cheap and all operations are pure.
class Term {
 public:
  /// Placeholder variable "_"; meant to be overwritten before use.
  Term();

  static Term var(std::string name);
  static Term app(std::string symbol, std::vector<Term> args = {});

  bool is_var() const { return data_->is_var; }
  /// Variable name or function symbol, depending on is_var().
  const std::string& head() const { return data_->head; }
  const std::vector<Term>& args() const { return data_->args; }
  int arity() const { return static_cast<int>(data_->args.size()); }

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
  /// Structural total order (variables before applications); used to get
  /// deterministic iteration out of ordered containers.
  bool operator<(const Term& other) const;

  /// Prefix notation: bare identifier for variables and constants,
  /// f(t1,...,tn) otherwise.
  std::string str() const;

 private:
  struct Data {
    bool is_var;
    std::string head;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

/// Argument path from the root; indices are 1-based, the empty path is the
/// root position.
using Position = std::vector<int>;

std::string position_str(const Position& p);

/// Subterm addressed by p, or nullptr when p is not a position of t.
const Term* subterm_at_opt(const Term& t, const Position& p);
/// Subterm addressed by p; throws PositionError when absent.
Term subterm_at(const Term& t, const Position& p);
/// Copy of t with the subterm at p replaced by u; throws PositionError.
Term replace_at(const Term& t, const Position& p, const Term& u);

/// Positions of non-variable subterms in leftmost-outermost (pre-order)
/// order; the root comes first.
std::vector<Position> function_positions(const Term& t);

/// A finite map from variables to terms. Identity bindings are never
/// stored. Application is simultaneous: images are not re-substituted.
class Substitution {
 public:
  Substitution() = default;
  static Substitution singleton(const std::string& var, Term image);

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const Term* lookup(const std::string& var) const;
  /// Adds (or overwrites) a binding; x -> x is dropped.
  void bind(const std::string& var, Term image);

  Term apply(const Term& t) const;

  /// Left-to-right composition: apply(x, compose(a, b)) == apply(apply(x, a), b).
  Substitution compose(const Substitution& then) const;
  /// Union of two substitutions with disjoint domains.
  Substitution merge(const Substitution& other) const;
  Substitution restricted_to(const std::set<std::string>& domain) const;

  const std::map<std::string, Term>& bindings() const { return map_; }
  bool operator==(const Substitution& other) const { return map_ == other.map_; }
  bool operator!=(const Substitution& other) const { return !(*this == other); }

  std::string str() const;

 private:
  std::map<std::string, Term> map_;
};

/// An injective variable-to-variable map; unmapped names are fixed.
class Renaming {
 public:
  Renaming() = default;
  void add(std::string from, std::string to);
  const std::string& apply_name(const std::string& name) const;
  Term apply(const Term& t) const;
  Renaming inverse() const;
  Substitution as_substitution() const;
  const std::map<std::string, std::string>& mapping() const { return map_; }
  bool operator==(const Renaming& other) const { return map_ == other.map_; }

 private:
  std::map<std::string, std::string> map_;
};

/// Appends the variables of t to `order` in leftmost first-occurrence order;
/// `seen` carries the already collected names.
void collect_vars(const Term& t, std::vector<std::string>& order,
                  std::set<std::string>& seen);
std::set<std::string> vars_of(const Term& t);
bool is_ground(const Term& t);
bool occurs(const std::string& var, const Term& t);

/// Smallest name of the shape _v0, _v1, ... not contained in `used`; the
/// chosen name is inserted into `used`. Parsers reject user variables with
/// this prefix, so generated names never collide with input.
std::string fresh_var_name(std::set<std::string>& used);

/// Syntactic unification with occurs-check. Returns an idempotent most
/// general unifier, eliminating variables in order of first occurrence in
/// the left-to-right traversal of s then t, or nothing if none exists.
std::optional<Substitution> unify(const Term& s, const Term& t);

/// One-sided matching: a substitution m with apply(pattern, m) == subject.
std::optional<Substitution> match_term(const Term& pattern, const Term& subject);

/// Renames the variables of t that collide with `avoid` to canonical fresh
/// names, deterministically. Every variable of the result lies outside
/// `avoid`; applying the returned renaming to t reproduces the result.
std::pair<Term, Renaming> rename_apart(const Term& t,
                                       const std::set<std::string>& avoid);

}  // namespace ctrsnc
