#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctrsnc/term.hpp"

namespace ctrsnc {

/// A conditional rewrite rule l -> r <= s1 == t1, ..., sk == tk. Conditions
/// are oriented: each pair (s, t) is a reachability requirement s ->* t.
struct Rule {
  Term lhs;
  Term rhs;
  std::vector<std::pair<Term, Term>> conditions;
  std::optional<std::string> label;

  bool unconditional() const { return conditions.empty(); }
  bool operator==(const Rule& other) const;
  std::string str() const;
};

void collect_vars(const Rule& rule, std::vector<std::string>& order,
                  std::set<std::string>& seen);
std::set<std::string> vars_of(const Rule& rule);
Rule apply_substitution(const Rule& rule, const Substitution& sigma);
Rule apply_renaming(const Rule& rule, const Renaming& pi);
std::pair<Rule, Renaming> rename_apart(const Rule& rule,
                                       const std::set<std::string>& avoid);

/// A finite set of conditional rewrite rules with an arity-consistent
/// signature inferred from the rules. Rule order is significant: searches
/// enumerate rules by index, so it determines which witness is found first.
class Ctrs {
 public:
  Ctrs() = default;

  /// Validates and packages a rule list. Throws SystemError when a
  /// left-hand side is a variable, a symbol is used with two different
  /// arities, or a name occurs both as a variable and as a symbol.
  static Ctrs make(std::vector<Rule> rules);

  const std::vector<Rule>& rules() const { return rules_; }
  /// Function symbol -> arity, for every symbol occurring in the rules.
  const std::map<std::string, int>& signature() const { return signature_; }
  std::set<std::string> all_vars() const;
  bool empty() const { return rules_.empty(); }

  bool operator==(const Ctrs& other) const { return rules_ == other.rules_; }
  bool operator!=(const Ctrs& other) const { return !(*this == other); }

 private:
  std::vector<Rule> rules_;
  std::map<std::string, int> signature_;
};

/// Variable-discipline classes. Every class contains the ones before it;
/// classify returns the least class whose condition all rules satisfy.
enum class CtrsType {
  Type1 = 1,  // Var(r) u Var(c)  subset of  Var(l)
  Type2 = 2,  // Var(r)           subset of  Var(l)
  Type3 = 3,  // Var(r)           subset of  Var(l) u Var(c)
  Type4 = 4,  // no restriction
};

CtrsType classify(const Ctrs& system);

/// The system with every condition dropped. Over-approximates rewriting:
/// anything reachable under the CTRS is reachable under its underlying TRS.
Ctrs underlying_trs(const Ctrs& system);

bool is_unconditional(const Ctrs& system);

}  // namespace ctrsnc
