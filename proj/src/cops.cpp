#include "ctrsnc/cops.hpp"

#include <cctype>
#include <sstream>

namespace ctrsnc {

namespace {

bool ident_char(char c) {
  if (std::isspace(static_cast<unsigned char>(c))) return false;
  switch (c) {
    case '(':
    case ')':
    case ',':
    case '|':
    case '"':
      return false;
    default:
      return true;
  }
}

struct RawTerm {
  std::string head;
  std::optional<std::vector<RawTerm>> args;  // nullopt: bare identifier
  int line = 0;
  int column = 0;
};

struct RawRule {
  RawTerm lhs;
  RawTerm rhs;
  std::vector<std::pair<RawTerm, RawTerm>> conditions;
};

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      advance();
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c, const std::string& what) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail("expected " + what);
    advance();
  }

  bool try_consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }

  // Next token is an identifier (maximal run of identifier characters).
  bool at_ident() {
    skip_space();
    return pos_ < text_.size() && ident_char(text_[pos_]);
  }

  std::string ident(const std::string& what) {
    skip_space();
    if (pos_ >= text_.size() || !ident_char(text_[pos_]))
      fail("expected " + what);
    std::size_t begin = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) advance();
    return std::string(text_.substr(begin, pos_ - begin));
  }

  // Raw text up to the parenthesis closing the current section; nested
  // parentheses are allowed, so comments can contain balanced text.
  std::string balanced_until_close() {
    std::size_t begin = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) return std::string(text_.substr(begin, pos_ - begin));
        --depth;
      }
      advance();
    }
    fail("unterminated section");
  }

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

RawTerm parse_raw_term(Cursor& cur) {
  cur.skip_space();
  RawTerm t;
  t.line = cur.line();
  t.column = cur.column();
  t.head = cur.ident("a term");
  if (t.head == "->" || t.head == "==")
    cur.fail("expected a term, found '" + t.head + "'");
  if (cur.try_consume('(')) {
    t.args.emplace();
    if (!cur.try_consume(')')) {
      do {
        t.args->push_back(parse_raw_term(cur));
      } while (cur.try_consume(','));
      cur.expect(')', "')' after argument list");
    }
  }
  return t;
}

class Resolver {
 public:
  explicit Resolver(const std::set<std::string>& variables)
      : variables_(variables) {}

  Term resolve(const RawTerm& raw) {
    if (variables_.count(raw.head)) {
      if (raw.args)
        throw ParseError("variable " + raw.head + " used as a function symbol",
                         raw.line, raw.column);
      return Term::var(raw.head);
    }
    int arity = raw.args ? static_cast<int>(raw.args->size()) : 0;
    auto [it, inserted] = arities_.emplace(raw.head, arity);
    if (!inserted && it->second != arity)
      throw ParseError("symbol " + raw.head + " used with arities " +
                           std::to_string(it->second) + " and " +
                           std::to_string(arity),
                       raw.line, raw.column);
    std::vector<Term> args;
    if (raw.args)
      for (const RawTerm& a : *raw.args) args.push_back(resolve(a));
    return Term::app(raw.head, std::move(args));
  }

 private:
  const std::set<std::string>& variables_;
  std::map<std::string, int> arities_;
};

}  // namespace

CopsDocument parse_cops(std::string_view text) {
  Cursor cur(text);
  std::optional<std::string> condition_type;
  std::optional<std::vector<std::string>> declared;
  std::optional<std::vector<RawRule>> raw_rules;
  std::optional<std::string> comment;
  int rules_line = 1, rules_col = 1;

  while (!cur.at_end()) {
    cur.expect('(', "'(' starting a section");
    std::string section = cur.ident("a section name");
    if (section == "CONDITIONTYPE") {
      if (condition_type) cur.fail("duplicate CONDITIONTYPE section");
      condition_type = cur.ident("a condition type");
      if (*condition_type != "ORIENTED")
        cur.fail("unsupported condition type " + *condition_type +
                 " (only ORIENTED is supported)");
      cur.expect(')', "')' closing CONDITIONTYPE");
    } else if (section == "VAR") {
      if (declared) cur.fail("duplicate VAR section");
      declared.emplace();
      while (cur.at_ident()) {
        std::string name = cur.ident("a variable name");
        if (name.rfind("_v", 0) == 0)
          cur.fail("variable name " + name +
                   " is reserved (names starting with _v are generated)");
        declared->push_back(name);
      }
      cur.expect(')', "')' closing VAR");
    } else if (section == "RULES") {
      if (raw_rules) cur.fail("duplicate RULES section");
      rules_line = cur.line();
      rules_col = cur.column();
      raw_rules.emplace();
      while (!cur.try_consume(')')) {
        RawRule rule;
        rule.lhs = parse_raw_term(cur);
        std::string arrow = cur.ident("'->'");
        if (arrow != "->") cur.fail("expected '->' after rule left-hand side");
        rule.rhs = parse_raw_term(cur);
        if (cur.try_consume('|')) {
          do {
            RawTerm s = parse_raw_term(cur);
            std::string eq = cur.ident("'=='");
            if (eq != "==") cur.fail("expected '==' in condition");
            RawTerm t = parse_raw_term(cur);
            rule.conditions.emplace_back(std::move(s), std::move(t));
          } while (cur.try_consume(','));
        }
        raw_rules->push_back(std::move(rule));
      }
    } else if (section == "COMMENT") {
      std::string body = cur.balanced_until_close();
      cur.expect(')', "')' closing COMMENT");
      if (comment)
        *comment += body;
      else
        comment = body;
    } else {
      cur.fail("unknown section " + section);
    }
  }

  if (!raw_rules) throw ParseError("missing RULES section", 1, 1);

  std::set<std::string> variables;
  if (declared) variables.insert(declared->begin(), declared->end());

  Resolver resolver(variables);
  std::vector<Rule> rules;
  bool any_conditional = false;
  for (const RawRule& raw : *raw_rules) {
    Rule rule;
    if (variables.count(raw.lhs.head) && !raw.lhs.args)
      throw ParseError("left-hand side is the variable " + raw.lhs.head,
                       raw.lhs.line, raw.lhs.column);
    rule.lhs = resolver.resolve(raw.lhs);
    rule.rhs = resolver.resolve(raw.rhs);
    for (const auto& [s, t] : raw.conditions)
      rule.conditions.emplace_back(resolver.resolve(s), resolver.resolve(t));
    any_conditional = any_conditional || !rule.conditions.empty();
    rules.push_back(std::move(rule));
  }
  if (any_conditional && !condition_type)
    throw ParseError(
        "conditional rules require a (CONDITIONTYPE ORIENTED) section",
        rules_line, rules_col);

  CopsDocument doc;
  try {
    doc.system = Ctrs::make(std::move(rules));
  } catch (const SystemError& e) {
    throw ParseError(e.what(), rules_line, rules_col);
  }
  doc.declared_variables = declared.value_or(std::vector<std::string>{});
  doc.comment = std::move(comment);
  return doc;
}

std::string print_cops(const Ctrs& system) {
  std::vector<std::string> var_order;
  std::set<std::string> seen;
  for (const Rule& rule : system.rules()) collect_vars(rule, var_order, seen);

  std::ostringstream out;
  out << "(CONDITIONTYPE ORIENTED)\n";
  out << "(VAR ";
  for (std::size_t i = 0; i < var_order.size(); ++i) {
    if (i > 0) out << ' ';
    out << var_order[i];
  }
  out << ")\n";
  out << "(RULES\n";
  for (const Rule& rule : system.rules()) out << "  " << rule.str() << '\n';
  out << ")";
  return out.str();
}

}  // namespace ctrsnc
