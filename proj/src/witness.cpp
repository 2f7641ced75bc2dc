#include "ctrsnc/witness.hpp"

#include <sstream>

#include <json.hpp>

#include "ctrsnc/cops.hpp"

namespace ctrsnc {

namespace {

constexpr int kSchemaVersion = 1;

CheckResult reject(const std::string& message) {
  return CheckResult{false, message};
}

}  // namespace

CheckResult check_witness(const Ctrs& system, const Witness& witness) {
  // Re-verify preprocessing: each removal must hold in the system as
  // reduced by the removals before it.
  std::vector<bool> removed(system.rules().size(), false);
  for (std::size_t k = 0; k < witness.preprocessing.size(); ++k) {
    const RemovedRule& rr = witness.preprocessing[k];
    if (rr.index < 0 || rr.index >= static_cast<int>(system.rules().size()))
      return reject("removed rule " + std::to_string(rr.index) +
                    " out of range");
    if (removed[static_cast<std::size_t>(rr.index)])
      return reject("rule " + std::to_string(rr.index) + " removed twice");
    const Rule& rule = system.rules()[static_cast<std::size_t>(rr.index)];
    if (rr.condition_index < 0 ||
        rr.condition_index >= static_cast<int>(rule.conditions.size()))
      return reject("removal of rule " + std::to_string(rr.index) +
                    " cites condition " + std::to_string(rr.condition_index) +
                    ", which it does not have");
    std::vector<Rule> current_rules;
    for (std::size_t i = 0; i < system.rules().size(); ++i)
      if (!removed[i]) current_rules.push_back(system.rules()[i]);
    Ctrs current = Ctrs::make(std::move(current_rules));
    const auto& [s, t] =
        rule.conditions[static_cast<std::size_t>(rr.condition_index)];
    bool holds = false;
    switch (rr.reason) {
      case RemovedRule::Reason::TcapNonUnifiable:
        holds = condition_tcap_infeasible(current, s, t);
        break;
      case RemovedRule::Reason::RootUnreachable:
        holds = condition_root_unreachable(current, s, t);
        break;
    }
    if (!holds)
      return reject("removal " + std::to_string(k) + " (rule " +
                    std::to_string(rr.index) + ", " +
                    removal_reason_name(rr.reason) + ") does not re-verify");
    removed[static_cast<std::size_t>(rr.index)] = true;
  }
  std::vector<Rule> reduced_rules;
  for (std::size_t i = 0; i < system.rules().size(); ++i)
    if (!removed[i]) reduced_rules.push_back(system.rules()[i]);
  Ctrs reduced = Ctrs::make(std::move(reduced_rules));

  // The fork: both sequences start at the peak and are valid wrt the
  // original system (removed rules simply never occur in valid steps).
  if (witness.left.start != witness.peak)
    return reject("left sequence starts at " + witness.left.start.str() +
                  ", not at the peak " + witness.peak.str());
  if (witness.right.start != witness.peak)
    return reject("right sequence starts at " + witness.right.start.str() +
                  ", not at the peak " + witness.peak.str());
  Validation left_valid = validate_sequence(system, witness.left);
  if (!left_valid.ok) return reject("left sequence invalid:" + left_valid.message);
  Validation right_valid = validate_sequence(system, witness.right);
  if (!right_valid.ok)
    return reject("right sequence invalid:" + right_valid.message);
  if (witness.left.steps.empty() && witness.right.steps.empty())
    return reject("both sequences are empty");
  Term left_end = sequence_end(system, witness.left);
  Term right_end = sequence_end(system, witness.right);
  if (left_end == right_end)
    return reject("the two sequences end in the same term " + left_end.str());
  if (witness.evidence.left != left_end || witness.evidence.right != right_end)
    return reject("evidence endpoints do not match the sequence endpoints");

  // Re-establish the evidence wrt the reduced system's underlying TRS.
  Ctrs trs = underlying_trs(reduced);
  switch (witness.evidence.kind) {
    case NonJoinabilityEvidence::Kind::DistinctNormalForms:
      if (!is_normal_form(left_end, trs))
        return reject("claimed normal form " + left_end.str() +
                      " is reducible");
      if (!is_normal_form(right_end, trs))
        return reject("claimed normal form " + right_end.str() +
                      " is reducible");
      break;
    case NonJoinabilityEvidence::Kind::TcapNonUnifiable: {
      Term cap_left = tcap(left_end, trs);
      std::set<std::string> avoid = vars_of(cap_left);
      Term cap_right = tcap(right_end, trs, avoid);
      if (unify(cap_left, cap_right))
        return reject("the caps of the endpoints unify: " + cap_left.str() +
                      " and " + cap_right.str());
      break;
    }
  }
  return CheckResult{};
}

namespace {

using json = nlohmann::ordered_json;

json term_to_json(const Term& t) {
  if (t.is_var()) return json::array({"var", t.head()});
  json args = json::array();
  for (const Term& a : t.args()) args.push_back(term_to_json(a));
  return json::array({t.head(), std::move(args)});
}

json subst_to_json(const Substitution& sigma) {
  json out = json::array();
  for (const auto& [var, image] : sigma.bindings())
    out.push_back(json::array({var, term_to_json(image)}));
  return out;
}

json sequence_to_json(const RewriteSequence& seq) {
  json steps = json::array();
  for (const RewriteStep& step : seq.steps) {
    json conditions = json::array();
    for (const RewriteSequence& just : step.condition_justifications)
      conditions.push_back(sequence_to_json(just));
    steps.push_back(json{{"position", step.position},
                         {"rule", step.rule_index},
                         {"subst", subst_to_json(step.substitution)},
                         {"conditions", std::move(conditions)}});
  }
  return json{{"start", term_to_json(seq.start)}, {"steps", std::move(steps)}};
}

[[noreturn]] void bad(const std::string& what) { throw WitnessError(what); }

Term term_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string())
    bad("malformed term encoding: " + j.dump());
  if (j[1].is_string()) {
    if (j[0].get<std::string>() != "var")
      bad("malformed term encoding: " + j.dump());
    return Term::var(j[1].get<std::string>());
  }
  if (!j[1].is_array()) bad("malformed term encoding: " + j.dump());
  std::vector<Term> args;
  for (const json& a : j[1]) args.push_back(term_from_json(a));
  return Term::app(j[0].get<std::string>(), std::move(args));
}

Substitution subst_from_json(const json& j) {
  if (!j.is_array()) bad("malformed substitution encoding");
  Substitution out;
  for (const json& binding : j) {
    if (!binding.is_array() || binding.size() != 2 || !binding[0].is_string())
      bad("malformed substitution binding");
    out.bind(binding[0].get<std::string>(), term_from_json(binding[1]));
  }
  return out;
}

RewriteSequence sequence_from_json(const json& j) {
  if (!j.is_object() || !j.contains("start") || !j.contains("steps"))
    bad("malformed sequence encoding");
  RewriteSequence seq;
  seq.start = term_from_json(j.at("start"));
  for (const json& js : j.at("steps")) {
    if (!js.is_object()) bad("malformed step encoding");
    RewriteStep step;
    for (const json& idx : js.at("position")) {
      if (!idx.is_number_integer()) bad("malformed position");
      step.position.push_back(idx.get<int>());
    }
    step.rule_index = js.at("rule").get<int>();
    step.substitution = subst_from_json(js.at("subst"));
    for (const json& jc : js.at("conditions"))
      step.condition_justifications.push_back(sequence_from_json(jc));
    seq.steps.push_back(std::move(step));
  }
  return seq;
}

std::string text_sequence(const Ctrs& system, const RewriteSequence& seq,
                          int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  std::ostringstream out;
  Term cur = seq.start;
  out << pad << cur.str() << '\n';
  for (const RewriteStep& step : seq.steps) {
    cur = step_target(system, cur, step);
    out << pad << "  -> " << cur.str() << "   [rule "
        << step.rule_index + 1 << " at " << position_str(step.position);
    if (!step.substitution.empty()) out << ", " << step.substitution.str();
    out << "]\n";
    for (std::size_t j = 0; j < step.condition_justifications.size(); ++j) {
      out << pad << "     condition " << j + 1 << ":\n";
      out << text_sequence(system, step.condition_justifications[j],
                           indent + 7);
    }
  }
  return out.str();
}

}  // namespace

std::string emit_witness(const Witness& witness, WitnessFormat format) {
  if (format == WitnessFormat::Structured) {
    json removed = json::array();
    for (const RemovedRule& rr : witness.preprocessing)
      removed.push_back(
          json{{"index", rr.index},
               {"justification",
                json{{"kind", removal_reason_name(rr.reason)},
                     {"details", json{{"condition", rr.condition_index}}}}}});
    json doc{{"schema_version", kSchemaVersion},
             {"system", witness.system_text},
             {"method", method_name(witness.method)},
             {"removed_rules", std::move(removed)},
             {"peak", term_to_json(witness.peak)},
             {"left", sequence_to_json(witness.left)},
             {"right", sequence_to_json(witness.right)},
             {"evidence",
              json{{"kind", evidence_kind_name(witness.evidence.kind)},
                   {"endpoints",
                    json::array({term_to_json(witness.evidence.left),
                                 term_to_json(witness.evidence.right)})}}}};
    return doc.dump(2) + "\n";
  }

  // Text narration. Rules are numbered from 1 in reading order.
  Ctrs system = parse_cops(witness.system_text).system;
  std::ostringstream out;
  out << "Non-confluence witness (method " << method_name(witness.method)
      << ")\n";
  if (!witness.preprocessing.empty()) {
    out << "Rules removed as unsatisfiable before the search:\n";
    for (const RemovedRule& rr : witness.preprocessing)
      out << "  rule " << rr.index + 1 << ": condition " << rr.condition_index + 1
          << " is " << removal_reason_name(rr.reason) << '\n';
  }
  out << "Peak: " << witness.peak.str() << '\n';
  out << "Left fork:\n" << text_sequence(system, witness.left, 2);
  out << "Right fork:\n" << text_sequence(system, witness.right, 2);
  out << "Endpoints " << witness.evidence.left.str() << " and "
      << witness.evidence.right.str() << " are not joinable: ";
  switch (witness.evidence.kind) {
    case NonJoinabilityEvidence::Kind::DistinctNormalForms:
      out << "they are distinct normal forms of the underlying TRS.\n";
      break;
    case NonJoinabilityEvidence::Kind::TcapNonUnifiable:
      out << "their caps wrt the underlying TRS do not unify.\n";
      break;
  }
  return out.str();
}

namespace {

Witness parse_witness_impl(const json& doc) {
  if (!doc.is_object()) bad("witness document must be a JSON object");
  if (!doc.contains("schema_version") ||
      !doc.at("schema_version").is_number_integer())
    bad("missing schema_version");
  if (doc.at("schema_version").get<int>() != kSchemaVersion)
    bad("unsupported schema version " + doc.at("schema_version").dump() +
        " (expected " + std::to_string(kSchemaVersion) + ")");
  for (const char* key :
       {"system", "method", "removed_rules", "peak", "left", "right",
        "evidence"})
    if (!doc.contains(key)) bad(std::string("missing key ") + key);

  Witness w;
  w.system_text = doc.at("system").get<std::string>();
  std::string method = doc.at("method").get<std::string>();
  if (method == "URNF")
    w.method = Witness::Method::Urnf;
  else if (method == "UCP")
    w.method = Witness::Method::Ucp;
  else if (method == "NARROWING")
    w.method = Witness::Method::Narrowing;
  else
    bad("unknown method " + method);
  for (const json& jr : doc.at("removed_rules")) {
    RemovedRule rr;
    rr.index = jr.at("index").get<int>();
    const json& just = jr.at("justification");
    std::string kind = just.at("kind").get<std::string>();
    if (kind == "tcap-nonunifiable")
      rr.reason = RemovedRule::Reason::TcapNonUnifiable;
    else if (kind == "root-unreachable")
      rr.reason = RemovedRule::Reason::RootUnreachable;
    else
      bad("unknown removal justification " + kind);
    rr.condition_index = just.at("details").at("condition").get<int>();
    w.preprocessing.push_back(rr);
  }
  w.peak = term_from_json(doc.at("peak"));
  w.left = sequence_from_json(doc.at("left"));
  w.right = sequence_from_json(doc.at("right"));
  const json& ev = doc.at("evidence");
  std::string kind = ev.at("kind").get<std::string>();
  if (kind == "distinct_normal_forms")
    w.evidence.kind = NonJoinabilityEvidence::Kind::DistinctNormalForms;
  else if (kind == "tcap_nonunifiable")
    w.evidence.kind = NonJoinabilityEvidence::Kind::TcapNonUnifiable;
  else
    bad("unknown evidence kind " + kind);
  if (!ev.contains("endpoints") || ev.at("endpoints").size() != 2)
    bad("evidence must carry exactly two endpoints");
  w.evidence.left = term_from_json(ev.at("endpoints")[0]);
  w.evidence.right = term_from_json(ev.at("endpoints")[1]);
  return w;
}

}  // namespace

Witness parse_witness(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw WitnessError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return parse_witness_impl(doc);
  } catch (const json::exception& e) {
    throw WitnessError(std::string("malformed witness document: ") + e.what());
  }
}

}  // namespace ctrsnc
