#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctrsnc/cops.hpp"
#include "ctrsnc/nonconfluence.hpp"
#include "ctrsnc/witness.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_check(const ctrsnc::Ctrs& system, const std::string& witness_path) {
  ctrsnc::Witness witness;
  try {
    witness = ctrsnc::parse_witness(read_file(witness_path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  try {
    if (ctrsnc::parse_cops(witness.system_text).system != system) {
      std::cerr << "error: witness was produced for a different system\n";
      return 1;
    }
  } catch (const ctrsnc::ParseError& e) {
    std::cerr << "error: system embedded in witness is malformed: " << e.what()
              << '\n';
    return 1;
  }
  ctrsnc::CheckResult result = ctrsnc::check_witness(system, witness);
  if (!result.ok) {
    std::cerr << "rejected: " << result.message << '\n';
    return 1;
  }
  std::cout << "CERTIFIED\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Proves non-confluence of oriented conditional term rewriting systems "
      "and emits independently checkable witnesses"};
  app.set_version_flag("--version", "ctrs-nonconf 1.0.0");

  std::string input_path;
  std::string methods = "urnf,ucp,narrowing";
  bool no_preprocess = false;
  int narrow_max_len = 3;
  int narrow_max_level = 2;
  int cond_max_len = 3;
  int cond_budget = 4;
  double timeout_seconds = 60.0;
  std::string witness_out;
  std::string format = "text";
  std::string check_path;
  int jobs = 1;

  app.add_option("input", input_path, "system in Cops format")->required();
  app.add_option("--methods", methods,
                 "comma-separated subset of urnf,ucp,narrowing");
  app.add_flag("--no-preprocess", no_preprocess,
               "disable infeasible-rule removal");
  app.add_option("--narrow-max-len", narrow_max_len,
                 "maximum narrowing sequence length")
      ->check(CLI::PositiveNumber);
  app.add_option("--narrow-max-level", narrow_max_level,
                 "maximum condition nesting depth for narrowing")
      ->check(CLI::PositiveNumber);
  app.add_option("--cond-max-len", cond_max_len,
                 "maximum length of condition-solving narrowing sequences")
      ->check(CLI::PositiveNumber);
  app.add_option("--cond-budget", cond_budget,
                 "step budget for condition solving in the rewrite semantics")
      ->check(CLI::PositiveNumber);
  app.add_option("--timeout", timeout_seconds, "wall-clock budget in seconds");
  app.add_option("--witness-out", witness_out,
                 "write the structured witness document to this path");
  app.add_option("--format", format, "verdict format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--check", check_path,
                 "certifier mode: check this witness document against the "
                 "input system");
  app.add_option("--jobs", jobs, "worker threads for the narrowing search")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  ctrsnc::CopsDocument doc;
  try {
    doc = ctrsnc::parse_cops(read_file(input_path));
  } catch (const ctrsnc::ParseError& e) {
    std::cerr << input_path << ":" << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  if (!check_path.empty()) return run_check(doc.system, check_path);

  ctrsnc::ProveOptions options;
  options.use_urnf = options.use_ucp = options.use_narrowing = false;
  {
    std::stringstream list(methods);
    std::string name;
    while (std::getline(list, name, ',')) {
      if (name == "urnf")
        options.use_urnf = true;
      else if (name == "ucp")
        options.use_ucp = true;
      else if (name == "narrowing")
        options.use_narrowing = true;
      else {
        std::cerr << "error: unknown method " << name << '\n';
        return 1;
      }
    }
  }
  options.preprocess = !no_preprocess;
  options.narrow.max_length = narrow_max_len;
  options.narrow.max_level = narrow_max_level;
  options.narrow.condition_max_length = cond_max_len;
  options.rewrite_budget = cond_budget;
  options.jobs = jobs;
  if (timeout_seconds > 0)
    options.deadline = std::chrono::steady_clock::now() +
                       std::chrono::microseconds(static_cast<long long>(
                           timeout_seconds * 1e6));

  std::optional<ctrsnc::Witness> witness;
  try {
    witness = ctrsnc::prove_nonconfluence(doc.system, options);
  } catch (const ctrsnc::TimeoutError&) {
    witness = std::nullopt;
  } catch (const ctrsnc::CertificationError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }

  if (witness && !witness_out.empty()) {
    std::ofstream out(witness_out, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << witness_out << '\n';
      return 1;
    }
    out << ctrsnc::emit_witness(*witness, ctrsnc::WitnessFormat::Structured);
  }

  if (format == "json") {
    nlohmann::ordered_json envelope;
    envelope["verdict"] = witness ? "NO" : "MAYBE";
    if (witness)
      envelope["witness"] = nlohmann::ordered_json::parse(
          ctrsnc::emit_witness(*witness, ctrsnc::WitnessFormat::Structured));
    std::cout << envelope.dump(2) << '\n';
  } else {
    if (witness) {
      std::cout << "NO\n";
      std::cout << ctrsnc::emit_witness(*witness, ctrsnc::WitnessFormat::Text);
    } else {
      std::cout << "MAYBE\n";
    }
  }
  return 0;
}
