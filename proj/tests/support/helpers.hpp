#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "ctrsnc/cops.hpp"

namespace testsupport {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline ctrsnc::Ctrs load_fixture(const std::string& name) {
  return ctrsnc::parse_cops(read_file(std::string(FIXTURE_DIR) + "/" + name))
      .system;
}

inline ctrsnc::Ctrs parse_system(const std::string& text) {
  return ctrsnc::parse_cops(text).system;
}

// Equality modulo a variable bijection.
inline bool alpha_eq_impl(const ctrsnc::Term& a, const ctrsnc::Term& b,
                          std::map<std::string, std::string>& fwd,
                          std::map<std::string, std::string>& bwd) {
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) {
    auto f = fwd.find(a.head());
    auto g = bwd.find(b.head());
    if (f == fwd.end() && g == bwd.end()) {
      fwd.emplace(a.head(), b.head());
      bwd.emplace(b.head(), a.head());
      return true;
    }
    return f != fwd.end() && g != bwd.end() && f->second == b.head() &&
           g->second == a.head();
  }
  if (a.head() != b.head() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!alpha_eq_impl(a.args()[i], b.args()[i], fwd, bwd)) return false;
  return true;
}

inline bool alpha_eq(const ctrsnc::Term& a, const ctrsnc::Term& b) {
  std::map<std::string, std::string> fwd, bwd;
  return alpha_eq_impl(a, b, fwd, bwd);
}

// Pairwise alpha-equivalence under one shared bijection.
inline bool alpha_eq2(const ctrsnc::Term& a1, const ctrsnc::Term& a2,
                      const ctrsnc::Term& b1, const ctrsnc::Term& b2) {
  std::map<std::string, std::string> fwd, bwd;
  return alpha_eq_impl(a1, b1, fwd, bwd) && alpha_eq_impl(a2, b2, fwd, bwd);
}

}  // namespace testsupport
