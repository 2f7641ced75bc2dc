#pragma once

#include <stdexcept>
#include <string>

namespace ctrsnc {

// Position does not address a subterm of the given term.
class PositionError : public std::runtime_error {
 public:
  explicit PositionError(const std::string& what) : std::runtime_error(what) {}
};

// Ill-formed rewrite system (variable left-hand side, arity clash, ...).
class SystemError : public std::runtime_error {
 public:
  explicit SystemError(const std::string& what) : std::runtime_error(what) {}
};

// A rewrite step object does not fit the term it is applied to.
class RewriteError : public std::runtime_error {
 public:
  explicit RewriteError(const std::string& what) : std::runtime_error(what) {}
};

// Wall-clock budget elapsed mid-search.
class TimeoutError : public std::runtime_error {
 public:
  TimeoutError() : std::runtime_error("search timed out") {}
};

// Malformed or unsupported witness document.
class WitnessError : public std::runtime_error {
 public:
  explicit WitnessError(const std::string& what) : std::runtime_error(what) {}
};

// A freshly produced witness failed self-certification; indicates a prover bug.
class CertificationError : public std::runtime_error {
 public:
  explicit CertificationError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace ctrsnc
