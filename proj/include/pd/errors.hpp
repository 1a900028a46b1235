#pragma once

#include <stdexcept>
#include <string>

namespace pd {

// Error taxonomy shared by the structural pipeline. Parsing and coloring
// primitives keep their own error types next to their declarations.

struct PreconditionViolated : std::runtime_error {
  explicit PreconditionViolated(const std::string& w)
      : std::runtime_error("precondition violated: " + w) {}
};

struct NotFound : std::runtime_error {
  explicit NotFound(const std::string& w) : std::runtime_error("not found: " + w) {}
};

struct SearchBudgetExceeded : std::runtime_error {
  explicit SearchBudgetExceeded(const std::string& w)
      : std::runtime_error("search budget exceeded: " + w) {}
};

// A dispatch walked off the supported case analysis. Soft failure: the
// driver reports it and falls back, it never fabricates output.
struct UnmatchedCase : std::runtime_error {
  std::string transcript;
  explicit UnmatchedCase(std::string t)
      : std::runtime_error("unmatched case: " + t), transcript(std::move(t)) {}
};

struct PlanarityLost : std::runtime_error {
  explicit PlanarityLost(const std::string& w) : std::runtime_error("planarity lost: " + w) {}
};

struct GuardFailure : std::runtime_error {
  explicit GuardFailure(const std::string& w) : std::runtime_error("guard failure: " + w) {}
};

struct Unsatisfiable : std::runtime_error {
  explicit Unsatisfiable(const std::string& w) : std::runtime_error("unsatisfiable: " + w) {}
};

struct InducedK4Violation : std::runtime_error {
  explicit InducedK4Violation(const std::string& w)
      : std::runtime_error("induced branch-vertex clash: " + w) {}
};

struct RecoloringInvalid : std::runtime_error {
  std::string step, witness;
  RecoloringInvalid(std::string s, std::string w)
      : std::runtime_error("recoloring invalid at " + s + ": " + w),
        step(std::move(s)),
        witness(std::move(w)) {}
};

}  // namespace pd
