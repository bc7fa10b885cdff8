#pragma once

// A small term language for loop identities, with exhaustive / sampled /
// scan-prefix evaluation over a multiplication oracle and counterexample
// reporting.
//
// Grammar (whitespace insignificant):
//   identity := term "=" term
//   term     := factor (("*" | "\" | "/") factor)*      left-associative
//   factor   := atom ("^r" | "^l")*
//   atom     := var | "s(" term ")" | "s2(" term ")" | "(" term ")"
//   var      := "x" | "y" | "z" | "u" | "v" | "w"
//
// "a\b" is left division (the x with a*x = b), "a/b" is right division
// (the y with y*b = a), "^r"/"^l" are the one-sided inverses, and s/s2 are
// slots for externally bound self-maps.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loopforge/core.hpp"

namespace loopforge {

class ParseError : public LoopError {
 public:
  ParseError(std::size_t pos, std::string expected, const std::string& msg)
      : LoopError(Err::Parse, msg), pos_(pos), expected_(std::move(expected)) {}
  std::size_t position() const { return pos_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t pos_;
  std::string expected_;
};

inline constexpr int kNumVars = 6;            // x y z u v w
inline constexpr char kVarNames[kNumVars + 1] = "xyzuvw";

struct IdentityAst {
  enum class Kind { Var, Mul, LDiv, RDiv, RInv, LInv, Sigma };
  struct Node {
    Kind kind;
    // Var: a = variable index. Sigma: a = slot (0 for s, 1 for s2), b = child.
    // Mul/LDiv/RDiv: a, b = children. RInv/LInv: a = child.
    int a = -1;
    int b = -1;
  };

  std::vector<Node> nodes;
  int lhs = -1;
  int rhs = -1;
  std::array<bool, kNumVars> uses_var{};
  std::array<bool, 2> uses_slot{};

  int num_vars_used() const;
  // Used variable indices in canonical order x,y,z,u,v,w.
  std::vector<int> var_order() const;
};

IdentityAst parse_identity(const std::string& text);

struct SigmaBindings {
  const SelfMap* s = nullptr;
  const SelfMap* s2 = nullptr;
};

struct EvalMode {
  enum class Kind { Exhaustive, Sample, Scan };
  Kind kind = Kind::Exhaustive;
  std::uint64_t count = 0;  // sample count / scan limit
  std::uint64_t seed = 0;   // sample only

  static EvalMode exhaustive() { return {}; }
  static EvalMode sample(std::uint64_t count, std::uint64_t seed) {
    return {Kind::Sample, count, seed};
  }
  static EvalMode scan(std::uint64_t limit) { return {Kind::Scan, limit, 0}; }

  bool operator==(const EvalMode&) const = default;
  std::string to_string() const;
};

struct EvalOptions {
  std::uint64_t exhaustive_budget = 1'000'000'000ULL;
  int threads = 1;
};

// A falsifying variable assignment, in canonical variable order.
struct Witness {
  std::vector<std::pair<char, int>> values;
  bool operator==(const Witness&) const = default;
  std::string to_string() const;
};

struct CheckResult {
  bool holds = true;
  std::optional<Witness> witness;
  std::uint64_t assignments_checked = 0;
  EvalMode mode;

  bool operator==(const CheckResult&) const = default;
};

// Quantifies the identity's variables over the loop. Exhaustive mode scans
// all n^k assignments in lexicographic order (refused above the budget);
// scan mode checks only the first `limit` of that order; sample mode draws
// `count` seeded assignments. The reported witness is the first falsifying
// assignment in the scan/sample order regardless of thread count.
CheckResult eval_identity(const MulOracle& L, const IdentityAst& ast,
                          const SigmaBindings& sigmas, EvalMode mode,
                          const EvalOptions& opts = {});

// Convenience: parse + evaluate.
CheckResult check_identity(const MulOracle& L, const std::string& text,
                           const SigmaBindings& sigmas, EvalMode mode,
                           const EvalOptions& opts = {});

struct CatalogEntry {
  std::string name;
  // Conjunction of identities; a single text for all entries except the
  // Bruck condition, which is Bol together with AIP.
  std::vector<std::string> identities;
  std::string label;
};

// Named identities: right-bol, left-bol, moufang, rip, lip, aip,
// gen-right-bol, gen-left-bol, m-loop, sigma-flexible, bruck-condition,
// plus associative/commutative for corpus filtering.
const std::vector<CatalogEntry>& catalog();

const CatalogEntry* catalog_find(const std::string& name);

// Evaluates every identity of the entry and ANDs the results; the returned
// CheckResult carries the first failing identity's witness.
CheckResult eval_catalog_entry(const MulOracle& L, const CatalogEntry& entry,
                               const SigmaBindings& sigmas, EvalMode mode,
                               const EvalOptions& opts = {});

// Evaluates a catalog entry by name, binding the s slot when given.
CheckResult eval_named(const MulOracle& L, const std::string& name,
                       const SelfMap* sigma, EvalMode mode,
                       const EvalOptions& opts = {});

}  // namespace loopforge
