#pragma once

// Finite ring arithmetic, the ring-pair loop (u,f)*(v,g) = (u+v, f+g+u*v^3),
// sigma-map builders and an exhaustive small-loop corpus generator with
// identity filters and isomorphism rejection.

#include <optional>
#include <string>
#include <vector>

#include "loopforge/core.hpp"
#include "loopforge/identity.hpp"

namespace loopforge {

// Finite ring with dense element indexing and precomputed operation tables.
// Kinds: the integers mod m, and k x k matrices over a prime field.
class Ring {
 public:
  static Ring zn(int modulus);
  static Ring mat_gf(int dim, int prime);  // throws NotPrime

  int size() const { return n_; }
  int zero() const { return zero_; }
  int add(int a, int b) const { return add_[idx(a, b)]; }
  int mul(int a, int b) const { return mul_[idx(a, b)]; }
  int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int cube(int a) const { return cube_[static_cast<std::size_t>(a)]; }
  int pow(int a, int k) const;

  const std::string& spec_string() const { return spec_; }

 private:
  Ring() = default;
  std::size_t idx(int a, int b) const {
    return static_cast<std::size_t>(a) * n_ + b;
  }
  void finish(std::string spec);  // derives neg/cube, runs the axiom check
  void check_axioms() const;      // throws AxiomViolation

  int n_ = 0;
  int zero_ = 0;
  std::vector<int> add_, mul_, neg_, cube_;
  std::string spec_;
};

// Loop on R x R of order |R|^2 with identity (0,0), backed by closed-form
// multiplication and divisions so no order^2 table is ever materialized.
// Element encoding: (u, f) -> u*|R| + f.
class RingPairLoop final : public MulOracle {
 public:
  explicit RingPairLoop(Ring ring);

  int order() const override { return ring_.size() * ring_.size(); }
  int identity() const override { return 0; }
  int mul(int a, int b) const override;
  int ldiv(int a, int b) const override;
  int rdiv(int b, int a) const override;

  const Ring& ring() const { return ring_; }

 private:
  void self_check() const;  // division round-trips, sampled for big rings
  Ring ring_;
};

struct SigmaSpec {
  enum class Kind { Identity, Square, RdivInv, Table };
  Kind kind = Kind::Identity;
  int g = -1;        // RdivInv parameter
  SelfMap table;     // Table payload

  static SigmaSpec identity() { return {}; }
  static SigmaSpec square() { return {Kind::Square, -1, {}}; }
  // x |-> (x * g^-1)^-1; needs two-sided inverses.
  static SigmaSpec rdiv_inv(int g) { return {Kind::RdivInv, g, {}}; }
  static SigmaSpec table_map(SelfMap m) {
    return {Kind::Table, -1, std::move(m)};
  }

  std::string to_string() const;
};

SelfMap make_sigma(const MulOracle& L, const SigmaSpec& spec);

struct CorpusFilter {
  std::string identity_name;  // catalog entry name
  SigmaSpec sigma = SigmaSpec::identity();
  bool want = true;
};

// All loops of the given order satisfying the filters, with the identity
// element labeled 0, deduplicated up to isomorphism, in deterministic order.
// Orders 7-8 require at least one positive filter for search pruning;
// max_results (pre-dedup, in search order) caps long searches.
std::vector<CayleyLoop> small_loop_corpus(
    int order, const std::vector<CorpusFilter>& filters,
    std::optional<int> max_results = {});

}  // namespace loopforge
