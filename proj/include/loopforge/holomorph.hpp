#pragma once

// A-holomorph construction H = A(Q) x Q with product
// (a, x) o (b, y) = (ab, xb * y), sigma lifts to H, and two-sided
// equivalence checks between holomorph-level identities and their
// base-level counterparts.

#include <map>
#include <optional>
#include <vector>

#include "loopforge/core.hpp"
#include "loopforge/identity.hpp"
#include "loopforge/report.hpp"

namespace loopforge {

// Loop on pairs (automorphism index, base element), flattened to the single
// index aut_index * |Q| + elem. Keeps a reference to the base oracle; the
// caller owns its lifetime.
class HolomorphLoop final : public MulOracle {
 public:
  int order() const override;
  int identity() const override;
  int mul(int a, int b) const override;
  int ldiv(int a, int b) const override;
  int rdiv(int b, int a) const override;

  const MulOracle& base() const { return *base_; }
  const std::vector<Perm>& auts() const { return auts_; }
  int identity_aut() const { return id_aut_; }

  int encode(int aut_index, int elem) const;
  std::pair<int, int> decode(int h) const;

  int compose_auts(int i, int j) const {  // auts[i] then auts[j]
    return comp_[static_cast<std::size_t>(i) * auts_.size() + j];
  }
  int inverse_aut(int i) const { return inv_[static_cast<std::size_t>(i)]; }

  friend HolomorphLoop build_holomorph(const MulOracle& Q,
                                       std::vector<Perm> auts);

 private:
  HolomorphLoop() = default;
  const MulOracle* base_ = nullptr;
  std::vector<Perm> auts_;
  std::vector<int> comp_, inv_;
  int id_aut_ = -1;
};

// Validates that each listed map is an automorphism of Q and that the list
// is closed under composition (which, for a finite set of bijections, also
// forces the identity and inverses to be present). Throws NotAutomorphism /
// NotClosed.
HolomorphLoop build_holomorph(const MulOracle& Q, std::vector<Perm> auts);

// The four ways a self-map sigma on Q lifts to H. All variants keep the
// automorphism component fixed:
//   Pointwise             (a, x) -> (a, sigma(x))
//   AutConjugated         (a, x) -> (a, a(sigma(gamma(x))))
//   InverseAutConjugated  (a, x) -> (a, sigma(gamma(a^-1(x))))
//   CompanionInverse      (a, x) -> (a, [a(gamma(x)) * (a(g))^-1]^-1)
struct SigmaLift {
  enum class Variant { Pointwise, AutConjugated, InverseAutConjugated,
                       CompanionInverse };
  Variant variant = Variant::Pointwise;
  SelfMap sigma;            // unused by CompanionInverse
  int gamma = -1;           // index into auts (all but Pointwise)
  std::optional<int> g;     // CompanionInverse only

  static SigmaLift pointwise(SelfMap s) {
    return {Variant::Pointwise, std::move(s), -1, {}};
  }
  static SigmaLift aut_conjugated(SelfMap s, int gamma) {
    return {Variant::AutConjugated, std::move(s), gamma, {}};
  }
  static SigmaLift inverse_aut_conjugated(SelfMap s, int gamma) {
    return {Variant::InverseAutConjugated, std::move(s), gamma, {}};
  }
  static SigmaLift companion_inverse(int gamma, int g) {
    return {Variant::CompanionInverse, {}, gamma, g};
  }
};

SelfMap lift_sigma(const HolomorphLoop& H, const SigmaLift& spec);

// The holomorph-level equivalences checked on both sides. CLI suite tokens
// in parentheses.
enum class HolomorphTheorem {
  PointwiseTriples,     // (thm4_1) H gen-Bol with pointwise lift <->
                        //   translation-triple family over all (alpha, gamma)
  PointwiseGenBol,      // (cor4_2) same left side <-> transformed-sigma
                        //   gen-Bol identities on Q
  ConjugatedLift,       // (thm5)   H gen-Bol with conjugated lift <->
                        //   Q gen-Bol with sigma itself
  PointwiseFlexible,    // (thm6)   flexible-Bol with pointwise lift
  ConjugatedFlexible,   // (thm7)   flexible-Bol with inverse-conjugated lift
};

// Computes the holomorph-level side (side_H) via the identity engine on H
// and the base-level side (side_Q) as the theorem states it, quantifying
// alpha and gamma over the given automorphism list, and reports agreement.
// A disagreement is reported as a failing check, never silently accepted.
Report verify_holomorph_theorem(HolomorphTheorem id, const MulOracle& Q,
                                const std::vector<Perm>& auts,
                                const SelfMap& sigma, int gamma = 0,
                                const EvalOptions& opts = {});

// Compares (H is right Bol) against (Q is right Bol and x^-1 * x theta lies
// in the right nucleus for every theta in auts and x in Q).
Report check_robinson_remark(const MulOracle& Q, const std::vector<Perm>& auts,
                             const EvalOptions& opts = {});

// Picks exhaustive evaluation when the assignment space fits the budget and
// seeded sampling otherwise. Shared by the verification suites.
EvalMode adaptive_mode(const MulOracle& L, int num_vars,
                       const EvalOptions& opts,
                       std::uint64_t sample_count = 1'000'000,
                       std::uint64_t seed = 1);

// x -> alpha^-1(sigma(gamma^-1(x))): the base-level self-map the pointwise
// lift induces for a pair of automorphisms.
SelfMap transformed_sigma(const SelfMap& sigma, const Perm& alpha,
                          const Perm& gamma);

// x -> sigma(alpha(gamma^-1(x))): the composite appearing in the
// flexible-Bol equivalence for the pointwise lift.
SelfMap flexible_transform(const SelfMap& sigma, const Perm& alpha,
                           const Perm& gamma);

// x -> sigma(delta(x)).
SelfMap precompose(const SelfMap& sigma, const Perm& delta);

// Q satisfies the generalized right Bol law with sigma together with
// sigma-flexibility for some delta drawn from the given automorphisms.
bool is_flexible_bol(const MulOracle& Q, const std::vector<Perm>& auts,
                     const SelfMap& sigma, EvalMode mode,
                     const EvalOptions& opts, std::string* why);

}  // namespace loopforge
