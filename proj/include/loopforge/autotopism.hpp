#pragma once

// Autotopism triples, automorphism / pseudo-automorphism searches, special
// maps and the Bryant-Schneider group. Searches are backtracking over
// partial images with forced-value propagation from the multiplication
// constraint; result sets are lexicographically sorted so output never
// depends on exploration schedule.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "loopforge/core.hpp"

namespace loopforge {

// Ordered triple (A, B, C); member of AUT(L) when xA * yB = (x*y)C for all
// x, y.
struct AutotopismTriple {
  Perm a, b, c;

  AutotopismTriple then(const AutotopismTriple& next) const {
    return {a.then(next.a), b.then(next.b), c.then(next.c)};
  }
  AutotopismTriple inverse() const {
    return {a.inverse(), b.inverse(), c.inverse()};
  }
  bool operator==(const AutotopismTriple&) const = default;
  auto operator<=>(const AutotopismTriple&) const = default;
};

bool is_autotopism(const MulOracle& L, const AutotopismTriple& t);

// For (U,V,W) in AUT(L) on a loop with the right inverse property, returns
// (W, JVJ, U), which is again in AUT(L). Throws NotRIP / InversesDisagree /
// NotAutotopism when the preconditions fail.
AutotopismTriple derived_autotopism(const MulOracle& L,
                                    const AutotopismTriple& t);

// Whether the right inverse property (y*x)*x^r = y holds everywhere.
bool has_rip(const MulOracle& L);

// All bijections f with f(x)*f(y) = f(x*y), sorted lexicographically.
std::vector<Perm> automorphism_group(const MulOracle& L);

struct PseudoAutomorphism {
  Perm psi;
  std::vector<int> companions;  // all c with (psi, psi R_c, psi R_c) in AUT
  bool operator==(const PseudoAutomorphism&) const = default;
};

// Every bijection admitting at least one companion, with its full companion
// set, sorted by the bijection's image sequence.
std::vector<PseudoAutomorphism> pseudo_automorphisms(const MulOracle& L);

struct SpecialMapWitness {
  Perm theta;
  // All (f, g) with (theta R_g^-1, theta L_f^-1, theta) in AUT(L), sorted.
  std::vector<std::pair<int, int>> pairs;

  bool in_bs() const { return !pairs.empty(); }
};

SpecialMapWitness is_special_map(const MulOracle& L, const Perm& theta);

// The Bryant-Schneider group { C : exists (A,B) with (A,B,C) in AUT(L) },
// computed per (f, g) = (eA, eB) choice by backtracking on C with the
// derived constraints A = C R_g^-1, B = C L_f^-1 and the forced seed
// C(e) = f*g. Guarded at max_order (default 8).
std::vector<Perm> bryant_schneider_group(const MulOracle& L,
                                         int max_order = 8);

// Backtracking isomorphism search between two loops (identity maps to
// identity). Returns a relabeling p with p(x *A y) = p(x) *B p(y), if any.
std::optional<Perm> find_isomorphism(const MulOracle& A, const MulOracle& B);

bool is_group_closed(const std::vector<Perm>& set);

namespace detail {

// Finds all bijections M on the domain loop with M(x*y) = f(M(x), M(y)).
// solve_p / solve_q invert f in its first / second argument. Solutions are
// emitted in lexicographic image order.
void binary_map_search(const MulOracle& dom,
                       const std::function<int(int, int)>& f,
                       const std::function<int(int, int)>& solve_p,
                       const std::function<int(int, int)>& solve_q,
                       const std::vector<std::pair<int, int>>& seeds,
                       const std::function<void(const Perm&)>& emit);

}  // namespace detail

}  // namespace loopforge
