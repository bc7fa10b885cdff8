#pragma once

// Finite loop (quasigroup with two-sided identity) machinery: Cayley tables,
// translation maps, divisions, inverses, the right nucleus and principal
// isotopes. Elements are dense integer indices 0..n-1. All multiplication
// providers are immutable after construction and safe for concurrent reads.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopforge {

enum class Err {
  NotLatin,
  NoIdentity,
  SizeMismatch,
  IndexOutOfRange,
  InversesDisagree,
  OrderTooLarge,
  BudgetExceeded,
  NotAutomorphism,
  NotClosed,
  NotRIP,
  NotAutotopism,
  MissingParameter,
  Precondition,
  Parse,
  NotPrime,
  AxiomViolation,
  UnboundSigmaSlot,
  Format,
};

class LoopError : public std::runtime_error {
 public:
  LoopError(Err kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  Err kind() const noexcept { return kind_; }

 private:
  Err kind_;
};

[[noreturn]] void fail(Err kind, const std::string& msg);

namespace detail {

// Stateless mixer used for all seeded sampling. Counter-based so that a
// sampled sequence is independent of evaluation order and thread count.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Value of the v-th variable of the j-th sampled assignment.
inline int sampled_value(std::uint64_t seed, std::uint64_t j, int v, int n) {
  std::uint64_t h = splitmix64(seed ^ (0xa24baed4963ee407ULL * (j + 1)));
  return static_cast<int>(splitmix64(h ^ static_cast<std::uint64_t>(v)) %
                          static_cast<std::uint64_t>(n));
}

}  // namespace detail

// A bijection on {0,...,n-1}, stored as its image sequence.
// Composition is diagrammatic: a.then(b) applies a first, then b, matching
// the usual right-action convention for translation maps.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images);

  static Perm identity(int n);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[static_cast<std::size_t>(x)]; }

  Perm then(const Perm& next) const;
  Perm inverse() const;
  bool is_identity() const;

  const std::vector<int>& images() const { return img_; }

  bool operator==(const Perm&) const = default;
  auto operator<=>(const Perm&) const = default;

 private:
  struct Unchecked {};
  Perm(std::vector<int> images, Unchecked) : img_(std::move(images)) {}
  std::vector<int> img_;
};

// An arbitrary single-valued self-map on {0,...,n-1} (not necessarily
// bijective). All the sigma maps live here.
class SelfMap {
 public:
  SelfMap() = default;
  explicit SelfMap(std::vector<int> images);
  SelfMap(const Perm& p) : img_(p.images()) {}  // NOLINT: intentional widening

  static SelfMap identity(int n);
  static SelfMap constant(int n, int value);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[static_cast<std::size_t>(x)]; }

  const std::vector<int>& images() const { return img_; }

  bool operator==(const SelfMap&) const = default;
  auto operator<=>(const SelfMap&) const = default;

 private:
  std::vector<int> img_;
};

// Row-major multiplication table: entry(i, j) = i * j.
struct CayleyTable {
  int order = 0;
  std::vector<int> entries;

  CayleyTable() = default;
  CayleyTable(int n, std::vector<int> e);
  static CayleyTable from_rows(const std::vector<std::vector<int>>& rows);

  int entry(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * order + j];
  }
  int& entry(int i, int j) {
    return entries[static_cast<std::size_t>(i) * order + j];
  }

  bool operator==(const CayleyTable&) const = default;
};

// Throws NotLatin (with the offending row/column) unless every row and
// column of the table is a permutation of 0..n-1.
void validate_latin(const CayleyTable& t);

// Abstract multiplication/division provider. Backed either by a Cayley
// table or by closed-form formulas, so large loops never need to
// materialize an order^2 table.
class MulOracle {
 public:
  virtual ~MulOracle() = default;

  virtual int order() const = 0;
  virtual int identity() const = 0;
  virtual int mul(int a, int b) const = 0;
  // Unique x with a * x = b.
  virtual int ldiv(int a, int b) const = 0;
  // Unique y with y * a = b.
  virtual int rdiv(int b, int a) const = 0;

  // y |-> y * a. Bijective by the Latin property.
  virtual Perm right_translation(int a) const;
  // y |-> a * y.
  virtual Perm left_translation(int a) const;

  int right_inverse(int a) const { return ldiv(a, identity()); }
  int left_inverse(int a) const { return rdiv(identity(), a); }

  bool has_two_sided_inverses() const;
  // The inversion map J: a |-> a^-1. Throws InversesDisagree with a witness
  // element when some x has distinct one-sided inverses.
  Perm j_perm() const;

 protected:
  void check_index(int a) const;
};

// Table-backed loop with located identity and translations cached at load.
class CayleyLoop final : public MulOracle {
 public:
  int order() const override { return table_.order; }
  int identity() const override { return identity_; }
  int mul(int a, int b) const override;
  int ldiv(int a, int b) const override;
  int rdiv(int b, int a) const override;
  Perm right_translation(int a) const override;
  Perm left_translation(int a) const override;

  const CayleyTable& table() const { return table_; }

  bool operator==(const CayleyLoop& other) const {
    return table_ == other.table_;
  }

  friend CayleyLoop load_loop(CayleyTable t);

 private:
  CayleyLoop() = default;
  CayleyTable table_;
  int identity_ = -1;
  std::vector<Perm> rtrans_, ltrans_;
  // ldiv_[a*n+b] = x with a*x = b; rdiv_[a*n+b] = y with y*a = b.
  std::vector<int> ldiv_, rdiv_;
};

// Validates the table (Latin property, two-sided identity) and returns the
// loop with cached translations. Throws NotLatin / NoIdentity / SizeMismatch.
CayleyLoop load_loop(CayleyTable t);

// Materializes any oracle into a table-backed loop. Intended for desk-scale
// orders; cost is order^2 multiplications.
CayleyLoop materialize(const MulOracle& L);

// Relabels so the identity becomes element 0, keeping the relative order of
// the remaining elements. Returns the relabeled table.
CayleyTable normalize_identity_first(const CayleyLoop& L);

// Exactly the x with (z*y)*x = z*(y*x) for all y, z. Direct O(n^3) scan.
std::vector<int> right_nucleus(const MulOracle& L);

// Loop with product x o y = (x / g) * (f \ y) and identity f*g.
CayleyLoop principal_isotope(const MulOracle& L, int f, int g);

}  // namespace loopforge
