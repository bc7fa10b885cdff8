#include "loopforge/core.hpp"

#include <algorithm>
#include <numeric>

namespace loopforge {

void fail(Err kind, const std::string& msg) { throw LoopError(kind, msg); }

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  const int n = degree();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : img_) {
    if (v < 0 || v >= n)
      fail(Err::IndexOutOfRange,
           "permutation image " + std::to_string(v) + " out of range");
    if (seen[static_cast<std::size_t>(v)])
      fail(Err::NotLatin, "duplicate image " + std::to_string(v) +
                              " in permutation");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 0);
  return Perm(std::move(img), Unchecked{});
}

Perm Perm::then(const Perm& next) const {
  if (degree() != next.degree())
    fail(Err::SizeMismatch, "composing permutations of different degree");
  std::vector<int> img(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i)
    img[i] = next.img_[static_cast<std::size_t>(img_[i])];
  return Perm(std::move(img), Unchecked{});
}

Perm Perm::inverse() const {
  std::vector<int> img(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i)
    img[static_cast<std::size_t>(img_[i])] = static_cast<int>(i);
  return Perm(std::move(img), Unchecked{});
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != static_cast<int>(i)) return false;
  return true;
}

SelfMap::SelfMap(std::vector<int> images) : img_(std::move(images)) {
  const int n = degree();
  for (int v : img_)
    if (v < 0 || v >= n)
      fail(Err::IndexOutOfRange,
           "self-map image " + std::to_string(v) + " out of range");
}

SelfMap SelfMap::identity(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 0);
  return SelfMap(std::move(img));
}

SelfMap SelfMap::constant(int n, int value) {
  return SelfMap(std::vector<int>(static_cast<std::size_t>(n), value));
}

CayleyTable::CayleyTable(int n, std::vector<int> e)
    : order(n), entries(std::move(e)) {
  if (n < 1) fail(Err::SizeMismatch, "table order must be positive");
  if (entries.size() != static_cast<std::size_t>(n) * n)
    fail(Err::SizeMismatch, "table has " + std::to_string(entries.size()) +
                                " entries, expected " + std::to_string(n * n));
}

CayleyTable CayleyTable::from_rows(const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<int> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      fail(Err::SizeMismatch, "ragged table row");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return CayleyTable(n, std::move(entries));
}

void validate_latin(const CayleyTable& t) {
  const int n = t.order;
  std::vector<char> seen(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < n; ++j) {
      const int v = t.entry(i, j);
      if (v < 0 || v >= n)
        fail(Err::NotLatin, "entry (" + std::to_string(i) + "," +
                                std::to_string(j) + ") = " +
                                std::to_string(v) + " out of range");
      if (seen[static_cast<std::size_t>(v)])
        fail(Err::NotLatin,
             "row " + std::to_string(i) + " repeats " + std::to_string(v));
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }
  for (int j = 0; j < n; ++j) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int i = 0; i < n; ++i) {
      const int v = t.entry(i, j);
      if (seen[static_cast<std::size_t>(v)])
        fail(Err::NotLatin,
             "column " + std::to_string(j) + " repeats " + std::to_string(v));
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }
}

void MulOracle::check_index(int a) const {
  if (a < 0 || a >= order())
    fail(Err::IndexOutOfRange,
         "element " + std::to_string(a) + " out of range for order " +
             std::to_string(order()));
}

Perm MulOracle::right_translation(int a) const {
  check_index(a);
  const int n = order();
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int y = 0; y < n; ++y) img[static_cast<std::size_t>(y)] = mul(y, a);
  return Perm(std::move(img));
}

Perm MulOracle::left_translation(int a) const {
  check_index(a);
  const int n = order();
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int y = 0; y < n; ++y) img[static_cast<std::size_t>(y)] = mul(a, y);
  return Perm(std::move(img));
}

bool MulOracle::has_two_sided_inverses() const {
  const int n = order();
  for (int x = 0; x < n; ++x)
    if (right_inverse(x) != left_inverse(x)) return false;
  return true;
}

Perm MulOracle::j_perm() const {
  const int n = order();
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    const int r = right_inverse(x);
    const int l = left_inverse(x);
    if (r != l)
      fail(Err::InversesDisagree,
           "element " + std::to_string(x) + " has right inverse " +
               std::to_string(r) + " but left inverse " + std::to_string(l));
    img[static_cast<std::size_t>(x)] = r;
  }
  return Perm(std::move(img));
}

int CayleyLoop::mul(int a, int b) const {
  check_index(a);
  check_index(b);
  return table_.entry(a, b);
}

int CayleyLoop::ldiv(int a, int b) const {
  check_index(a);
  check_index(b);
  return ldiv_[static_cast<std::size_t>(a) * table_.order + b];
}

int CayleyLoop::rdiv(int b, int a) const {
  check_index(a);
  check_index(b);
  return rdiv_[static_cast<std::size_t>(a) * table_.order + b];
}

Perm CayleyLoop::right_translation(int a) const {
  check_index(a);
  return rtrans_[static_cast<std::size_t>(a)];
}

Perm CayleyLoop::left_translation(int a) const {
  check_index(a);
  return ltrans_[static_cast<std::size_t>(a)];
}

CayleyLoop load_loop(CayleyTable t) {
  validate_latin(t);
  const int n = t.order;

  int e = -1;
  for (int cand = 0; cand < n && e == -1; ++cand) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = t.entry(cand, x) == x && t.entry(x, cand) == x;
    if (ok) e = cand;
  }
  if (e == -1) fail(Err::NoIdentity, "no two-sided identity element");

  CayleyLoop L;
  L.table_ = std::move(t);
  L.identity_ = e;
  L.rtrans_.reserve(static_cast<std::size_t>(n));
  L.ltrans_.reserve(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    std::vector<int> r(static_cast<std::size_t>(n)),
        l(static_cast<std::size_t>(n));
    for (int y = 0; y < n; ++y) {
      r[static_cast<std::size_t>(y)] = L.table_.entry(y, a);
      l[static_cast<std::size_t>(y)] = L.table_.entry(a, y);
    }
    L.rtrans_.emplace_back(std::move(r));
    L.ltrans_.emplace_back(std::move(l));
  }
  L.ldiv_.assign(static_cast<std::size_t>(n) * n, -1);
  L.rdiv_.assign(static_cast<std::size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x) {
      L.ldiv_[static_cast<std::size_t>(a) * n + L.table_.entry(a, x)] = x;
      L.rdiv_[static_cast<std::size_t>(a) * n + L.table_.entry(x, a)] = x;
    }
  return L;
}

CayleyLoop materialize(const MulOracle& L) {
  const int n = L.order();
  CayleyTable t(n, std::vector<int>(static_cast<std::size_t>(n) * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.entry(i, j) = L.mul(i, j);
  return load_loop(std::move(t));
}

CayleyTable normalize_identity_first(const CayleyLoop& L) {
  const int n = L.order();
  const int e = L.identity();
  // relabel: e -> 0, remaining elements keep their relative order
  std::vector<int> relabel(static_cast<std::size_t>(n));
  int next = 1;
  for (int x = 0; x < n; ++x)
    relabel[static_cast<std::size_t>(x)] = (x == e) ? 0 : next++;
  CayleyTable t(n, std::vector<int>(static_cast<std::size_t>(n) * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      t.entry(relabel[static_cast<std::size_t>(i)],
              relabel[static_cast<std::size_t>(j)]) =
          relabel[static_cast<std::size_t>(L.mul(i, j))];
  return t;
}

std::vector<int> right_nucleus(const MulOracle& L) {
  const int n = L.order();
  std::vector<int> out;
  for (int x = 0; x < n; ++x) {
    bool in = true;
    for (int z = 0; z < n && in; ++z)
      for (int y = 0; y < n && in; ++y)
        in = L.mul(L.mul(z, y), x) == L.mul(z, L.mul(y, x));
    if (in) out.push_back(x);
  }
  return out;
}

CayleyLoop principal_isotope(const MulOracle& L, int f, int g) {
  const int n = L.order();
  CayleyTable t(n, std::vector<int>(static_cast<std::size_t>(n) * n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t.entry(x, y) = L.mul(L.rdiv(x, g), L.ldiv(f, y));
  return load_loop(std::move(t));
}

}  // namespace loopforge
