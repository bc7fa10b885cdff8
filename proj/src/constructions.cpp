#include "loopforge/constructions.hpp"

#include <algorithm>
#include <unordered_map>

#include "loopforge/autotopism.hpp"

namespace loopforge {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Ring Ring::zn(int modulus) {
  if (modulus < 2) fail(Err::SizeMismatch, "ring modulus must be >= 2");
  Ring r;
  r.n_ = modulus;
  r.zero_ = 0;
  r.add_.resize(static_cast<std::size_t>(modulus) * modulus);
  r.mul_.resize(static_cast<std::size_t>(modulus) * modulus);
  for (int a = 0; a < modulus; ++a)
    for (int b = 0; b < modulus; ++b) {
      r.add_[r.idx(a, b)] = (a + b) % modulus;
      r.mul_[r.idx(a, b)] = (a * b) % modulus;
    }
  r.finish("zn:" + std::to_string(modulus));
  return r;
}

Ring Ring::mat_gf(int dim, int prime) {
  if (!is_prime(prime))
    fail(Err::NotPrime, std::to_string(prime) + " is not prime");
  if (dim < 1) fail(Err::SizeMismatch, "matrix dimension must be positive");
  const int cells = dim * dim;
  long long count = 1;
  for (int i = 0; i < cells; ++i) {
    count *= prime;
    if (count > 6561)
      fail(Err::OrderTooLarge, "matrix ring larger than 6561 elements");
  }
  const int n = static_cast<int>(count);

  // element index = base-p digits of the row-major matrix entries
  auto decode = [&](int a, std::vector<int>& m) {
    for (int i = 0; i < cells; ++i) {
      m[static_cast<std::size_t>(i)] = a % prime;
      a /= prime;
    }
  };
  auto encode = [&](const std::vector<int>& m) {
    int a = 0;
    for (int i = cells - 1; i >= 0; --i)
      a = a * prime + m[static_cast<std::size_t>(i)];
    return a;
  };

  Ring r;
  r.n_ = n;
  r.zero_ = 0;
  r.add_.resize(static_cast<std::size_t>(n) * n);
  r.mul_.resize(static_cast<std::size_t>(n) * n);
  std::vector<int> ma(static_cast<std::size_t>(cells)),
      mb(static_cast<std::size_t>(cells)), mc(static_cast<std::size_t>(cells));
  for (int a = 0; a < n; ++a) {
    decode(a, ma);
    for (int b = 0; b < n; ++b) {
      decode(b, mb);
      for (int i = 0; i < cells; ++i)
        mc[static_cast<std::size_t>(i)] =
            (ma[static_cast<std::size_t>(i)] + mb[static_cast<std::size_t>(i)]) %
            prime;
      r.add_[r.idx(a, b)] = encode(mc);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          int s = 0;
          for (int t = 0; t < dim; ++t)
            s += ma[static_cast<std::size_t>(i * dim + t)] *
                 mb[static_cast<std::size_t>(t * dim + j)];
          mc[static_cast<std::size_t>(i * dim + j)] = s % prime;
        }
      r.mul_[r.idx(a, b)] = encode(mc);
    }
  }
  r.finish("m" + std::to_string(dim) + ":" + std::to_string(prime));
  return r;
}

void Ring::finish(std::string spec) {
  spec_ = std::move(spec);
  neg_.assign(static_cast<std::size_t>(n_), -1);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (add_[idx(a, b)] == zero_) {
        neg_[static_cast<std::size_t>(a)] = b;
        break;
      }
  for (int a = 0; a < n_; ++a)
    if (neg_[static_cast<std::size_t>(a)] < 0)
      fail(Err::AxiomViolation, "element without additive inverse");
  cube_.resize(static_cast<std::size_t>(n_));
  for (int a = 0; a < n_; ++a)
    cube_[static_cast<std::size_t>(a)] = mul_[idx(mul_[idx(a, a)], a)];
  check_axioms();
}

void Ring::check_axioms() const {
  auto check = [this](int a, int b, int c) {
    if (add(add(a, b), c) != add(a, add(b, c)))
      fail(Err::AxiomViolation, "addition not associative");
    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
      fail(Err::AxiomViolation, "multiplication not associative");
    if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
      fail(Err::AxiomViolation, "left distributivity fails");
    if (mul(add(a, b), c) != add(mul(a, c), mul(b, c)))
      fail(Err::AxiomViolation, "right distributivity fails");
  };
  if (n_ <= 128) {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        if (add(a, b) != add(b, a))
          fail(Err::AxiomViolation, "addition not commutative");
        for (int c = 0; c < n_; ++c) check(a, b, c);
      }
  } else {
    for (std::uint64_t i = 0; i < 200000; ++i) {
      const int a = detail::sampled_value(7, i, 0, n_);
      const int b = detail::sampled_value(7, i, 1, n_);
      const int c = detail::sampled_value(7, i, 2, n_);
      if (add(a, b) != add(b, a))
        fail(Err::AxiomViolation, "addition not commutative");
      check(a, b, c);
    }
  }
  for (int a = 0; a < n_; ++a)
    if (add(a, zero_) != a || add(zero_, a) != a)
      fail(Err::AxiomViolation, "zero is not neutral");
}

int Ring::pow(int a, int k) const {
  int acc = -1;
  for (int i = 0; i < k; ++i) acc = i == 0 ? a : mul(acc, a);
  if (k == 0) fail(Err::MissingParameter, "ring power needs k >= 1");
  return acc;
}

RingPairLoop::RingPairLoop(Ring ring) : ring_(std::move(ring)) {
  self_check();
}

int RingPairLoop::mul(int a, int b) const {
  check_index(a);
  check_index(b);
  const int R = ring_.size();
  const int u = a / R, f = a % R, v = b / R, g = b % R;
  const int w = ring_.add(u, v);
  const int h = ring_.add(ring_.add(f, g), ring_.mul(u, ring_.cube(v)));
  return w * R + h;
}

int RingPairLoop::ldiv(int a, int b) const {
  check_index(a);
  check_index(b);
  const int R = ring_.size();
  const int u = a / R, f = a % R, w = b / R, h = b % R;
  const int v = ring_.sub(w, u);
  const int g = ring_.sub(ring_.sub(h, f), ring_.mul(u, ring_.cube(v)));
  return v * R + g;
}

int RingPairLoop::rdiv(int b, int a) const {
  check_index(a);
  check_index(b);
  const int R = ring_.size();
  const int w = b / R, h = b % R, v = a / R, g = a % R;
  const int u = ring_.sub(w, v);
  const int f = ring_.sub(ring_.sub(h, g), ring_.mul(u, ring_.cube(v)));
  return u * R + f;
}

void RingPairLoop::self_check() const {
  const int n = order();
  auto check_pair = [this](int a, int b) {
    if (mul(a, ldiv(a, b)) != b || mul(rdiv(b, a), a) != b)
      fail(Err::AxiomViolation, "ring-pair loop division round-trip failed");
  };
  if (n <= 256) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) check_pair(a, b);
  } else {
    for (std::uint64_t i = 0; i < 100000; ++i)
      check_pair(detail::sampled_value(11, i, 0, n),
                 detail::sampled_value(11, i, 1, n));
  }
  for (int a = 0; a < n && a < 512; ++a)
    if (mul(0, a) != a || mul(a, 0) != a)
      fail(Err::AxiomViolation, "(0,0) is not the identity");
}

std::string SigmaSpec::to_string() const {
  switch (kind) {
    case Kind::Identity:
      return "identity";
    case Kind::Square:
      return "square";
    case Kind::RdivInv:
      return "rdivinv:" + std::to_string(g);
    case Kind::Table:
      return "table";
  }
  return "?";
}

SelfMap make_sigma(const MulOracle& L, const SigmaSpec& spec) {
  const int n = L.order();
  switch (spec.kind) {
    case SigmaSpec::Kind::Identity:
      return SelfMap::identity(n);
    case SigmaSpec::Kind::Square: {
      std::vector<int> img(static_cast<std::size_t>(n));
      for (int x = 0; x < n; ++x)
        img[static_cast<std::size_t>(x)] = L.mul(x, x);
      return SelfMap(std::move(img));
    }
    case SigmaSpec::Kind::RdivInv: {
      if (spec.g < 0 || spec.g >= n)
        fail(Err::IndexOutOfRange, "rdivinv parameter out of range");
      const Perm j = L.j_perm();  // throws InversesDisagree
      std::vector<int> img(static_cast<std::size_t>(n));
      for (int x = 0; x < n; ++x)
        img[static_cast<std::size_t>(x)] = j(L.mul(x, j(spec.g)));
      return SelfMap(std::move(img));
    }
    case SigmaSpec::Kind::Table:
      if (spec.table.degree() != n)
        fail(Err::SizeMismatch, "sigma table degree does not match loop");
      return spec.table;
  }
  fail(Err::MissingParameter, "corrupt sigma spec");
}

namespace {

// ---------------------------------------------------------------------------
// Corpus generation: backtracking over table cells in row-major order with
// lazy identity checking on the partial table.

struct PartialTable {
  int n;
  std::vector<int> cells;  // -1 unknown; row 0 / column 0 fixed to identity

  int mul(int a, int b) const {
    return cells[static_cast<std::size_t>(a) * n + b];
  }
  // x with a*x = b, if determined by the committed row.
  int ldiv(int a, int b) const {
    bool complete = true;
    for (int x = 0; x < n; ++x) {
      const int v = mul(a, x);
      if (v == b) return x;
      if (v < 0) complete = false;
    }
    return complete ? -2 : -1;  // -2 cannot happen for Latin-consistent rows
  }
  int rdiv(int b, int a) const {
    bool complete = true;
    for (int y = 0; y < n; ++y) {
      const int v = mul(y, a);
      if (v == b) return y;
      if (v < 0) complete = false;
    }
    return complete ? -2 : -1;
  }
  int right_inverse(int a) const { return ldiv(a, 0); }
  int left_inverse(int a) const { return rdiv(0, a); }
};

struct CompiledFilter {
  CatalogEntry entry;
  std::vector<IdentityAst> asts;
  SigmaSpec sigma;
  bool want;
  bool uses_sigma = false;
};

// Evaluates a node over the partial table; -1 when not yet determined.
int partial_eval(const PartialTable& t, const IdentityAst& ast,
                 const CompiledFilter& f, const std::array<int, kNumVars>& vals,
                 int node) {
  const auto& nd = ast.nodes[static_cast<std::size_t>(node)];
  auto bin = [&](auto op) {
    const int a = partial_eval(t, ast, f, vals, nd.a);
    if (a < 0) return -1;
    const int b = partial_eval(t, ast, f, vals, nd.b);
    if (b < 0) return -1;
    return op(a, b);
  };
  switch (nd.kind) {
    case IdentityAst::Kind::Var:
      return vals[static_cast<std::size_t>(nd.a)];
    case IdentityAst::Kind::Mul:
      return bin([&t](int a, int b) { return t.mul(a, b); });
    case IdentityAst::Kind::LDiv:
      return bin([&t](int a, int b) { return std::max(t.ldiv(a, b), -1); });
    case IdentityAst::Kind::RDiv:
      return bin([&t](int a, int b) { return std::max(t.rdiv(a, b), -1); });
    case IdentityAst::Kind::RInv: {
      const int a = partial_eval(t, ast, f, vals, nd.a);
      return a < 0 ? -1 : std::max(t.right_inverse(a), -1);
    }
    case IdentityAst::Kind::LInv: {
      const int a = partial_eval(t, ast, f, vals, nd.a);
      return a < 0 ? -1 : std::max(t.left_inverse(a), -1);
    }
    case IdentityAst::Kind::Sigma: {
      const int a = partial_eval(t, ast, f, vals, nd.b);
      if (a < 0) return -1;
      switch (f.sigma.kind) {
        case SigmaSpec::Kind::Identity:
          return a;
        case SigmaSpec::Kind::Square:
          return t.mul(a, a);
        case SigmaSpec::Kind::RdivInv: {
          const int ginv = t.right_inverse(f.sigma.g);
          if (ginv < 0) return -1;
          const int prod = t.mul(a, ginv);
          if (prod < 0) return -1;
          return std::max(t.right_inverse(prod), -1);
        }
        case SigmaSpec::Kind::Table:
          return f.sigma.table(a);
      }
      return -1;
    }
  }
  return -1;
}

// True when some fully determined assignment already falsifies the identity.
bool partially_falsified(const PartialTable& t, const CompiledFilter& f) {
  std::array<int, kNumVars> vals{};
  for (const auto& ast : f.asts) {
    const std::vector<int> vars = ast.var_order();
    const int k = static_cast<int>(vars.size());
    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) total *= static_cast<std::uint64_t>(t.n);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t rest = idx;
      for (int i = k - 1; i >= 0; --i) {
        vals[static_cast<std::size_t>(vars[static_cast<std::size_t>(i)])] =
            static_cast<int>(rest % static_cast<std::uint64_t>(t.n));
        rest /= static_cast<std::uint64_t>(t.n);
      }
      const int lhs = partial_eval(t, ast, f, vals, ast.lhs);
      if (lhs < 0) continue;
      const int rhs = partial_eval(t, ast, f, vals, ast.rhs);
      if (rhs >= 0 && lhs != rhs) return true;
    }
  }
  return false;
}

bool full_filter_check(const CayleyLoop& L, const CompiledFilter& f) {
  SelfMap sigma;
  SigmaBindings sig;
  if (f.uses_sigma) {
    try {
      sigma = make_sigma(L, f.sigma);
    } catch (const LoopError&) {
      // sigma (e.g. rdiv_inv) undefined on this loop: the identity cannot
      // hold as stated
      return !f.want;
    }
    sig.s = &sigma;
  }
  const CheckResult r =
      eval_catalog_entry(L, f.entry, sig, EvalMode::exhaustive());
  return r.holds == f.want;
}

// Cheap isomorphism invariant used to bucket corpus candidates before the
// pairwise search: cycle structures of all translations plus counts of
// commuting pairs and associating triples.
std::uint64_t iso_fingerprint(const CayleyLoop& L) {
  const int n = L.order();
  std::vector<std::uint64_t> per_elem;
  per_elem.reserve(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    std::uint64_t h = L.mul(x, x) == x ? 1 : 0;
    for (const Perm& p : {L.right_translation(x), L.left_translation(x)}) {
      std::vector<int> lens;
      std::vector<char> seen(static_cast<std::size_t>(n), 0);
      for (int s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        int len = 0, cur = s;
        while (!seen[static_cast<std::size_t>(cur)]) {
          seen[static_cast<std::size_t>(cur)] = 1;
          cur = p(cur);
          ++len;
        }
        lens.push_back(len);
      }
      std::sort(lens.begin(), lens.end());
      for (int len : lens)
        h = detail::splitmix64(h ^ static_cast<std::uint64_t>(len));
    }
    per_elem.push_back(h);
  }
  std::sort(per_elem.begin(), per_elem.end());
  std::uint64_t fp = static_cast<std::uint64_t>(n);
  for (std::uint64_t h : per_elem) fp = detail::splitmix64(fp ^ h);
  std::uint64_t comm = 0, assoc = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      comm += L.mul(a, b) == L.mul(b, a) ? 1 : 0;
      for (int c = 0; c < n; ++c)
        assoc += L.mul(L.mul(a, b), c) == L.mul(a, L.mul(b, c)) ? 1 : 0;
    }
  fp = detail::splitmix64(fp ^ comm);
  fp = detail::splitmix64(fp ^ assoc);
  return fp;
}

struct CorpusSearch {
  int n;
  std::vector<CompiledFilter> filters;
  std::optional<int> max_results;
  PartialTable table;
  std::vector<std::uint32_t> row_used, col_used;
  std::vector<CayleyTable> found;

  bool done() const {
    return max_results &&
           static_cast<int>(found.size()) >= *max_results;
  }

  void run() {
    table.n = n;
    table.cells.assign(static_cast<std::size_t>(n) * n, -1);
    row_used.assign(static_cast<std::size_t>(n), 0);
    col_used.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      set(0, i, i);
      if (i > 0) set(i, 0, i);
    }
    dfs(n + 1);  // first free cell in row-major order is (1,1)
  }

  void set(int i, int j, int v) {
    table.cells[static_cast<std::size_t>(i) * n + j] = v;
    row_used[static_cast<std::size_t>(i)] |= 1u << v;
    col_used[static_cast<std::size_t>(j)] |= 1u << v;
  }
  void unset(int i, int j, int v) {
    table.cells[static_cast<std::size_t>(i) * n + j] = -1;
    row_used[static_cast<std::size_t>(i)] &= ~(1u << v);
    col_used[static_cast<std::size_t>(j)] &= ~(1u << v);
  }

  void dfs(int cell) {
    if (done()) return;
    while (cell < n * n && table.cells[static_cast<std::size_t>(cell)] >= 0)
      ++cell;
    if (cell >= n * n) {
      leaf();
      return;
    }
    const int i = cell / n, j = cell % n;
    for (int v = 0; v < n; ++v) {
      if ((row_used[static_cast<std::size_t>(i)] >> v) & 1u) continue;
      if ((col_used[static_cast<std::size_t>(j)] >> v) & 1u) continue;
      set(i, j, v);
      bool ok = true;
      for (const auto& f : filters)
        if (f.want && partially_falsified(table, f)) {
          ok = false;
          break;
        }
      if (ok) dfs(cell + 1);
      unset(i, j, v);
      if (done()) return;
    }
  }

  void leaf() {
    CayleyTable t(n, table.cells);
    CayleyLoop L = load_loop(t);
    for (const auto& f : filters)
      if (!full_filter_check(L, f)) return;
    found.push_back(std::move(t));
  }
};

}  // namespace

std::vector<CayleyLoop> small_loop_corpus(
    int order, const std::vector<CorpusFilter>& filters,
    std::optional<int> max_results) {
  if (order < 1 || order > 8)
    fail(Err::OrderTooLarge, "corpus generation supports orders 1..8");
  if (order >= 7) {
    bool has_pruning = false;
    for (const auto& f : filters) has_pruning |= f.want;
    if (!has_pruning)
      fail(Err::OrderTooLarge,
           "orders 7-8 need at least one positive filter for pruning");
  }

  CorpusSearch search;
  search.n = order;
  search.max_results = max_results;
  for (const auto& f : filters) {
    const CatalogEntry* entry = catalog_find(f.identity_name);
    if (entry == nullptr)
      fail(Err::MissingParameter,
           "unknown identity filter '" + f.identity_name + "'");
    CompiledFilter cf;
    cf.entry = *entry;
    cf.sigma = f.sigma;
    cf.want = f.want;
    for (const auto& text : entry->identities) {
      cf.asts.push_back(parse_identity(text));
      cf.uses_sigma |= cf.asts.back().uses_slot[0] || cf.asts.back().uses_slot[1];
    }
    search.filters.push_back(std::move(cf));
  }
  search.run();

  // isomorphism rejection, keeping the first-found representative
  std::vector<CayleyLoop> reps;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
  for (auto& t : search.found) {
    CayleyLoop L = load_loop(std::move(t));
    const std::uint64_t fp = iso_fingerprint(L);
    bool fresh = true;
    for (std::size_t idx : buckets[fp])
      if (find_isomorphism(L, reps[idx]).has_value()) {
        fresh = false;
        break;
      }
    if (fresh) {
      buckets[fp].push_back(reps.size());
      reps.push_back(std::move(L));
    }
  }
  std::sort(reps.begin(), reps.end(),
            [](const CayleyLoop& a, const CayleyLoop& b) {
              return a.table().entries < b.table().entries;
            });
  return reps;
}

}  // namespace loopforge
