#include "loopforge/identity.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <thread>

namespace loopforge {

int IdentityAst::num_vars_used() const {
  int k = 0;
  for (bool b : uses_var) k += b ? 1 : 0;
  return k;
}

std::vector<int> IdentityAst::var_order() const {
  std::vector<int> order;
  for (int v = 0; v < kNumVars; ++v)
    if (uses_var[static_cast<std::size_t>(v)]) order.push_back(v);
  return order;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  IdentityAst parse() {
    ast_.lhs = term();
    expect('=');
    ast_.rhs = term();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError(pos_, "end of input",
                       "unexpected trailing input at position " +
                           std::to_string(pos_));
    if (ast_.num_vars_used() == 0)
      throw ParseError(0, "variable", "identity uses no variables");
    return std::move(ast_);
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool try_consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!try_consume(c))
      throw ParseError(pos_, std::string(1, c),
                       "expected '" + std::string(1, c) + "' at position " +
                           std::to_string(pos_));
  }

  int add(IdentityAst::Kind kind, int a, int b = -1) {
    ast_.nodes.push_back({kind, a, b});
    return static_cast<int>(ast_.nodes.size()) - 1;
  }

  int term() {
    int lhs = factor();
    for (;;) {
      const char c = peek();
      if (c == '*' || c == '\\' || c == '/') {
        ++pos_;
        const int rhs = factor();
        const auto kind = c == '*'   ? IdentityAst::Kind::Mul
                          : c == '\\' ? IdentityAst::Kind::LDiv
                                      : IdentityAst::Kind::RDiv;
        lhs = add(kind, lhs, rhs);
      } else {
        return lhs;
      }
    }
  }

  int factor() {
    int node = atom();
    while (peek() == '^') {
      ++pos_;
      if (pos_ >= text_.size() || (text_[pos_] != 'r' && text_[pos_] != 'l'))
        throw ParseError(pos_, "r or l",
                         "expected 'r' or 'l' after '^' at position " +
                             std::to_string(pos_));
      const auto kind = text_[pos_] == 'r' ? IdentityAst::Kind::RInv
                                           : IdentityAst::Kind::LInv;
      ++pos_;
      node = add(kind, node);
    }
    return node;
  }

  int atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      const int node = term();
      expect(')');
      return node;
    }
    if (c == 's') {
      ++pos_;
      int slot = 0;
      if (pos_ < text_.size() && text_[pos_] == '2') {
        slot = 1;
        ++pos_;
      }
      expect('(');
      const int child = term();
      expect(')');
      ast_.uses_slot[static_cast<std::size_t>(slot)] = true;
      return add(IdentityAst::Kind::Sigma, slot, child);
    }
    const char* v = std::strchr(kVarNames, c);
    if (c != '\0' && v != nullptr) {
      ++pos_;
      const int var = static_cast<int>(v - kVarNames);
      ast_.uses_var[static_cast<std::size_t>(var)] = true;
      return add(IdentityAst::Kind::Var, var);
    }
    throw ParseError(pos_, "variable, s(, s2( or (",
                     "unexpected character at position " +
                         std::to_string(pos_));
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  IdentityAst ast_;
};

int eval_node(const MulOracle& L, const IdentityAst& ast,
              const SigmaBindings& sig, const std::array<int, kNumVars>& vals,
              int node) {
  const auto& nd = ast.nodes[static_cast<std::size_t>(node)];
  switch (nd.kind) {
    case IdentityAst::Kind::Var:
      return vals[static_cast<std::size_t>(nd.a)];
    case IdentityAst::Kind::Mul:
      return L.mul(eval_node(L, ast, sig, vals, nd.a),
                   eval_node(L, ast, sig, vals, nd.b));
    case IdentityAst::Kind::LDiv:
      return L.ldiv(eval_node(L, ast, sig, vals, nd.a),
                    eval_node(L, ast, sig, vals, nd.b));
    case IdentityAst::Kind::RDiv:
      return L.rdiv(eval_node(L, ast, sig, vals, nd.a),
                    eval_node(L, ast, sig, vals, nd.b));
    case IdentityAst::Kind::RInv:
      return L.right_inverse(eval_node(L, ast, sig, vals, nd.a));
    case IdentityAst::Kind::LInv:
      return L.left_inverse(eval_node(L, ast, sig, vals, nd.a));
    case IdentityAst::Kind::Sigma: {
      const SelfMap* m = nd.a == 0 ? sig.s : sig.s2;
      return (*m)(eval_node(L, ast, sig, vals, nd.b));
    }
  }
  fail(Err::Precondition, "corrupt identity node");
}

}  // namespace

IdentityAst parse_identity(const std::string& text) {
  return Parser(text).parse();
}

std::string EvalMode::to_string() const {
  switch (kind) {
    case Kind::Exhaustive:
      return "exhaustive";
    case Kind::Sample:
      return "sample:" + std::to_string(count) + ":" + std::to_string(seed);
    case Kind::Scan:
      return "scan:" + std::to_string(count);
  }
  return "?";
}

std::string Witness::to_string() const {
  std::string out;
  for (const auto& [name, value] : values) {
    if (!out.empty()) out += " ";
    out += name;
    out += "=";
    out += std::to_string(value);
  }
  return out;
}

CheckResult eval_identity(const MulOracle& L, const IdentityAst& ast,
                          const SigmaBindings& sig, EvalMode mode,
                          const EvalOptions& opts) {
  for (int slot = 0; slot < 2; ++slot) {
    if (!ast.uses_slot[static_cast<std::size_t>(slot)]) continue;
    const SelfMap* m = slot == 0 ? sig.s : sig.s2;
    if (m == nullptr)
      fail(Err::UnboundSigmaSlot,
           std::string("identity uses unbound sigma slot ") +
               (slot == 0 ? "s" : "s2"));
    if (m->degree() != L.order())
      fail(Err::SizeMismatch, "sigma binding degree does not match loop order");
  }

  const int n = L.order();
  const std::vector<int> vars = ast.var_order();
  const int k = static_cast<int>(vars.size());

  // total assignments in the quantification space
  std::uint64_t space = 1;
  bool overflow = false;
  for (int i = 0; i < k; ++i) {
    if (space > UINT64_MAX / static_cast<std::uint64_t>(n)) {
      overflow = true;
      break;
    }
    space *= static_cast<std::uint64_t>(n);
  }

  std::uint64_t total = 0;
  switch (mode.kind) {
    case EvalMode::Kind::Exhaustive:
      if (overflow || space > opts.exhaustive_budget)
        fail(Err::BudgetExceeded,
             "exhaustive evaluation needs " +
                 (overflow ? std::string("> 2^64") : std::to_string(space)) +
                 " assignments (budget " +
                 std::to_string(opts.exhaustive_budget) +
                 "); use sampled mode");
      total = space;
      break;
    case EvalMode::Kind::Scan:
      total = overflow ? mode.count : std::min(space, mode.count);
      break;
    case EvalMode::Kind::Sample:
      total = mode.count;
      break;
  }

  const bool sampled = mode.kind == EvalMode::Kind::Sample;

  // Per-index assignment decoding. Lexicographic order for exhaustive/scan:
  // the first listed variable is the slowest digit.
  auto decode = [&](std::uint64_t idx, std::array<int, kNumVars>& vals) {
    if (sampled) {
      for (int i = 0; i < k; ++i)
        vals[static_cast<std::size_t>(vars[static_cast<std::size_t>(i)])] =
            detail::sampled_value(mode.seed, idx, i, n);
    } else {
      for (int i = k - 1; i >= 0; --i) {
        vals[static_cast<std::size_t>(vars[static_cast<std::size_t>(i)])] =
            static_cast<int>(idx % static_cast<std::uint64_t>(n));
        idx /= static_cast<std::uint64_t>(n);
      }
    }
  };

  std::atomic<std::uint64_t> best{UINT64_MAX};

  auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
    std::array<int, kNumVars> vals{};
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      if ((idx & 0xfff) == 0 && idx >= best.load(std::memory_order_relaxed))
        return;
      decode(idx, vals);
      if (eval_node(L, ast, sig, vals, ast.lhs) !=
          eval_node(L, ast, sig, vals, ast.rhs)) {
        std::uint64_t cur = best.load(std::memory_order_relaxed);
        while (idx < cur &&
               !best.compare_exchange_weak(cur, idx, std::memory_order_relaxed))
          ;
        return;
      }
    }
  };

  const int threads = std::max(1, opts.threads);
  if (threads == 1 || total < 4096) {
    worker(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk =
        (total + static_cast<std::uint64_t>(threads) - 1) /
        static_cast<std::uint64_t>(threads);
    for (int t = 0; t < threads; ++t) {
      const std::uint64_t lo = chunk * static_cast<std::uint64_t>(t);
      const std::uint64_t hi = std::min(total, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  CheckResult res;
  res.mode = mode;
  const std::uint64_t found = best.load();
  if (found == UINT64_MAX) {
    res.holds = true;
    res.assignments_checked = total;
  } else {
    res.holds = false;
    res.assignments_checked = found + 1;
    std::array<int, kNumVars> vals{};
    decode(found, vals);
    Witness w;
    for (int v : vars)
      w.values.emplace_back(kVarNames[v], vals[static_cast<std::size_t>(v)]);
    res.witness = std::move(w);
  }
  return res;
}

CheckResult check_identity(const MulOracle& L, const std::string& text,
                           const SigmaBindings& sig, EvalMode mode,
                           const EvalOptions& opts) {
  return eval_identity(L, parse_identity(text), sig, mode, opts);
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"right-bol", {"((x*y)*z)*y = x*((y*z)*y)"}, "right Bol law"},
      {"left-bol", {"y*(z*(y*x)) = (y*(z*y))*x"}, "left Bol law"},
      {"moufang", {"(x*y)*(z*x) = (x*(y*z))*x"}, "Moufang law"},
      {"rip", {"(y*x)*x^r = y"}, "right inverse property"},
      {"lip", {"x^l*(x*y) = y"}, "left inverse property"},
      {"aip", {"(x*y)^r = x^r*y^r"}, "automorphic inverse property"},
      {"gen-right-bol",
       {"((x*y)*z)*s(y) = x*((y*z)*s(y))"},
       "generalized right Bol law"},
      {"gen-left-bol",
       {"s(y)*(z*(y*x)) = (s(y)*(z*y))*x"},
       "generalized left Bol law"},
      {"m-loop", {"(x*y)*(z*s(x)) = (x*(y*z))*s(x)"}, "M-loop law"},
      {"sigma-flexible",
       {"(x*y)*s(x) = x*(y*s(x))"},
       "flexibility with a self-map"},
      {"bruck-condition",
       {"((x*y)*z)*y = x*((y*z)*y)", "(x*y)^r = x^r*y^r"},
       "Bol law with automorphic inverses"},
      {"associative", {"(x*y)*z = x*(y*z)"}, "associative law"},
      {"commutative", {"x*y = y*x"}, "commutative law"},
  };
  return entries;
}

const CatalogEntry* catalog_find(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

CheckResult eval_named(const MulOracle& L, const std::string& name,
                       const SelfMap* sigma, EvalMode mode,
                       const EvalOptions& opts) {
  const CatalogEntry* entry = catalog_find(name);
  if (entry == nullptr)
    fail(Err::MissingParameter, "unknown catalog identity '" + name + "'");
  SigmaBindings sig;
  sig.s = sigma;
  return eval_catalog_entry(L, *entry, sig, mode, opts);
}

CheckResult eval_catalog_entry(const MulOracle& L, const CatalogEntry& entry,
                               const SigmaBindings& sig, EvalMode mode,
                               const EvalOptions& opts) {
  CheckResult combined;
  combined.mode = mode;
  for (const auto& text : entry.identities) {
    CheckResult r = eval_identity(L, parse_identity(text), sig, mode, opts);
    combined.assignments_checked += r.assignments_checked;
    if (!r.holds) {
      combined.holds = false;
      combined.witness = r.witness;
      return combined;
    }
  }
  combined.holds = true;
  return combined;
}

}  // namespace loopforge
