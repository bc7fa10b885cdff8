#include "loopforge/autotopism.hpp"

#include <algorithm>
#include <map>

namespace loopforge {

bool is_autotopism(const MulOracle& L, const AutotopismTriple& t) {
  const int n = L.order();
  if (t.a.degree() != n || t.b.degree() != n || t.c.degree() != n)
    fail(Err::SizeMismatch, "autotopism component degree does not match loop");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (L.mul(t.a(x), t.b(y)) != t.c(L.mul(x, y))) return false;
  return true;
}

bool has_rip(const MulOracle& L) {
  const int n = L.order();
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x)
      if (L.mul(L.mul(y, x), L.right_inverse(x)) != y) return false;
  }
  return true;
}

AutotopismTriple derived_autotopism(const MulOracle& L,
                                    const AutotopismTriple& t) {
  if (!has_rip(L))
    fail(Err::NotRIP, "derived autotopism needs the right inverse property");
  const Perm j = L.j_perm();  // throws InversesDisagree
  if (!is_autotopism(L, t))
    fail(Err::NotAutotopism, "input triple is not an autotopism");
  return {t.c, j.then(t.b).then(j), t.a};
}

namespace detail {

namespace {

struct SearchState {
  std::vector<int> image;  // -1 when unassigned
  std::vector<char> used;
};

// Propagates forced images until fixpoint. Returns false on conflict.
bool propagate(const MulOracle& dom, const std::function<int(int, int)>& f,
               const std::function<int(int, int)>& solve_p,
               const std::function<int(int, int)>& solve_q, SearchState& st) {
  const int n = dom.order();
  auto assign = [&](int x, int v) {
    if (v < 0 || v >= n) return false;
    if (st.image[static_cast<std::size_t>(x)] >= 0)
      return st.image[static_cast<std::size_t>(x)] == v;
    if (st.used[static_cast<std::size_t>(v)]) return false;
    st.image[static_cast<std::size_t>(x)] = v;
    st.used[static_cast<std::size_t>(v)] = 1;
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        const int z = dom.mul(x, y);
        const int mx = st.image[static_cast<std::size_t>(x)];
        const int my = st.image[static_cast<std::size_t>(y)];
        const int mz = st.image[static_cast<std::size_t>(z)];
        const int known = (mx >= 0) + (my >= 0) + (mz >= 0);
        if (known < 2 || known == 3) {
          if (known == 3 && f(mx, my) != mz) return false;
          continue;
        }
        if (mx >= 0 && my >= 0) {
          if (!assign(z, f(mx, my))) return false;
        } else if (mx >= 0 && mz >= 0) {
          if (!assign(y, solve_q(mx, mz))) return false;
        } else {
          if (!assign(x, solve_p(my, mz))) return false;
        }
        changed = true;
      }
    }
  }
  return true;
}

void search(const MulOracle& dom, const std::function<int(int, int)>& f,
            const std::function<int(int, int)>& solve_p,
            const std::function<int(int, int)>& solve_q, SearchState st,
            const std::function<void(const Perm&)>& emit) {
  if (!propagate(dom, f, solve_p, solve_q, st)) return;
  const int n = dom.order();
  int x = -1;
  for (int i = 0; i < n; ++i)
    if (st.image[static_cast<std::size_t>(i)] < 0) {
      x = i;
      break;
    }
  if (x == -1) {
    emit(Perm(st.image));
    return;
  }
  for (int v = 0; v < n; ++v) {
    if (st.used[static_cast<std::size_t>(v)]) continue;
    SearchState branch = st;
    branch.image[static_cast<std::size_t>(x)] = v;
    branch.used[static_cast<std::size_t>(v)] = 1;
    search(dom, f, solve_p, solve_q, std::move(branch), emit);
  }
}

}  // namespace

void binary_map_search(const MulOracle& dom,
                       const std::function<int(int, int)>& f,
                       const std::function<int(int, int)>& solve_p,
                       const std::function<int(int, int)>& solve_q,
                       const std::vector<std::pair<int, int>>& seeds,
                       const std::function<void(const Perm&)>& emit) {
  const int n = dom.order();
  SearchState st;
  st.image.assign(static_cast<std::size_t>(n), -1);
  st.used.assign(static_cast<std::size_t>(n), 0);
  for (const auto& [x, v] : seeds) {
    if (st.image[static_cast<std::size_t>(x)] >= 0) {
      if (st.image[static_cast<std::size_t>(x)] != v) return;
      continue;
    }
    if (st.used[static_cast<std::size_t>(v)]) return;
    st.image[static_cast<std::size_t>(x)] = v;
    st.used[static_cast<std::size_t>(v)] = 1;
  }
  search(dom, f, solve_p, solve_q, std::move(st), emit);
}

}  // namespace detail

std::vector<Perm> automorphism_group(const MulOracle& L) {
  std::vector<Perm> out;
  auto f = [&L](int p, int q) { return L.mul(p, q); };
  auto solve_p = [&L](int q, int r) { return L.rdiv(r, q); };
  auto solve_q = [&L](int p, int r) { return L.ldiv(p, r); };
  detail::binary_map_search(L, f, solve_p, solve_q,
                            {{L.identity(), L.identity()}},
                            [&out](const Perm& p) { out.push_back(p); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PseudoAutomorphism> pseudo_automorphisms(const MulOracle& L) {
  const int n = L.order();
  const int e = L.identity();
  std::map<Perm, std::vector<int>> companions;
  for (int c = 0; c < n; ++c) {
    // psi(x*y) = ((psi(x) * (psi(y)*c)) / c, and psi(e) = e is forced by
    // evaluating the triple condition at x = e.
    auto f = [&L, c](int p, int q) {
      return L.rdiv(L.mul(p, L.mul(q, c)), c);
    };
    auto solve_p = [&L, c](int q, int r) {
      return L.rdiv(L.mul(r, c), L.mul(q, c));
    };
    auto solve_q = [&L, c](int p, int r) {
      return L.rdiv(L.ldiv(p, L.mul(r, c)), c);
    };
    detail::binary_map_search(L, f, solve_p, solve_q, {{e, e}},
                              [&companions, c](const Perm& p) {
                                companions[p].push_back(c);
                              });
  }
  std::vector<PseudoAutomorphism> out;
  out.reserve(companions.size());
  for (auto& [psi, cs] : companions) out.push_back({psi, std::move(cs)});
  return out;
}

SpecialMapWitness is_special_map(const MulOracle& L, const Perm& theta) {
  const int n = L.order();
  if (theta.degree() != n)
    fail(Err::SizeMismatch, "special-map candidate degree mismatch");
  SpecialMapWitness w{theta, {}};
  for (int f = 0; f < n; ++f) {
    const Perm lf_inv = L.left_translation(f).inverse();
    for (int g = 0; g < n; ++g) {
      const Perm rg_inv = L.right_translation(g).inverse();
      if (is_autotopism(L, {theta.then(rg_inv), theta.then(lf_inv), theta}))
        w.pairs.emplace_back(f, g);
    }
  }
  return w;
}

std::vector<Perm> bryant_schneider_group(const MulOracle& L, int max_order) {
  const int n = L.order();
  if (n > max_order)
    fail(Err::OrderTooLarge, "Bryant-Schneider search guarded at order " +
                                 std::to_string(max_order));
  std::vector<Perm> out;
  for (int f = 0; f < n; ++f) {
    for (int g = 0; g < n; ++g) {
      // C(x*y) = (C(x)/g) * (f \ C(y)); evaluating at y = e forces
      // C(e) = f*g.
      auto fun = [&L, f, g](int p, int q) {
        return L.mul(L.rdiv(p, g), L.ldiv(f, q));
      };
      auto solve_p = [&L, f, g](int q, int r) {
        return L.mul(L.rdiv(r, L.ldiv(f, q)), g);
      };
      auto solve_q = [&L, f, g](int p, int r) {
        return L.mul(f, L.ldiv(L.rdiv(p, g), r));
      };
      detail::binary_map_search(L, fun, solve_p, solve_q,
                                {{L.identity(), L.mul(f, g)}},
                                [&out](const Perm& p) { out.push_back(p); });
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Perm> find_isomorphism(const MulOracle& A, const MulOracle& B) {
  if (A.order() != B.order()) return std::nullopt;
  std::optional<Perm> found;
  auto f = [&B](int p, int q) { return B.mul(p, q); };
  auto solve_p = [&B](int q, int r) { return B.rdiv(r, q); };
  auto solve_q = [&B](int p, int r) { return B.ldiv(p, r); };
  struct Done {};
  try {
    detail::binary_map_search(A, f, solve_p, solve_q,
                              {{A.identity(), B.identity()}},
                              [&found](const Perm& p) {
                                found = p;
                                throw Done{};
                              });
  } catch (const Done&) {
  }
  return found;
}

bool is_group_closed(const std::vector<Perm>& set) {
  if (set.empty()) return false;
  std::vector<Perm> sorted = set;
  std::sort(sorted.begin(), sorted.end());
  const auto contains = [&sorted](const Perm& p) {
    return std::binary_search(sorted.begin(), sorted.end(), p);
  };
  for (const Perm& p : set) {
    if (!contains(p.inverse())) return false;
    for (const Perm& q : set)
      if (!contains(p.then(q))) return false;
  }
  return contains(Perm::identity(set.front().degree()));
}

}  // namespace loopforge
