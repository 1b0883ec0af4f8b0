#pragma once

// Brute-force reference implementations used to cross-check the library.
// They work on plain tables and sets and share no code with bracelab beyond
// the table accessors.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "bracelab/bracelab.hpp"

namespace oracle {

using bracelab::Elem;
using Set = std::set<Elem>;
using Table = std::vector<std::vector<Elem>>;

inline Table table_of(const bracelab::GroupTable& g) { return g.raw(); }

inline bool is_group(const Table& t) {
  const std::size_t n = t.size();
  if (n == 0) return false;
  for (const auto& r : t)
    if (r.size() != n) return false;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (t[a][b] >= n) return false;
      for (Elem c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) return false;
    }
  std::optional<Elem> e;
  for (Elem x = 0; x < n && !e; ++x) {
    bool ok = true;
    for (Elem y = 0; y < n; ++y) ok = ok && t[x][y] == y && t[y][x] == y;
    if (ok) e = x;
  }
  if (!e) return false;
  for (Elem a = 0; a < n; ++a) {
    bool has = false;
    for (Elem b = 0; b < n; ++b) has = has || (t[a][b] == *e && t[b][a] == *e);
    if (!has) return false;
  }
  return true;
}

inline Elem inverse(const Table& t, Elem a) {
  for (Elem b = 0; b < t.size(); ++b)
    if (t[a][b] == 0) return b;
  return 0;
}

/// Closure under the product by repeated squaring of the set until stable.
inline Set closure(const Table& t, Set s) {
  s.insert(0);
  for (;;) {
    Set next = s;
    for (Elem a : s)
      for (Elem b : s) next.insert(t[a][b]);
    if (next == s) return s;
    s = std::move(next);
  }
}

inline bool is_subgroup(const Table& t, const Set& s) {
  if (!s.count(0)) return false;
  for (Elem a : s)
    for (Elem b : s)
      if (!s.count(t[a][b])) return false;
  return true;
}

inline bool is_normal(const Table& t, const Set& s) {
  if (!is_subgroup(t, s)) return false;
  for (Elem g = 0; g < t.size(); ++g)
    for (Elem x : s)
      if (!s.count(t[t[g][x]][inverse(t, g)])) return false;
  return true;
}

inline std::vector<Set> all_subsets(std::size_t n) {
  std::vector<Set> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Set s;
    for (Elem i = 0; i < n; ++i)
      if (mask >> i & 1) s.insert(i);
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<Set> normal_subgroups(const Table& t) {
  std::vector<Set> out;
  for (auto& s : all_subsets(t.size()))
    if (is_normal(t, s)) out.push_back(s);
  return out;
}

inline Set center(const Table& t) {
  Set z;
  for (Elem a = 0; a < t.size(); ++a) {
    bool c = true;
    for (Elem b = 0; b < t.size(); ++b) c = c && t[a][b] == t[b][a];
    if (c) z.insert(a);
  }
  return z;
}

inline Elem commutator(const Table& t, Elem a, Elem b) {
  return t[t[t[a][b]][inverse(t, a)]][inverse(t, b)];
}

inline Set derived(const Table& t) {
  Set s;
  for (Elem a = 0; a < t.size(); ++a)
    for (Elem b = 0; b < t.size(); ++b) s.insert(commutator(t, a, b));
  return closure(t, s);
}

inline std::size_t order_of(const Table& t, Elem a) {
  std::size_t k = 1;
  for (Elem x = a; x != 0; x = t[x][a]) ++k;
  return k;
}

inline std::map<std::size_t, std::size_t> profile(const Table& t) {
  std::map<std::size_t, std::size_t> m;
  for (Elem a = 0; a < t.size(); ++a) ++m[order_of(t, a)];
  return m;
}

/// Isomorphism invariants strong enough to separate the groups of order <= 16.
struct Fingerprint {
  std::size_t order;
  std::map<std::size_t, std::size_t> orders;
  std::size_t center;
  std::size_t derived;
  std::size_t squares;
  std::size_t normal_count;
  std::map<std::size_t, std::size_t> center_orders;
  auto key() const { return std::tie(order, orders, center, derived, squares, normal_count, center_orders); }
  friend bool operator<(const Fingerprint& a, const Fingerprint& b) { return a.key() < b.key(); }
  friend bool operator==(const Fingerprint& a, const Fingerprint& b) { return a.key() == b.key(); }
};

inline Fingerprint fingerprint(const Table& t) {
  Fingerprint f;
  f.order = t.size();
  f.orders = profile(t);
  const auto z = center(t);
  f.center = z.size();
  f.derived = derived(t).size();
  Set sq;
  for (Elem a = 0; a < t.size(); ++a) sq.insert(t[a][a]);
  f.squares = sq.size();
  f.normal_count = t.size() <= 16 ? normal_subgroups(t).size() : 0;
  for (Elem a : z) ++f.center_orders[order_of(t, a)];
  return f;
}

/// Exhaustive search over all bijections; only for tiny groups.
inline bool isomorphic_bruteforce(const Table& g, const Table& h) {
  if (g.size() != h.size()) return false;
  std::vector<Elem> perm(g.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (perm[0] != 0) continue;
    bool ok = true;
    for (Elem a = 0; a < g.size() && ok; ++a)
      for (Elem b = 0; b < g.size() && ok; ++b) ok = perm[g[a][b]] == h[perm[a]][perm[b]];
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Skew braces given by two raw tables with identity 0.

struct Brace {
  Table dot, circ;
  std::size_t n() const { return dot.size(); }
  Elem dinv(Elem a) const { return inverse(dot, a); }
  Elem cinv(Elem a) const { return inverse(circ, a); }
  Elem star(Elem a, Elem b) const { return dot[dot[dinv(a)][circ[a][b]]][dinv(b)]; }
};

inline Brace from(const bracelab::SkewBrace& b) { return {b.dot_group().raw(), b.circ_group().raw()}; }

inline bool left_brace_relation(const Brace& b) {
  for (Elem x = 0; x < b.n(); ++x)
    for (Elem y = 0; y < b.n(); ++y)
      for (Elem z = 0; z < b.n(); ++z)
        if (b.circ[x][b.dot[y][z]] != b.dot[b.dot[b.circ[x][y]][b.dinv(x)]][b.circ[x][z]]) return false;
  return true;
}

inline bool is_ideal(const Brace& b, const Set& s) {
  if (!is_normal(b.dot, s) || !is_normal(b.circ, s)) return false;
  // a.I = a o I for every a
  for (Elem a = 0; a < b.n(); ++a) {
    Set l, r;
    for (Elem x : s) {
      l.insert(b.dot[a][x]);
      r.insert(b.circ[a][x]);
    }
    if (l != r) return false;
  }
  return true;
}

inline std::vector<Set> ideals(const Brace& b) {
  std::vector<Set> out;
  for (auto& s : all_subsets(b.n()))
    if (is_ideal(b, s)) out.push_back(s);
  return out;
}

/// Smallest ideal containing every a*b.
inline Set derived_ideal(const Brace& b) {
  Set stars;
  for (Elem x = 0; x < b.n(); ++x)
    for (Elem y = 0; y < b.n(); ++y) stars.insert(b.star(x, y));
  Set best;
  bool found = false;
  for (auto& s : ideals(b))
    if (std::includes(s.begin(), s.end(), stars.begin(), stars.end()) && (!found || s.size() < best.size())) {
      best = s;
      found = true;
    }
  return best;
}

inline Set socle(const Brace& b) {
  Set s;
  const auto z = center(b.dot);
  for (Elem x : z) {
    bool ok = true;
    for (Elem y = 0; y < b.n(); ++y) ok = ok && b.circ[x][y] == b.dot[x][y];
    if (ok) s.insert(x);
  }
  return s;
}

/// x with x central in (A,.), x*a = a*x = 1 for all a.
inline Set annihilator(const Brace& b) {
  Set s;
  for (Elem x = 0; x < b.n(); ++x) {
    bool ok = true;
    for (Elem y = 0; y < b.n() && ok; ++y)
      ok = b.dot[x][y] == b.dot[y][x] && b.circ[x][y] == b.circ[y][x] && b.star(x, y) == 0 && b.star(y, x) == 0;
    if (ok) s.insert(x);
  }
  return s;
}

/// x whose image is in Ann(A/Ann(A)): x*a, a*x, [x,a] in Ann(A) for all a.
inline Set second_annihilator(const Brace& b) {
  const auto ann = annihilator(b);
  Set s;
  for (Elem x = 0; x < b.n(); ++x) {
    bool ok = true;
    for (Elem y = 0; y < b.n() && ok; ++y)
      ok = ann.count(b.star(x, y)) && ann.count(b.star(y, x)) && ann.count(commutator(b.dot, x, y));
    if (ok) s.insert(x);
  }
  return s;
}

inline bool two_sided(const Brace& b) {
  for (Elem a = 0; a < b.n(); ++a)
    for (Elem x = 0; x < b.n(); ++x)
      for (Elem y = 0; y < b.n(); ++y)
        if (b.circ[b.dot[x][y]][a] != b.dot[b.dot[b.circ[x][a]][b.dinv(a)]][b.circ[y][a]]) return false;
  return true;
}

/// Subgroup of (A,.) generated by x*y over x in X, y in Y.
inline Set star_span(const Brace& b, const Set& xs, const Set& ys) {
  Set s;
  for (Elem x : xs)
    for (Elem y : ys) s.insert(b.star(x, y));
  return closure(b.dot, s);
}

// Linear algebra over F_p by enumeration.

inline std::vector<std::vector<int>> all_vectors(unsigned p, std::size_t n) {
  std::vector<std::vector<int>> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  for (std::size_t k = 0; k < total; ++k) {
    std::vector<int> v(n);
    std::size_t r = k;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = static_cast<int>(r % p);
      r /= p;
    }
    out.push_back(v);
  }
  return out;
}

inline std::vector<int> apply(const std::vector<std::vector<int>>& m, const std::vector<int>& v, unsigned p) {
  std::vector<int> r(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    long s = 0;
    for (std::size_t j = 0; j < v.size(); ++j) s += long{m[i][j]} * v[j];
    r[i] = static_cast<int>(((s % long(p)) + p) % p);
  }
  return r;
}

using VecSet = std::set<std::vector<int>>;

inline VecSet kernel(const std::vector<std::vector<int>>& m, unsigned p) {
  VecSet out;
  for (auto& v : all_vectors(p, m[0].size())) {
    auto r = apply(m, v, p);
    if (std::all_of(r.begin(), r.end(), [](int x) { return x == 0; })) out.insert(v);
  }
  return out;
}

inline VecSet image(const std::vector<std::vector<int>>& m, unsigned p) {
  VecSet out;
  for (auto& v : all_vectors(p, m[0].size())) out.insert(apply(m, v, p));
  return out;
}

/// All linear combinations of the given vectors.
inline VecSet span(const std::vector<std::vector<int>>& vs, unsigned p, std::size_t n) {
  VecSet s{std::vector<int>(n, 0)};
  for (const auto& v : vs) {
    VecSet next;
    for (const auto& w : s)
      for (unsigned c = 0; c < p; ++c) {
        std::vector<int> u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = static_cast<int>((w[i] + c * v[i]) % p);
        next.insert(u);
      }
    s = std::move(next);
  }
  return s;
}

inline VecSet elements(const bracelab::FpSubspace& s) {
  VecSet out;
  for (const auto& v : s.elements()) out.insert(std::vector<int>(v.begin(), v.end()));
  return out;
}

inline std::vector<std::vector<int>> rows_of(const bracelab::FpMatrix& m) {
  std::vector<std::vector<int>> r(m.rows(), std::vector<int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  return r;
}

}  // namespace oracle
