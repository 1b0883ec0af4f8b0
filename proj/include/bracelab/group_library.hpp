#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "group.hpp"

namespace bracelab::groups {

inline GroupTable cyclic(std::size_t n) {
  return tabulate(n, [n](Elem a, Elem b) { return (a + b) % n; });
}

/// G x H with (g,h) stored at index g + |G| h.
inline GroupTable direct_product(const GroupTable& g, const GroupTable& h) {
  const std::size_t m = g.order();
  return tabulate(m * h.order(), [&](Elem x, Elem y) {
    return g.mul(x % m, y % m) + m * h.mul(x / m, y / m);
  });
}

/// <a, b | a^m = 1, b^n = a^s, b a b^-1 = a^r>, element a^i b^j at index
/// i + m j. Requires r^n = 1 and r s = s (mod m).
inline GroupTable metacyclic(std::size_t m, std::size_t n, std::size_t r, std::size_t s) {
  std::vector<std::size_t> rpow(n + 1, 1);
  for (std::size_t j = 1; j <= n; ++j) rpow[j] = rpow[j - 1] * r % m;
  if (rpow[n] != 1 % m || (r * s) % m != s % m)
    throw Error(ErrorKind::ConstructionInvalid, "inconsistent metacyclic parameters");
  return tabulate(m * n, [&](Elem x, Elem y) {
    const std::size_t i = x % m, j = x / m, k = y % m, l = y / m;
    std::size_t a = i + rpow[j] * k, b = j + l;
    if (b >= n) {
      a += s;
      b -= n;
    }
    return (a % m) + m * b;
  });
}

/// N x| K where k acts on N by the automorphism `action[k]` (a permutation
/// of N's elements; k -> action[k] must be a homomorphism). Element (x,k) at
/// index x + |N| k.
inline GroupTable semidirect(const GroupTable& n, const GroupTable& k, const std::vector<std::vector<Elem>>& action) {
  const std::size_t m = n.order();
  return tabulate(m * k.order(), [&](Elem x, Elem y) {
    const Elem k1 = x / m;
    return n.mul(x % m, action[k1][y % m]) + m * k.mul(k1, y / m);
  });
}

/// N x| C_k, the generator of C_k acting by `aut` (aut^k must be trivial).
inline GroupTable semidirect_cyclic(const GroupTable& n, const std::vector<Elem>& aut, std::size_t k) {
  std::vector<std::vector<Elem>> action{all_elements(n.order())};
  for (std::size_t j = 1; j < k; ++j) {
    std::vector<Elem> next(n.order());
    for (Elem x = 0; x < n.order(); ++x) next[x] = aut[action.back()[x]];
    action.push_back(std::move(next));
  }
  return semidirect(n, cyclic(k), action);
}

/// Closure of `gens` under `mul`, tabulated. Elements are numbered in sorted
/// order of T, so `identity` must be the smallest element. `elements_out`
/// receives the element list if given.
template <class T, class Mul>
GroupTable closure_table(const std::vector<T>& gens, const T& identity, Mul mul, std::vector<T>* elements_out = nullptr) {
  std::vector<T> elems{identity};
  std::map<T, Elem> seen{{identity, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const T& g : gens) {
      T y = mul(elems[i], g);
      if (!seen.count(y)) {
        seen.emplace(y, 0);
        elems.push_back(std::move(y));
      }
    }
  std::sort(elems.begin(), elems.end());
  if (!(elems.front() == identity))
    throw Error(ErrorKind::ConstructionInvalid, "identity must be the smallest element");
  for (Elem i = 0; i < elems.size(); ++i) seen[elems[i]] = i;
  auto t = tabulate(elems.size(), [&](Elem a, Elem b) { return seen.at(mul(elems[a], elems[b])); });
  if (elements_out) *elements_out = std::move(elems);
  return t;
}

using Perm = std::vector<Elem>;

/// Permutation group on {0..degree-1}; product is composition (p*q)(x) = p(q(x)).
inline GroupTable permutation_group(std::size_t degree, const std::vector<Perm>& gens, std::vector<Perm>* elements_out = nullptr) {
  return closure_table(gens, all_elements(degree), [](const Perm& p, const Perm& q) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
    return r;
  }, elements_out);
}

inline GroupTable symmetric(std::size_t n) {
  if (n <= 1) return GroupTable{};
  Perm cycle(n), swap = all_elements(n);
  for (Elem i = 0; i < n; ++i) cycle[i] = static_cast<Elem>((i + 1) % n);
  std::swap(swap[0], swap[1]);
  return permutation_group(n, {cycle, swap});
}

inline GroupTable alternating(std::size_t n) {
  if (n <= 2) return GroupTable{};
  std::vector<Perm> gens;
  for (Elem k = 2; k < n; ++k) {  // 3-cycles (0 1 k) generate A_n
    Perm p = all_elements(n);
    p[0] = 1;
    p[1] = k;
    p[k] = 0;
    gens.push_back(p);
  }
  return permutation_group(n, gens);
}

/// SL(2, p) for a prime p, generated by [[1,1],[0,1]] and [[0,-1],[1,0]].
inline GroupTable special_linear_2(unsigned p) {
  using M = std::array<unsigned, 4>;
  auto mul = [p](const M& x, const M& y) {
    return M{(x[0] * y[0] + x[1] * y[2]) % p, (x[0] * y[1] + x[1] * y[3]) % p,
             (x[2] * y[0] + x[3] * y[2]) % p, (x[2] * y[1] + x[3] * y[3]) % p};
  };
  // Sort order puts the identity first only after a relabelling; use a key
  // that maps the identity to all zeros.
  auto key = [p](const M& x) { return M{(x[0] + p - 1) % p, x[1], x[2], (x[3] + p - 1) % p}; };
  auto unkey = [p](const M& k) { return M{(k[0] + 1) % p, k[1], k[2], (k[3] + 1) % p}; };
  std::vector<M> gens{key(M{1, 1, 0, 1}), key(M{0, p - 1, 1, 0})};
  return closure_table(gens, M{0, 0, 0, 0}, [&](const M& a, const M& b) { return key(mul(unkey(a), unkey(b))); });
}

struct NamedGroup {
  std::string name;
  GroupTable table;
};

/// One representative of every isomorphism class of groups of order <= 16
/// (42 groups). Order-16 groups follow the usual SmallGroup numbering.
inline std::vector<NamedGroup> small_groups() {
  std::vector<NamedGroup> out;
  auto add = [&](std::string name, GroupTable t) { out.push_back({std::move(name), std::move(t)}); };
  const auto c2 = cyclic(2), c4 = cyclic(4);
  const auto c4xc2 = direct_product(c4, c2);
  for (std::size_t n = 1; n <= 16; ++n) {
    add("C" + std::to_string(n), cyclic(n));
    switch (n) {
      case 4: add("C2xC2", direct_product(c2, c2)); break;
      case 6: add("S3", metacyclic(3, 2, 2, 0)); break;
      case 8:
        add("C4xC2", c4xc2);
        add("C2^3", direct_product(direct_product(c2, c2), c2));
        add("D8", metacyclic(4, 2, 3, 0));
        add("Q8", metacyclic(4, 2, 3, 2));
        break;
      case 9: add("C3xC3", direct_product(cyclic(3), cyclic(3))); break;
      case 10: add("D10", metacyclic(5, 2, 4, 0)); break;
      case 12: {
        add("C6xC2", direct_product(cyclic(6), c2));
        add("D12", metacyclic(6, 2, 5, 0));
        add("Dic12", metacyclic(6, 2, 5, 3));
        const auto v4 = direct_product(c2, c2);
        add("A4", semidirect_cyclic(v4, {0, 2, 3, 1}, 3));
        break;
      }
      case 14: add("D14", metacyclic(7, 2, 6, 0)); break;
      case 16: {
        add("C4xC4", direct_product(c4, c4));
        // a^i b^j at i + 4j; automorphism a -> ab, b -> b.
        std::vector<Elem> a_to_ab(8), b_to_a2b(8);
        for (Elem i = 0; i < 4; ++i)
          for (Elem j = 0; j < 2; ++j) {
            a_to_ab[i + 4 * j] = i + 4 * ((j + i) % 2);
            b_to_a2b[i + 4 * j] = (i + 2 * j) % 4 + 4 * j;
          }
        add("(C4xC2):C2", semidirect_cyclic(c4xc2, a_to_ab, 2));
        add("C4:C4", metacyclic(4, 4, 3, 0));
        add("C8xC2", direct_product(cyclic(8), c2));
        add("M16", metacyclic(8, 2, 5, 0));
        add("D16", metacyclic(8, 2, 7, 0));
        add("SD16", metacyclic(8, 2, 3, 0));
        add("Q16", metacyclic(8, 2, 7, 4));
        add("C4xC2^2", direct_product(c4xc2, c2));
        add("C2xD8", direct_product(metacyclic(4, 2, 3, 0), c2));
        add("C2xQ8", direct_product(metacyclic(4, 2, 3, 2), c2));
        add("C4oD8", semidirect_cyclic(c4xc2, b_to_a2b, 2));
        add("C2^4", direct_product(direct_product(c2, c2), direct_product(c2, c2)));
        break;
      }
      default: break;
    }
  }
  return out;
}

/// Looks up a group by name: any name from small_groups(), or S<n>, A<n>,
/// SL25 / SL(2,5).
inline std::optional<GroupTable> by_name(const std::string& name) {
  if (name == "SL25" || name == "SL(2,5)") return special_linear_2(5);
  if (name.size() >= 2 && (name[0] == 'S' || name[0] == 'A') &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const auto n = std::stoul(name.substr(1));
    if (n <= 6) return name[0] == 'S' ? symmetric(n) : alternating(n);
  }
  for (auto& g : small_groups())
    if (g.name == name) return g.table;
  if (name.size() >= 2 && name[0] == 'C' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const auto n = std::stoul(name.substr(1));
    if (n >= 1 && n <= 2048) return cyclic(n);
  }
  return std::nullopt;
}

}  // namespace bracelab::groups
