#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "report.hpp"

namespace bracelab {

/// Row-major multiplication table as read from a file or built by hand.
using RawTable = std::vector<std::vector<Elem>>;

/// A finite group given by its multiplication table. The identity is always
/// element 0. Copies share the underlying (immutable) table.
class GroupTable {
 public:
  /// The trivial group.
  GroupTable() : GroupTable(1, std::vector<Elem>{0}) {}

  /// Builds a table known to be a group with identity 0 (e.g. a
  /// construction from validated parts). Only inverses are derived here; use
  /// validate_group_table for untrusted input.
  static GroupTable trusted(std::size_t n, std::vector<Elem> flat) { return GroupTable(n, std::move(flat)); }

  std::size_t order() const { return d_->n; }
  static constexpr Elem identity() { return 0; }

  Elem mul(Elem a, Elem b) const { return d_->mul[static_cast<std::size_t>(a) * d_->n + b]; }
  Elem inv(Elem a) const { return d_->inv[a]; }
  std::span<const Elem> row(Elem a) const { return {d_->mul.data() + static_cast<std::size_t>(a) * d_->n, d_->n}; }
  const std::vector<Elem>& flat() const { return d_->mul; }
  const std::vector<Elem>& inverses() const { return d_->inv; }

  /// a*b*a^-1*b^-1
  Elem commutator(Elem a, Elem b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
  Elem conjugate(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }

  RawTable raw() const {
    RawTable t(order());
    for (Elem a = 0; a < order(); ++a) t[a].assign(row(a).begin(), row(a).end());
    return t;
  }

  friend bool operator==(const GroupTable& x, const GroupTable& y) {
    return x.d_ == y.d_ || (x.d_->n == y.d_->n && x.d_->mul == y.d_->mul);
  }

 private:
  struct Data {
    std::size_t n;
    std::vector<Elem> mul;
    std::vector<Elem> inv;
  };

  GroupTable(std::size_t n, std::vector<Elem> flat) {
    auto d = std::make_shared<Data>();
    d->n = n;
    d->mul = std::move(flat);
    d->inv.assign(n, 0);
    for (Elem a = 0; a < n; ++a) {
      const Elem* r = d->mul.data() + static_cast<std::size_t>(a) * n;
      auto it = std::find(r, r + n, Elem{0});
      if (it == r + n) throw Error(ErrorKind::NotAGroup, "element " + std::to_string(a) + " has no inverse", {{a}});
      d->inv[a] = static_cast<Elem>(it - r);
    }
    d_ = std::move(d);
  }

  std::shared_ptr<const Data> d_;
};

/// Builds a group table from a binary operation on 0..n-1 with identity 0.
template <class Op>
GroupTable tabulate(std::size_t n, Op&& op) {
  std::vector<Elem> flat(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) flat[static_cast<std::size_t>(a) * n + b] = static_cast<Elem>(op(a, b));
  return GroupTable::trusted(n, std::move(flat));
}

/// The opposite group: a .op b = b a.
inline GroupTable opposite(const GroupTable& g) {
  return tabulate(g.order(), [&](Elem a, Elem b) { return g.mul(b, a); });
}

namespace detail {

/// Checks the group axioms on a raw table without relabelling. On success the
/// report passes and the identity's original index is returned.
inline std::optional<Elem> check_group_axioms(const RawTable& t, const CheckPolicy& policy,
                                              VerificationReport& rep) {
  rep.check = "group-axioms";
  const std::size_t n = t.size();
  if (n == 0) {
    rep.fail({}, "empty table");
    return std::nullopt;
  }
  for (Elem r = 0; r < n; ++r) {
    if (t[r].size() != n) {
      rep.fail({r}, "row " + std::to_string(r) + " has " + std::to_string(t[r].size()) + " entries, expected " +
                        std::to_string(n));
      return std::nullopt;
    }
    for (Elem x : t[r])
      if (x >= n) {
        rep.fail({r}, "row " + std::to_string(r) + " has out-of-range entry " + std::to_string(x));
        return std::nullopt;
      }
  }
  std::vector<char> seen(n);
  for (Elem r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Elem x : t[r]) {
      if (seen[x]) {
        rep.fail({r}, "row " + std::to_string(r) + " is not a permutation");
        return std::nullopt;
      }
      seen[x] = 1;
    }
  }
  for (Elem c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Elem r = 0; r < n; ++r) {
      if (seen[t[r][c]]) {
        rep.fail({c}, "column " + std::to_string(c) + " is not a permutation");
        return std::nullopt;
      }
      seen[t[r][c]] = 1;
    }
  }
  std::optional<Elem> identity;
  for (Elem e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x) ok = t[e][x] == x && t[x][e] == x;
    if (ok) identity = e;
  }
  if (!identity) {
    rep.fail({}, "no two-sided identity element");
    return std::nullopt;
  }
  scan_triples(n, policy, rep, [&](Elem a, Elem b, Elem c) { return t[t[a][b]][c] == t[a][t[b][c]]; });
  if (!rep.passed()) {
    rep.detail = "associativity fails";
    return std::nullopt;
  }
  return identity;
}

/// Relabels elements so that `e` becomes 0 (swapping e and 0).
inline RawTable swap_labels(const RawTable& t, Elem e) {
  if (e == 0) return t;
  const std::size_t n = t.size();
  auto s = [e](Elem x) -> Elem { return x == e ? 0 : (x == 0 ? e : x); };
  RawTable out(n, std::vector<Elem>(n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) out[s(a)][s(b)] = s(t[a][b]);
  return out;
}

inline GroupTable from_raw(const RawTable& t) {
  const std::size_t n = t.size();
  std::vector<Elem> flat;
  flat.reserve(n * n);
  for (const auto& r : t) flat.insert(flat.end(), r.begin(), r.end());
  return GroupTable::trusted(n, std::move(flat));
}

}  // namespace detail

/// Validates a raw table and returns it normalized so the identity is index 0
/// (by swapping the identity's label with 0). On failure the report names the
/// offending row/column or the first associativity triples.
inline Checked<GroupTable> validate_group_table(const RawTable& t, const CheckPolicy& policy = {}) {
  VerificationReport rep;
  auto e = detail::check_group_axioms(t, policy, rep);
  if (!e) return Checked<GroupTable>::failed(std::move(rep));
  if (*e != 0) rep.detail = "identity relabelled from " + std::to_string(*e) + " to 0";
  return Checked<GroupTable>::ok(detail::from_raw(detail::swap_labels(t, *e)), std::move(rep));
}

/// Sorted set of elements forming a subgroup of `parent`.
class Subgroup {
 public:
  Subgroup(GroupTable parent, std::vector<Elem> sorted_members)
      : parent_(std::move(parent)), members_(std::move(sorted_members)) {}

  const GroupTable& parent() const { return parent_; }
  const std::vector<Elem>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(Elem x) const { return std::binary_search(members_.begin(), members_.end(), x); }
  bool is_trivial() const { return members_.size() == 1; }
  bool is_whole() const { return members_.size() == parent_.order(); }
  std::size_t index() const { return parent_.order() / members_.size(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_.order() == b.parent_.order() && a.members_ == b.members_;
  }

 private:
  GroupTable parent_;
  std::vector<Elem> members_;
};

inline std::vector<Elem> all_elements(std::size_t n) {
  std::vector<Elem> v(n);
  std::iota(v.begin(), v.end(), Elem{0});
  return v;
}

inline Subgroup whole_group(const GroupTable& g) { return Subgroup(g, all_elements(g.order())); }
inline Subgroup trivial_subgroup(const GroupTable& g) { return Subgroup(g, {0}); }

/// Smallest subgroup containing `gens`.
inline Subgroup subgroup_closure(const GroupTable& g, std::span<const Elem> gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<Elem> uniq;
  for (Elem x : gens)
    if (x != 0 && !in[x]) {
      in[x] = 1;
      uniq.push_back(x);
    }
  std::fill(in.begin(), in.end(), 0);
  std::vector<Elem> elems{0};
  in[0] = 1;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const Elem x = elems[i];
    for (Elem s : uniq) {
      const Elem y = g.mul(x, s);
      if (!in[y]) {
        in[y] = 1;
        elems.push_back(y);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return Subgroup(g, std::move(elems));
}

inline Subgroup subgroup_closure(const GroupTable& g, std::initializer_list<Elem> gens) {
  return subgroup_closure(g, std::span<const Elem>(gens.begin(), gens.size()));
}

/// True iff `members` (any element list) is closed under the product and
/// contains the identity, i.e. is a subgroup of a finite group.
inline bool is_subgroup(const GroupTable& g, std::span<const Elem> members) {
  std::vector<char> in(g.order(), 0);
  for (Elem x : members) in[x] = 1;
  if (!in[0]) return false;
  for (Elem a : members)
    for (Elem b : members)
      if (!in[g.mul(a, b)]) return false;
  return true;
}

struct NormalityCheck {
  bool normal = true;
  /// (g, s) with g s g^-1 outside the subgroup, lexicographically smallest.
  std::optional<std::pair<Elem, Elem>> witness;
  explicit operator bool() const { return normal; }
};

inline NormalityCheck is_normal_subgroup(const GroupTable& g, const Subgroup& s) {
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem m : s.members())
      if (!s.contains(g.conjugate(x, m))) return {false, std::pair{x, m}};
  return {};
}

inline Subgroup center(const GroupTable& g) {
  std::vector<Elem> z;
  for (Elem a = 0; a < g.order(); ++a) {
    bool central = true;
    for (Elem b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return Subgroup(g, std::move(z));
}

inline bool is_abelian(const GroupTable& g) { return center(g).is_whole(); }

/// Subgroup generated by all commutators [x,y] = x y x^-1 y^-1, x in X, y in Y.
inline Subgroup commutator_subgroup(const GroupTable& g, std::span<const Elem> xs, std::span<const Elem> ys) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Elem> gens;
  for (Elem x : xs)
    for (Elem y : ys) {
      const Elem c = g.commutator(x, y);
      if (!seen[c]) {
        seen[c] = 1;
        gens.push_back(c);
      }
    }
  return subgroup_closure(g, gens);
}

inline Subgroup derived_subgroup(const GroupTable& g) {
  const auto all = all_elements(g.order());
  return commutator_subgroup(g, all, all);
}

inline std::size_t element_order(const GroupTable& g, Elem x) {
  std::size_t k = 1;
  for (Elem y = x; y != 0; y = g.mul(y, x)) ++k;
  return k;
}

/// Map element order -> number of elements of that order.
using OrderProfile = std::map<std::size_t, std::size_t>;

inline OrderProfile order_profile(const GroupTable& g) {
  OrderProfile p;
  for (Elem x = 0; x < g.order(); ++x) ++p[element_order(g, x)];
  return p;
}

inline std::size_t exponent(const GroupTable& g) {
  std::size_t e = 1;
  for (Elem x = 0; x < g.order(); ++x) e = std::lcm(e, element_order(g, x));
  return e;
}

/// A map between group tables. `image_of[x]` is the image of element x.
struct GroupHom {
  GroupTable source;
  GroupTable target;
  std::vector<Elem> image_of;

  Elem operator()(Elem x) const { return image_of[x]; }
};

inline VerificationReport check_homomorphism(const GroupHom& f, const CheckPolicy& policy = {}) {
  VerificationReport rep;
  rep.check = "homomorphism";
  if (f.image_of.size() != f.source.order()) {
    rep.fail({}, "map has wrong length");
    return rep;
  }
  if (f.image_of[0] != 0) {
    rep.fail({0}, "identity not mapped to identity");
    return rep;
  }
  scan_pairs(f.source.order(), policy, rep, [&](Elem a, Elem b) {
    return f.image_of[f.source.mul(a, b)] == f.target.mul(f.image_of[a], f.image_of[b]);
  });
  return rep;
}

inline bool is_injective(const GroupHom& f) {
  std::vector<char> hit(f.target.order(), 0);
  for (Elem y : f.image_of) {
    if (hit[y]) return false;
    hit[y] = 1;
  }
  return true;
}

inline bool is_surjective(const GroupHom& f) {
  std::vector<char> hit(f.target.order(), 0);
  for (Elem y : f.image_of) hit[y] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

/// g after f.
inline GroupHom compose(const GroupHom& g, const GroupHom& f) {
  GroupHom h{f.source, g.target, std::vector<Elem>(f.image_of.size())};
  for (std::size_t i = 0; i < f.image_of.size(); ++i) h.image_of[i] = g.image_of[f.image_of[i]];
  return h;
}

inline GroupHom identity_hom(const GroupTable& g) { return {g, g, all_elements(g.order())}; }

struct QuotientGroup {
  GroupTable group;
  GroupHom projection;
  /// Minimal element of each coset, indexed by coset.
  std::vector<Elem> representatives;
};

/// Coset table G/N. Cosets are numbered in increasing order of their minimal
/// element, so the coset of the identity is 0.
inline QuotientGroup quotient_group(const GroupTable& g, const Subgroup& n) {
  if (auto chk = is_normal_subgroup(g, n); !chk)
    throw Error(ErrorKind::NotNormal, "subgroup is not normal",
                {{chk.witness->first, chk.witness->second}});
  const std::size_t order = g.order();
  constexpr Elem unset = ~Elem{0};
  std::vector<Elem> coset_of(order, unset);
  std::vector<Elem> reps;
  for (Elem x = 0; x < order; ++x) {
    if (coset_of[x] != unset) continue;
    const Elem c = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem m : n.members()) coset_of[g.mul(x, m)] = c;
  }
  const std::size_t q = reps.size();
  GroupTable qt = tabulate(q, [&](Elem i, Elem j) { return coset_of[g.mul(reps[i], reps[j])]; });
  return {qt, GroupHom{g, qt, std::move(coset_of)}, std::move(reps)};
}

/// Conjugacy classes, each sorted, ordered by minimal element.
inline std::vector<std::vector<Elem>> conjugacy_classes(const GroupTable& g) {
  std::vector<char> done(g.order(), 0);
  std::vector<std::vector<Elem>> classes;
  for (Elem x = 0; x < g.order(); ++x) {
    if (done[x]) continue;
    std::vector<Elem> cls;
    for (Elem h = 0; h < g.order(); ++h) {
      const Elem y = g.conjugate(h, x);
      if (!done[y]) {
        done[y] = 1;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

/// Every normal subgroup, sorted by order and then lexicographically. Each
/// normal subgroup is a join of normal closures of conjugacy classes, so the
/// join-closure starting from {1} reaches all of them.
inline std::vector<Subgroup> normal_subgroups(const GroupTable& g) {
  const auto classes = conjugacy_classes(g);
  std::vector<std::vector<Elem>> found{{0}};
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const auto& cls : classes) {
      if (std::binary_search(found[i].begin(), found[i].end(), cls.front())) continue;
      std::vector<Elem> gens = found[i];
      gens.insert(gens.end(), cls.begin(), cls.end());
      auto s = subgroup_closure(g, gens).members();
      if (std::find(found.begin(), found.end(), s) == found.end()) found.push_back(std::move(s));
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto& m : found) out.emplace_back(g, std::move(m));
  return out;
}

/// Greedy small generating set: repeatedly add an element of largest order
/// outside the current subgroup (lowest index on ties).
inline std::vector<Elem> generating_set(const GroupTable& g) {
  std::vector<std::size_t> ord(g.order());
  for (Elem x = 0; x < g.order(); ++x) ord[x] = element_order(g, x);
  std::vector<Elem> gens;
  Subgroup cur = trivial_subgroup(g);
  while (!cur.is_whole()) {
    Elem best = 0;
    std::size_t best_ord = 0;
    for (Elem x = 0; x < g.order(); ++x)
      if (!cur.contains(x) && ord[x] > best_ord) {
        best = x;
        best_ord = ord[x];
      }
    gens.push_back(best);
    cur = subgroup_closure(g, gens);
  }
  return gens;
}

}  // namespace bracelab
