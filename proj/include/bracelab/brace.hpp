#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "group.hpp"

namespace bracelab {

/// A finite skew brace (A, ., o): two group structures on 0..n-1 sharing the
/// identity 0 and satisfying a o (b . c) = (a o b) . a^-1 . (a o c).
class SkewBrace {
 public:
  /// The brace of order 1.
  SkewBrace() = default;

  /// Wraps tables already known to form a skew brace (constructions from
  /// validated parts). Use validate_skew_brace for anything else.
  static SkewBrace trusted(GroupTable dot, GroupTable circ) {
    if (dot.order() != circ.order()) throw Error(ErrorKind::InternalInconsistency, "table orders differ");
    SkewBrace b;
    b.dot_ = std::move(dot);
    b.circ_ = std::move(circ);
    return b;
  }

  std::size_t order() const { return dot_.order(); }
  const GroupTable& dot_group() const { return dot_; }
  const GroupTable& circ_group() const { return circ_; }

  Elem dot(Elem a, Elem b) const { return dot_.mul(a, b); }
  Elem circ(Elem a, Elem b) const { return circ_.mul(a, b); }
  /// Inverse in (A, .).
  Elem dot_inv(Elem a) const { return dot_.inv(a); }
  /// Inverse in (A, o), written a-bar.
  Elem circ_inv(Elem a) const { return circ_.inv(a); }

  /// lambda_a(x) = a^-1 . (a o x)
  Elem lambda(Elem a, Elem x) const { return dot(dot_inv(a), circ(a, x)); }
  /// a * b = a^-1 . (a o b) . b^-1
  Elem star(Elem a, Elem b) const { return dot(lambda(a, b), dot_inv(b)); }

  friend bool operator==(const SkewBrace& x, const SkewBrace& y) {
    return x.dot_ == y.dot_ && x.circ_ == y.circ_;
  }

 private:
  GroupTable dot_;
  GroupTable circ_;
};

inline VerificationReport check_left_brace_relation(const GroupTable& dot, const GroupTable& circ,
                                                    const CheckPolicy& policy = {}) {
  VerificationReport rep;
  rep.check = "left-brace-relation";
  scan_triples(dot.order(), policy, rep, [&](Elem a, Elem b, Elem c) {
    return circ.mul(a, dot.mul(b, c)) == dot.mul(dot.mul(circ.mul(a, b), dot.inv(a)), circ.mul(a, c));
  });
  if (!rep.passed()) rep.detail = "a o (b . c) != (a o b) . a^-1 . (a o c)";
  return rep;
}

/// Validates two group tables on the same index set (both with identity 0).
inline Checked<SkewBrace> validate_skew_brace(const GroupTable& dot, const GroupTable& circ,
                                              const CheckPolicy& policy = {}) {
  if (dot.order() != circ.order()) {
    VerificationReport rep;
    rep.check = "skew-brace";
    rep.fail({}, "orders differ");
    return Checked<SkewBrace>::failed(std::move(rep));
  }
  auto rep = check_left_brace_relation(dot, circ, policy);
  rep.check = "skew-brace";
  if (!rep.passed()) return Checked<SkewBrace>::failed(std::move(rep));
  return Checked<SkewBrace>::ok(SkewBrace::trusted(dot, circ), std::move(rep));
}

struct RawBraceValidation {
  Checked<SkewBrace> brace;
  /// Which of the two tables failed the group axioms, if any.
  std::optional<std::string> failing_table;
  /// Original label of the shared identity (relabelled to 0 when nonzero).
  Elem original_identity = 0;
  bool identity_mismatch = false;
};

/// Validates raw tables: both must be groups with the same identity element,
/// which is then relabelled to 0 in both tables consistently.
inline RawBraceValidation validate_skew_brace(const RawTable& dot, const RawTable& circ,
                                              const CheckPolicy& policy = {}) {
  RawBraceValidation out{Checked<SkewBrace>::failed({}), std::nullopt, 0, false};
  if (dot.size() != circ.size()) {
    VerificationReport rep;
    rep.check = "skew-brace";
    rep.fail({}, "orders differ");
    out.brace = Checked<SkewBrace>::failed(std::move(rep));
    return out;
  }
  VerificationReport dot_rep, circ_rep;
  auto e_dot = detail::check_group_axioms(dot, policy, dot_rep);
  if (!e_dot) {
    dot_rep.check = "dot-group";
    out.failing_table = "dot";
    out.brace = Checked<SkewBrace>::failed(std::move(dot_rep));
    return out;
  }
  auto e_circ = detail::check_group_axioms(circ, policy, circ_rep);
  if (!e_circ) {
    circ_rep.check = "circ-group";
    out.failing_table = "circ";
    out.brace = Checked<SkewBrace>::failed(std::move(circ_rep));
    return out;
  }
  if (*e_dot != *e_circ) {
    VerificationReport rep;
    rep.check = "skew-brace";
    rep.fail({*e_dot, *e_circ}, "IdentityMismatch: identities of the two tables differ");
    out.identity_mismatch = true;
    out.brace = Checked<SkewBrace>::failed(std::move(rep));
    return out;
  }
  out.original_identity = *e_dot;
  auto d = detail::from_raw(detail::swap_labels(dot, *e_dot));
  auto c = detail::from_raw(detail::swap_labels(circ, *e_dot));
  out.brace = validate_skew_brace(d, c, policy);
  return out;
}

/// Sorted element set that is an ideal of its brace.
class BraceIdeal {
 public:
  BraceIdeal(SkewBrace brace, std::vector<Elem> sorted_members)
      : brace_(std::move(brace)), members_(std::move(sorted_members)) {}

  const SkewBrace& brace() const { return brace_; }
  const std::vector<Elem>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(Elem x) const { return std::binary_search(members_.begin(), members_.end(), x); }
  bool is_trivial() const { return members_.size() == 1; }
  bool is_whole() const { return members_.size() == brace_.order(); }
  Subgroup as_dot_subgroup() const { return Subgroup(brace_.dot_group(), members_); }

  friend bool operator==(const BraceIdeal& a, const BraceIdeal& b) { return a.members_ == b.members_; }

 private:
  SkewBrace brace_;
  std::vector<Elem> members_;
};

/// lambda_a as a permutation of 0..n-1.
inline std::vector<Elem> lambda_perm(const SkewBrace& a, Elem x) {
  std::vector<Elem> p(a.order());
  for (Elem y = 0; y < a.order(); ++y) p[y] = a.lambda(x, y);
  return p;
}

inline Elem star(const SkewBrace& a, Elem x, Elem y) { return a.star(x, y); }

/// X * Y: the subgroup of (A, .) generated by all x * y.
inline Subgroup star_subgroup(const SkewBrace& a, std::span<const Elem> xs, std::span<const Elem> ys) {
  std::vector<char> seen(a.order(), 0);
  std::vector<Elem> gens;
  for (Elem x : xs)
    for (Elem y : ys) {
      const Elem s = a.star(x, y);
      if (!seen[s]) {
        seen[s] = 1;
        gens.push_back(s);
      }
    }
  return subgroup_closure(a.dot_group(), gens);
}

/// Checks the ideal conditions on an arbitrary element set: subgroup and
/// normal in (A, .), subgroup and normal in (A, o), and a . I = a o I.
inline VerificationReport is_ideal(const SkewBrace& a, std::span<const Elem> set) {
  VerificationReport rep;
  rep.check = "ideal";
  const std::size_t n = a.order();
  std::vector<char> in(n, 0);
  for (Elem x : set) {
    if (x >= n) {
      rep.fail({x}, "element out of range");
      return rep;
    }
    in[x] = 1;
  }
  std::vector<Elem> s;
  for (Elem x = 0; x < n; ++x)
    if (in[x]) s.push_back(x);
  if (!in[0]) {
    rep.fail({0}, "does not contain the identity");
    return rep;
  }
  for (Elem x : s)
    for (Elem y : s) {
      ++rep.checked;
      if (!in[a.dot(x, y)]) {
        rep.fail({x, y}, "not closed under .");
        return rep;
      }
    }
  for (Elem g = 0; g < n; ++g)
    for (Elem x : s) {
      ++rep.checked;
      if (!in[a.dot_group().conjugate(g, x)]) {
        rep.fail({g, x}, "not normal in (A, .)");
        return rep;
      }
    }
  for (Elem x : s)
    for (Elem y : s) {
      ++rep.checked;
      if (!in[a.circ(x, y)]) {
        rep.fail({x, y}, "not closed under o");
        return rep;
      }
    }
  for (Elem g = 0; g < n; ++g)
    for (Elem x : s) {
      ++rep.checked;
      if (!in[a.circ_group().conjugate(g, x)]) {
        rep.fail({g, x}, "not normal in (A, o)");
        return rep;
      }
    }
  // a . I = a o I  <=>  a o x lies in a . I for every x in I (equal sizes).
  for (Elem g = 0; g < n; ++g)
    for (Elem x : s) {
      ++rep.checked;
      if (!in[a.dot(a.dot_inv(g), a.circ(g, x))]) {
        rep.fail({g, x}, "a . I != a o I");
        return rep;
      }
    }
  return rep;
}

/// Smallest ideal containing `gens`: closes under ., conjugation in both
/// groups and every lambda_a until stable.
inline BraceIdeal ideal_closure(const SkewBrace& a, std::span<const Elem> gens) {
  std::vector<Elem> cur(gens.begin(), gens.end());
  cur.push_back(0);
  for (;;) {
    auto s = subgroup_closure(a.dot_group(), cur).members();
    std::vector<char> in(a.order(), 0);
    for (Elem x : s) in[x] = 1;
    std::vector<Elem> next = s;
    for (Elem g = 0; g < a.order(); ++g)
      for (Elem x : s) {
        for (Elem y : {a.dot_group().conjugate(g, x), a.circ_group().conjugate(g, x), a.lambda(g, x)})
          if (!in[y]) {
            in[y] = 1;
            next.push_back(y);
          }
      }
    if (next.size() == s.size()) return BraceIdeal(a, std::move(s));
    cur = std::move(next);
  }
}

/// Every ideal of the brace, ordered by size then lexicographically. Each
/// ideal is a join of principal ideals, so closing joins from {1} reaches
/// all of them. Intended for small braces.
inline std::vector<BraceIdeal> all_ideals(const SkewBrace& a) {
  std::vector<std::vector<Elem>> found{{0}};
  for (std::size_t i = 0; i < found.size(); ++i)
    for (Elem x = 0; x < a.order(); ++x) {
      if (std::binary_search(found[i].begin(), found[i].end(), x)) continue;
      std::vector<Elem> gens = found[i];
      gens.push_back(x);
      auto m = ideal_closure(a, gens).members();
      if (std::find(found.begin(), found.end(), m) == found.end()) found.push_back(std::move(m));
    }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  std::vector<BraceIdeal> out;
  for (auto& m : found) out.emplace_back(a, std::move(m));
  return out;
}

/// A*A, verified to be an ideal.
inline BraceIdeal derived_ideal(const SkewBrace& a) {
  const auto all = all_elements(a.order());
  auto s = star_subgroup(a, all, all);
  auto rep = is_ideal(a, s.members());
  if (!rep.passed())
    throw Error(ErrorKind::InternalInconsistency, "A*A failed the ideal check: " + rep.detail, rep.witnesses);
  return BraceIdeal(a, s.members());
}

inline bool is_perfect(const SkewBrace& a) { return derived_ideal(a).is_whole(); }

struct BraceQuotient {
  SkewBrace brace;
  /// Coset index of each element of A.
  std::vector<Elem> projection;
  /// Minimal element of each coset.
  std::vector<Elem> representatives;
};

/// A/I on cosets numbered by increasing minimal element.
inline BraceQuotient quotient_brace(const SkewBrace& a, std::span<const Elem> ideal) {
  auto rep = is_ideal(a, ideal);
  if (!rep.passed()) throw Error(ErrorKind::NotAnIdeal, rep.detail, rep.witnesses);
  std::vector<Elem> members(ideal.begin(), ideal.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto q = quotient_group(a.dot_group(), Subgroup(a.dot_group(), members));
  const auto& proj = q.projection.image_of;
  const auto& reps = q.representatives;
  auto circ = tabulate(reps.size(), [&](Elem i, Elem j) { return proj[a.circ(reps[i], reps[j])]; });
  return {SkewBrace::trusted(q.group, circ), proj, reps};
}

inline BraceQuotient quotient_brace(const SkewBrace& a, const BraceIdeal& i) { return quotient_brace(a, i.members()); }

/// Soc(A) = {a : a*x = 1 for all x} intersected with Z(A, .).
inline BraceIdeal socle(const SkewBrace& a) {
  std::vector<Elem> s;
  for (Elem x = 0; x < a.order(); ++x) {
    bool ok = true;
    for (Elem y = 0; y < a.order() && ok; ++y)
      ok = a.star(x, y) == 0 && a.dot(x, y) == a.dot(y, x);
    if (ok) s.push_back(x);
  }
  return BraceIdeal(a, std::move(s));
}

/// {a : a*x = 1 = x*a for all x} intersected with Z(A, .).
inline std::vector<Elem> annihilator_by_star(const SkewBrace& a) {
  std::vector<Elem> s;
  for (Elem x = 0; x < a.order(); ++x) {
    bool ok = true;
    for (Elem y = 0; y < a.order() && ok; ++y)
      ok = a.star(x, y) == 0 && a.star(y, x) == 0 && a.dot(x, y) == a.dot(y, x);
    if (ok) s.push_back(x);
  }
  return s;
}

/// Soc(A) intersected with Z(A, o).
inline std::vector<Elem> annihilator_by_socle(const SkewBrace& a) {
  std::vector<Elem> s;
  const auto soc = socle(a);
  for (Elem x : soc.members()) {
    bool central = true;
    for (Elem y = 0; y < a.order() && central; ++y) central = a.circ(x, y) == a.circ(y, x);
    if (central) s.push_back(x);
  }
  return s;
}

/// Ann(A); both characterizations are computed and must agree.
inline BraceIdeal annihilator(const SkewBrace& a) {
  auto s = annihilator_by_star(a);
  if (s != annihilator_by_socle(a))
    throw Error(ErrorKind::InternalInconsistency, "the two characterizations of Ann(A) disagree");
  return BraceIdeal(a, std::move(s));
}

/// Ann_2(A): preimage of Ann(A/Ann(A)) under the projection.
inline BraceIdeal second_annihilator(const SkewBrace& a, const BraceIdeal& ann) {
  auto q = quotient_brace(a, ann);
  auto qann = annihilator(q.brace);
  std::vector<Elem> s;
  for (Elem x = 0; x < a.order(); ++x)
    if (qann.contains(q.projection[x])) s.push_back(x);
  return BraceIdeal(a, std::move(s));
}

inline BraceIdeal second_annihilator(const SkewBrace& a) { return second_annihilator(a, annihilator(a)); }

/// Direct elementwise test of x in Ann_2(A): x*y, y*x and [x,y] all lie in
/// Ann(A) for every y.
inline bool in_second_annihilator_direct(const SkewBrace& a, const BraceIdeal& ann, Elem x) {
  for (Elem y = 0; y < a.order(); ++y)
    if (!ann.contains(a.star(x, y)) || !ann.contains(a.star(y, x)) ||
        !ann.contains(a.dot_group().commutator(x, y)))
      return false;
  return true;
}

/// Right brace relation (b . c) o a = (b o a) . a^-1 . (c o a), reported with
/// witness triple (a, b, c).
inline VerificationReport is_two_sided(const SkewBrace& a, const CheckPolicy& policy = {}) {
  VerificationReport rep;
  rep.check = "two-sided";
  scan_triples(a.order(), policy, rep, [&](Elem x, Elem b, Elem c) {
    return a.circ(a.dot(b, c), x) == a.dot(a.dot(a.circ(b, x), a.dot_inv(x)), a.circ(c, x));
  });
  if (!rep.passed()) rep.detail = "(b . c) o a != (b o a) . a^-1 . (c o a)";
  return rep;
}

/// True when o coincides with . (every a*b is trivial).
inline bool is_trivial_brace(const SkewBrace& a) { return a.dot_group() == a.circ_group(); }

enum class LiftMode { Trivial, AlmostTrivial };

/// (G, ., .) or (G, ., .^op).
inline SkewBrace lift_group_to_brace(const GroupTable& g, LiftMode mode) {
  return SkewBrace::trusted(g, mode == LiftMode::Trivial ? g : opposite(g));
}

}  // namespace bracelab
