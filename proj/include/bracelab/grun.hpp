#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "brace.hpp"

namespace bracelab {

/// Invariants shared by the analyses below, computed once per brace.
struct BraceInvariants {
  BraceIdeal derived;
  BraceIdeal socle;
  BraceIdeal ann;
  BraceIdeal ann2;
};

inline BraceInvariants compute_invariants(const SkewBrace& a) {
  auto ann = annihilator(a);
  auto ann2 = second_annihilator(a, ann);
  return {derived_ideal(a), socle(a), std::move(ann), std::move(ann2)};
}

enum class ScanMode { Exhaustive, Sampled };

struct IdentitySuiteReport {
  std::vector<VerificationReport> identities;
  VerificationReport overall;

  bool passed() const { return overall.passed(); }
};

/// Checks the lambda-map identities, iden1-iden3 and the commutator expansion
/// over all (or sampled) pairs and triples. A valid brace has no violations.
inline IdentitySuiteReport identity_suite(const SkewBrace& A, ScanMode mode = ScanMode::Exhaustive,
                                          CheckPolicy policy = {}) {
  if (mode == ScanMode::Sampled) policy.force_sampling = true;
  const std::size_t n = A.order();
  const auto& D = A.dot_group();
  IdentitySuiteReport out;
  out.overall.check = "identity-suite";

  auto run_pairs = [&](std::string name, auto pred) {
    VerificationReport r;
    r.check = std::move(name);
    scan_pairs(n, policy, r, pred);
    out.identities.push_back(std::move(r));
  };
  auto run_triples = [&](std::string name, auto pred) {
    VerificationReport r;
    r.check = std::move(name);
    scan_triples(n, policy, r, pred);
    out.identities.push_back(std::move(r));
  };

  run_pairs("circ-via-lambda", [&](Elem a, Elem b) { return A.circ(a, b) == A.dot(a, A.lambda(a, b)); });
  run_pairs("dot-via-lambda",
            [&](Elem a, Elem b) { return A.dot(a, b) == A.circ(a, A.lambda(A.circ_inv(a), b)); });
  {
    VerificationReport r;
    r.check = "circ-inverse-via-lambda";
    for (Elem a = 0; a < n; ++a) {
      ++r.checked;
      if (A.circ_inv(a) != A.lambda(A.circ_inv(a), A.dot_inv(a))) r.fail({a});
    }
    out.identities.push_back(std::move(r));
  }
  run_pairs("star-via-lambda", [&](Elem a, Elem b) { return A.star(a, b) == A.dot(A.lambda(a, b), A.dot_inv(b)); });
  run_triples("lambda-automorphism", [&](Elem a, Elem x, Elem y) {
    return A.lambda(a, A.dot(x, y)) == A.dot(A.lambda(a, x), A.lambda(a, y));
  });
  run_triples("lambda-homomorphism", [&](Elem a, Elem b, Elem x) {
    return A.lambda(A.circ(a, b), x) == A.lambda(a, A.lambda(b, x));
  });
  // a*(x.y) = (a*x) . x . (a*y) . x^-1
  run_triples("iden1", [&](Elem a, Elem x, Elem y) {
    return A.star(a, A.dot(x, y)) == A.dot(A.dot(A.star(a, x), x), A.dot(A.star(a, y), A.dot_inv(x)));
  });
  // (x o y)*a = (x*(y*a)) . (y*a) . (x*a)
  run_triples("iden2", [&](Elem x, Elem y, Elem a) {
    const Elem ya = A.star(y, a);
    return A.star(A.circ(x, y), a) == A.dot(A.dot(A.star(x, ya), ya), A.star(x, a));
  });
  // lambda_a(x*y) = (a o x o a-bar) * lambda_a(y)
  run_triples("iden3", [&](Elem a, Elem x, Elem y) {
    const Elem conj = A.circ(A.circ(a, x), A.circ_inv(a));
    return A.lambda(a, A.star(x, y)) == A.star(conj, A.lambda(a, y));
  });
  // [a, x.y] = [a,x] . x . [a,y] . x^-1
  run_triples("commutator-expansion", [&](Elem a, Elem x, Elem y) {
    return D.commutator(a, D.mul(x, y)) ==
           D.mul(D.mul(D.commutator(a, x), x), D.mul(D.commutator(a, y), D.inv(x)));
  });

  for (const auto& r : out.identities) out.overall.absorb(r);
  return out;
}

/// Homomorphism flags of the maps attached to a fixed element a:
/// phi_a(x) = a*x, pi_a(x) = [a,x], psi_a(x) = x*a, iota_a(x) = a o x o a-bar.
struct MapAnalysis {
  Elem element = 0;
  bool phi_dot_hom = false;
  bool pi_dot_hom = false;
  bool psi_circ_hom = false;
  bool psi_dot_hom = false;
  bool iota_dot_aut = false;
  /// iota_a(x) = a lambda_a(x) a^-1 . psi_{a-bar}(x) for all x; evaluated
  /// only when a lies in Ann_2(A).
  std::optional<bool> char2_relation_holds;
  bool sampled = false;
};

inline Elem iota(const SkewBrace& A, Elem a, Elem x) { return A.circ(A.circ(a, x), A.circ_inv(a)); }

inline MapAnalysis map_analysis(const SkewBrace& A, Elem a, const BraceIdeal& ann2, const CheckPolicy& policy = {}) {
  const auto& D = A.dot_group();
  CheckPolicy p = policy;
  p.max_witnesses = 1;
  MapAnalysis m;
  m.element = a;
  auto holds = [&](auto pred) {
    VerificationReport r;
    scan_pairs(A.order(), p, r, pred);
    m.sampled = m.sampled || r.sampled();
    return r.passed();
  };
  m.phi_dot_hom = holds([&](Elem x, Elem y) { return A.star(a, A.dot(x, y)) == A.dot(A.star(a, x), A.star(a, y)); });
  m.pi_dot_hom = holds([&](Elem x, Elem y) { return D.commutator(a, A.dot(x, y)) == A.dot(D.commutator(a, x), D.commutator(a, y)); });
  m.psi_circ_hom = holds([&](Elem x, Elem y) { return A.star(A.circ(x, y), a) == A.dot(A.star(x, a), A.star(y, a)); });
  m.psi_dot_hom = holds([&](Elem x, Elem y) { return A.star(A.dot(x, y), a) == A.dot(A.star(x, a), A.star(y, a)); });
  m.iota_dot_aut = holds([&](Elem x, Elem y) { return iota(A, a, A.dot(x, y)) == A.dot(iota(A, a, x), iota(A, a, y)); });
  if (ann2.contains(a)) {
    const Elem abar = A.circ_inv(a);
    bool ok = true;
    for (Elem x = 0; x < A.order() && ok; ++x)
      ok = iota(A, a, x) == A.dot(D.conjugate(a, A.lambda(a, x)), A.star(x, abar));
    m.char2_relation_holds = ok;
  }
  return m;
}

inline MapAnalysis map_analysis(const SkewBrace& A, Elem a, const CheckPolicy& policy = {}) {
  return map_analysis(A, a, second_annihilator(A), policy);
}

/// Per-element record of the equivalent conditions for a in Ann_2(A).
struct CharacterizationRow {
  Elem element = 0;
  bool psi_bar_dot_hom = false;       // psi_{a-bar} is a homomorphism on (A, .)
  bool derived_in_psi_bar_kernel = false;  // A*A lies in ker(psi_{a-bar})
  bool iota_dot_aut = false;          // iota_a in Aut(A, .)
  bool right_relation_at_bar = false;  // (x.y) o a-bar = (x o a-bar) . a-bar^-1 . (y o a-bar)
  bool psi_dot_hom = false;           // psi_a is a homomorphism on (A, .)
  bool derived_in_psi_kernel = false;  // A*A lies in ker(psi_a)

  bool consistent() const {
    return psi_bar_dot_hom == derived_in_psi_bar_kernel && psi_bar_dot_hom == iota_dot_aut &&
           iota_dot_aut == right_relation_at_bar && psi_dot_hom == derived_in_psi_kernel;
  }
};

struct CharacterizationReport {
  std::vector<CharacterizationRow> rows;
  /// (A*A)*Ann_2(A) = 1
  bool defect_trivial = false;
  /// iota_a in Aut(A, .) for every a in Ann_2(A)
  bool all_iota_aut = false;
  VerificationReport report;
};

/// For every a in Ann_2(A), evaluates both sides of each equivalence and
/// records a failure (with witness a) whenever they disagree.
inline CharacterizationReport char_equivalences(const SkewBrace& A, const BraceInvariants& inv) {
  CharacterizationReport out;
  out.report.check = "char-equivalences";
  const std::size_t n = A.order();
  auto psi_hom = [&](Elem b) {
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        if (A.star(A.dot(x, y), b) != A.dot(A.star(x, b), A.star(y, b))) return false;
    return true;
  };
  auto kernel_has_derived = [&](Elem b) {
    for (Elem z : inv.derived.members())
      if (A.star(z, b) != 0) return false;
    return true;
  };
  out.all_iota_aut = true;
  for (Elem a : inv.ann2.members()) {
    const Elem abar = A.circ_inv(a);
    CharacterizationRow row;
    row.element = a;
    row.psi_bar_dot_hom = psi_hom(abar);
    row.derived_in_psi_bar_kernel = kernel_has_derived(abar);
    row.psi_dot_hom = psi_hom(a);
    row.derived_in_psi_kernel = kernel_has_derived(a);
    row.iota_dot_aut = true;
    row.right_relation_at_bar = true;
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) {
        if (row.iota_dot_aut && iota(A, a, A.dot(x, y)) != A.dot(iota(A, a, x), iota(A, a, y)))
          row.iota_dot_aut = false;
        if (row.right_relation_at_bar &&
            A.circ(A.dot(x, y), abar) != A.dot(A.dot(A.circ(x, abar), A.dot_inv(abar)), A.circ(y, abar)))
          row.right_relation_at_bar = false;
      }
    ++out.report.checked;
    if (!row.consistent()) out.report.fail({a}, "equivalence broken at a");
    out.all_iota_aut = out.all_iota_aut && row.iota_dot_aut;
    out.rows.push_back(row);
  }
  out.defect_trivial = star_subgroup(A, inv.derived.members(), inv.ann2.members()).is_trivial();
  ++out.report.checked;
  if (out.defect_trivial != out.all_iota_aut)
    out.report.fail({}, "(A*A)*Ann_2(A) = 1 disagrees with iota_a in Aut(A, .) for all a in Ann_2(A)");
  return out;
}

inline CharacterizationReport char_equivalences(const SkewBrace& A) { return char_equivalences(A, compute_invariants(A)); }

/// Ann_2(A)*(A*A) = 1 and [Ann_2(A), A*A] = 1. Witnesses are the nontrivial
/// elements of either subgroup.
inline VerificationReport verify_theorem1(const SkewBrace& A, const BraceInvariants& inv) {
  VerificationReport rep;
  rep.check = "theorem1";
  const auto s = star_subgroup(A, inv.ann2.members(), inv.derived.members());
  const auto c = commutator_subgroup(A.dot_group(), inv.ann2.members(), inv.derived.members());
  rep.checked = 2;
  for (Elem x : s.members())
    if (x != 0) rep.fail({x}, "Ann_2(A)*(A*A) != 1");
  for (Elem x : c.members())
    if (x != 0) rep.fail({x}, "[Ann_2(A), A*A] != 1");
  return rep;
}

inline VerificationReport verify_theorem1(const SkewBrace& A) { return verify_theorem1(A, compute_invariants(A)); }

struct GrunReport {
  std::string brace_id;
  std::size_t order = 0;
  bool is_perfect = false;
  bool is_two_sided = false;
  std::size_t derived_order = 0;
  std::size_t socle_order = 0;
  std::size_t ann_order = 0;
  std::size_t ann2_order = 0;
  /// Members of (A*A)*Ann_2(A).
  std::vector<Elem> defect_set;
  VerificationReport thm1;
  VerificationReport cor_equivalence;
  /// Ann(A/Ann(A)) = 1
  bool grun_holds = false;
  std::size_t quotient_ann_order = 0;

  bool defect_trivial() const { return defect_set.size() == 1; }
};

/// Computes the Grun defect (A*A)*Ann_2(A) and whether Ann(A/Ann(A)) = 1.
/// Throws TheoremViolation when a provable statement fails: theorem 1, the
/// characterization equivalences, a nontrivial defect on a two-sided brace,
/// or (for perfect A) grun_holds disagreeing with a trivial defect.
inline GrunReport grun_defect(const SkewBrace& A, std::string id = {}, const CheckPolicy& policy = {}) {
  const auto inv = compute_invariants(A);
  GrunReport g;
  g.brace_id = std::move(id);
  g.order = A.order();
  g.derived_order = inv.derived.size();
  g.is_perfect = inv.derived.is_whole();
  CheckPolicy p = policy;
  p.max_witnesses = 1;
  g.is_two_sided = is_two_sided(A, p).passed();
  g.socle_order = inv.socle.size();
  g.ann_order = inv.ann.size();
  g.ann2_order = inv.ann2.size();
  g.defect_set = star_subgroup(A, inv.derived.members(), inv.ann2.members()).members();
  g.thm1 = verify_theorem1(A, inv);
  auto ce = char_equivalences(A, inv);
  g.cor_equivalence = ce.report;
  const auto q = quotient_brace(A, inv.ann);
  g.quotient_ann_order = annihilator(q.brace).size();
  g.grun_holds = g.quotient_ann_order == 1;

  if (!g.thm1.passed()) throw Error(ErrorKind::TheoremViolation, "theorem 1 fails", g.thm1.witnesses);
  if (!g.cor_equivalence.passed())
    throw Error(ErrorKind::EquivalenceViolation, g.cor_equivalence.detail, g.cor_equivalence.witnesses);
  if (g.is_two_sided && !g.defect_trivial())
    throw Error(ErrorKind::TheoremViolation, "two-sided brace with nontrivial (A*A)*Ann_2(A)", {g.defect_set});
  if (g.grun_holds != (g.ann2_order == g.ann_order))
    throw Error(ErrorKind::InternalInconsistency, "Ann(A/Ann(A)) disagrees with Ann_2(A)/Ann(A)");
  if (g.is_perfect && g.grun_holds != g.defect_trivial())
    throw Error(ErrorKind::TheoremViolation, "perfect brace: Grun analog disagrees with the defect");
  return g;
}

}  // namespace bracelab
