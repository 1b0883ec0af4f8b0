#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "brace.hpp"
#include "fp.hpp"
#include "grun.hpp"
#include "isomorphism.hpp"
#include "matrix_group.hpp"

namespace bracelab {

/// phi : (C, o) -> Aut(B, .) n Aut(B, o), stored as one permutation of B per
/// element of C.
struct BraceAction {
  SkewBrace acting;
  SkewBrace target;
  std::vector<std::vector<Elem>> perms;

  Elem apply(Elem c, Elem b) const { return perms[c][b]; }
};

/// Checks that c -> perms[c] is a homomorphism from (C, o) and that every
/// perms[c] is a bijective automorphism of both (B, .) and (B, o).
inline VerificationReport check_action(const BraceAction& act) {
  VerificationReport rep;
  rep.check = "brace-action";
  const auto& B = act.target;
  const auto& C = act.acting;
  const std::size_t nb = B.order(), nc = C.order();
  if (act.perms.size() != nc) {
    rep.fail({}, "one permutation per element of C is required");
    return rep;
  }
  for (Elem c = 0; c < nc; ++c) {
    const auto& f = act.perms[c];
    std::vector<bool> hit(nb, false);
    bool bij = f.size() == nb;
    for (std::size_t i = 0; bij && i < nb; ++i) {
      if (f[i] >= nb || hit[f[i]]) bij = false;
      else hit[f[i]] = true;
    }
    if (!bij) {
      rep.fail({c}, "phi_c is not a permutation of B");
      return rep;
    }
  }
  for (Elem c = 0; c < nc; ++c) {
    const auto& f = act.perms[c];
    for (Elem x = 0; x < nb; ++x)
      for (Elem y = 0; y < nb; ++y) {
        ++rep.checked;
        if (f[B.dot(x, y)] != B.dot(f[x], f[y])) {
          rep.fail({c, x, y}, "phi_c is not an automorphism of (B, .)");
          return rep;
        }
        if (f[B.circ(x, y)] != B.circ(f[x], f[y])) {
          rep.fail({c, x, y}, "phi_c is not an automorphism of (B, o)");
          return rep;
        }
      }
  }
  for (Elem c1 = 0; c1 < nc; ++c1)
    for (Elem c2 = 0; c2 < nc; ++c2) {
      const auto& f = act.perms[C.circ(c1, c2)];
      for (Elem x = 0; x < nb; ++x) {
        ++rep.checked;
        if (f[x] != act.perms[c1][act.perms[c2][x]]) {
          rep.fail({c1, c2, x}, "phi_{c1 o c2} != phi_c1 phi_c2");
          return rep;
        }
      }
    }
  return rep;
}

inline BraceAction make_action(SkewBrace C, SkewBrace B, std::vector<std::vector<Elem>> perms) {
  BraceAction act{std::move(C), std::move(B), std::move(perms)};
  auto rep = check_action(act);
  if (!rep.passed()) throw Error(ErrorKind::InvalidAction, rep.detail, rep.witnesses);
  return act;
}

inline BraceAction trivial_action(const SkewBrace& C, const SkewBrace& B) {
  return BraceAction{C, B, std::vector<std::vector<Elem>>(C.order(), all_elements(B.order()))};
}

/// B x|_phi C with (b1,c1).(b2,c2) = (b1.b2, c1.c2) and
/// (b1,c1)o(b2,c2) = (b1 o phi_c1(b2), c1 o c2); (b,c) at index b + |B| c.
inline SkewBrace semidirect_product(const BraceAction& act, const CheckPolicy& policy = {}) {
  auto rep = check_action(act);
  if (!rep.passed()) throw Error(ErrorKind::InvalidAction, rep.detail, rep.witnesses);
  const auto& B = act.target;
  const auto& C = act.acting;
  const std::size_t nb = B.order();
  const std::size_t n = nb * C.order();
  auto dot = tabulate(n, [&](Elem x, Elem y) {
    return B.dot(x % nb, y % nb) + static_cast<Elem>(nb) * C.dot(x / nb, y / nb);
  });
  auto circ = tabulate(n, [&](Elem x, Elem y) {
    const Elem c1 = x / nb;
    return B.circ(x % nb, act.apply(c1, y % nb)) + static_cast<Elem>(nb) * C.circ(c1, y / nb);
  });
  auto checked = validate_skew_brace(dot, circ, policy);
  if (!checked) throw Error(ErrorKind::InternalInconsistency, "semidirect product is not a skew brace", checked.report().witnesses);
  return checked.value();
}

inline constexpr std::size_t kMaxVectorBraceOrder = 4096;

/// (F_p^n, +, +); vector v at index sum v_i p^i.
inline SkewBrace vector_trivial_brace(unsigned p, std::size_t n) {
  require_prime(p);
  std::size_t size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    size *= p;
    if (size > kMaxVectorBraceOrder) throw Error(ErrorKind::SizeExceeded, "p^n exceeds 4096");
  }
  auto t = tabulate(size, [&](Elem a, Elem b) {
    auto u = index_to_vector(p, n, a), v = index_to_vector(p, n, b);
    for (std::size_t i = 0; i < n; ++i) u[i] = static_cast<std::uint8_t>((u[i] + v[i]) % p);
    return static_cast<Elem>(vector_to_index(p, u));
  });
  return SkewBrace::trusted(t, t);
}

/// Permutation of vector indices induced by a matrix.
inline std::vector<Elem> matrix_permutation(const FpMatrix& m) {
  const unsigned p = m.p();
  const std::size_t n = m.rows();
  std::size_t size = 1;
  for (std::size_t i = 0; i < n; ++i) size *= p;
  std::vector<Elem> perm(size);
  for (std::size_t i = 0; i < size; ++i)
    perm[i] = static_cast<Elem>(vector_to_index(p, m.apply(index_to_vector(p, n, i))));
  return perm;
}

/// Action of C on the vector brace B through rep : (C, o) -> G.
inline BraceAction matrix_action(const SkewBrace& C, const GroupHom& rep, const MatrixGroup& G, const SkewBrace& B) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < G.dim; ++i) size *= G.p;
  if (size != B.order()) throw Error(ErrorKind::DimensionMismatch, "matrix group does not act on a brace of this order");
  if (rep.image_of.size() != C.order() || rep.target.order() != G.order())
    throw Error(ErrorKind::DimensionMismatch, "representation does not match C and the matrix group");
  std::vector<std::vector<Elem>> by_matrix;
  by_matrix.reserve(G.order());
  for (const auto& m : G.elements) by_matrix.push_back(matrix_permutation(m));
  std::vector<std::vector<Elem>> perms(C.order());
  for (Elem c = 0; c < C.order(); ++c) perms[c] = by_matrix[rep(c)];
  return make_action(C, B, std::move(perms));
}

namespace detail {

inline FpMatrix matrix_power(const FpMatrix& m, unsigned k) {
  FpMatrix r = FpMatrix::identity(m.p(), m.rows());
  for (unsigned i = 0; i < k; ++i) r = r * m;
  return r;
}

}  // namespace detail

/// The order-24 brace with (C, .) = F_3 x F_2^3 and (C, o) ~ S4. Element
/// (v, x1, x2, x3) at index v + 3 (x1 + 2 x2 + 4 x3); a o b = a . lambda_a(b)
/// where lambda_a acts by a sign on v and by a 3x3 matrix over F_2 on x.
inline SkewBrace example1_brace() {
  const auto T = FpMatrix::from_rows(2, {{0, 1, 0}, {1, 1, 0}, {0, 1, 1}});
  const auto S = FpMatrix::from_rows(2, {{0, 1}, {1, 0}});
  const auto R = FpMatrix::from_rows(2, {{0, 1}, {1, 1}});
  struct El {
    unsigned v, x1, x2, x3;
  };
  auto decode = [](Elem i) { return El{i % 3, (i / 3) % 2, (i / 6) % 2, (i / 12) % 2}; };
  auto encode = [](unsigned v, unsigned x1, unsigned x2, unsigned x3) {
    return static_cast<Elem>(v % 3 + 3 * (x1 % 2 + 2 * (x2 % 2) + 4 * (x3 % 2)));
  };
  auto dot = tabulate(24, [&](Elem a, Elem b) {
    const auto x = decode(a), y = decode(b);
    return encode(x.v + y.v, x.x1 + y.x1, x.x2 + y.x2, x.x3 + y.x3);
  });
  std::vector<std::vector<Elem>> lambda(24, std::vector<Elem>(24));
  for (Elem a = 0; a < 24; ++a) {
    const auto e = decode(a);
    const unsigned q = (e.x3 + e.x1 * e.x2) % 2;
    FpMatrix eps = FpMatrix::from_rows(2, {{long(e.x1), long(e.x2)}}) * detail::matrix_power(R, (3 - e.v) % 3) *
                   detail::matrix_power(S, (1 + q) % 2);
    const auto Sq = detail::matrix_power(S, q);
    FpMatrix block(2, 3, 3);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) block(i, j) = Sq(i, j);
    block(2, 0) = eps(0, 0);
    block(2, 1) = eps(0, 1);
    block(2, 2) = 1;
    const FpMatrix L = detail::matrix_power(T, e.v) * block;
    for (Elem b = 0; b < 24; ++b) {
      const auto f = decode(b);
      const auto y = L.apply({static_cast<std::uint8_t>(f.x1), static_cast<std::uint8_t>(f.x2),
                              static_cast<std::uint8_t>(f.x3)});
      const unsigned w = q ? (3 - f.v) % 3 : f.v;
      lambda[a][b] = encode(w, y[0], y[1], y[2]);
    }
  }
  RawTable raw(24, std::vector<Elem>(24));
  for (Elem a = 0; a < 24; ++a)
    for (Elem b = 0; b < 24; ++b) raw[a][b] = dot.mul(a, lambda[a][b]);
  VerificationReport rep;
  if (detail::check_group_axioms(raw, {}, rep) != Elem{0})
    throw Error(ErrorKind::ConstructionInvalid, "circ table is not a group: " + rep.detail, rep.witnesses);
  const auto circ = detail::from_raw(raw);
  auto checked = validate_skew_brace(dot, circ);
  if (!checked) throw Error(ErrorKind::ConstructionInvalid, checked.report().detail, checked.report().witnesses);
  return checked.value();
}

/// Generator of the image in the F_p^2 instance: [[1,1],[0,1]].
inline std::vector<FpMatrix> prop1_matrices(unsigned p = 2) {
  return {FpMatrix::from_rows(p, {{1, 1}, {0, 1}})};
}

/// Generators of the image in the F_p^3 instance (p odd).
inline std::vector<FpMatrix> prop2_matrices(unsigned p = 3) {
  if (p == 2) throw Error(ErrorKind::PreconditionFailed, "the F_p^3 instance needs an odd prime");
  return {FpMatrix::from_rows(p, {{1, 0, 1}, {0, 1, 0}, {0, 0, 1}}),
          FpMatrix::from_rows(p, {{1, 1, 0}, {0, -1, 0}, {0, 0, 1}})};
}

/// The four generators over F_2 of the S4 image acting on F_2^4.
inline std::vector<FpMatrix> prop3_matrices() {
  return {FpMatrix::from_rows(2, {{0, 1, 1, 1}, {0, 1, 0, 0}, {1, 0, 0, 1}, {0, 1, 0, 1}}),
          FpMatrix::from_rows(2, {{1, 1, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 1}, {1, 0, 1, 0}}),
          FpMatrix::from_rows(2, {{1, 0, 0, 0}, {1, 1, 1, 1}, {0, 0, 1, 0}, {1, 1, 1, 0}}),
          FpMatrix::from_rows(2, {{0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 1}})};
}

struct MatrixSemidirect {
  SkewBrace brace;
  SkewBrace base;
  SkewBrace acting;
  MatrixGroup image;
  GroupHom rep;
};

/// F_p^n x|_phi C where phi is the first surjection (C, o) -> G found.
inline MatrixSemidirect matrix_semidirect(const SkewBrace& C, const MatrixGroup& G) {
  if (!G.table) throw Error(ErrorKind::SizeExceeded, "matrix group too large to tabulate");
  auto rep = find_surjection(C.circ_group(), *G.table);
  if (!rep) throw Error(ErrorKind::NoSurjection, "(C, o) has no quotient isomorphic to the matrix group");
  auto B = vector_trivial_brace(G.p, G.dim);
  auto act = matrix_action(C, *rep, G, B);
  return MatrixSemidirect{semidirect_product(act), B, C, G, std::move(*rep)};
}

struct Counterexample {
  MatrixSemidirect construction;
  GrunReport report;
};

inline Counterexample build_counterexample(const SkewBrace& C, const MatrixGroup& G, std::string id = {}) {
  if (!is_perfect(C)) throw Error(ErrorKind::PreconditionFailed, "C is not perfect");
  if (!annihilator(C).is_trivial()) throw Error(ErrorKind::PreconditionFailed, "Ann(C) is not trivial");
  auto sd = matrix_semidirect(C, G);
  auto rep = grun_defect(sd.brace, std::move(id));
  return Counterexample{std::move(sd), std::move(rep)};
}

struct SemidirectPrediction {
  /// Span of Im(xi - I) over all xi in G; A*A is this times C.
  FpSubspace derived_base;
  /// Fix(G); Ann(A) is this times {1}.
  FpSubspace ann_base;
};

inline SemidirectPrediction predict_semidirect_invariants(const MatrixGroup& G, bool c_perfect, bool annc_trivial,
                                                          bool kernel_trivial) {
  if (!c_perfect) throw Error(ErrorKind::PreconditionFailed, "the prediction needs C perfect");
  if (!annc_trivial && !kernel_trivial)
    throw Error(ErrorKind::PreconditionFailed, "the prediction needs Ann(C) = 1 or ker(phi) = 1");
  std::vector<FpVector> cols;
  for (const auto& m : G.elements) {
    const auto d = m.minus_identity();
    for (std::size_t j = 0; j < G.dim; ++j) cols.push_back(d.column(j));
  }
  return SemidirectPrediction{FpSubspace::span(G.p, G.dim, cols), fixed_space(G)};
}

/// Elements b + |B| c of A for b in `base` and c in `cs`.
inline std::vector<Elem> lift_subspace(const FpSubspace& base, std::span<const Elem> cs) {
  std::size_t nb = 1;
  for (std::size_t i = 0; i < base.ambient_dim(); ++i) nb *= base.p();
  std::vector<Elem> out;
  for (Elem c : cs)
    for (const auto& v : base.elements()) out.push_back(static_cast<Elem>(vector_to_index(base.p(), v) + nb * c));
  std::sort(out.begin(), out.end());
  return out;
}

/// Compares the predicted A*A and Ann(A) against brute force on A.
inline VerificationReport compare_prediction(const MatrixSemidirect& sd, const SemidirectPrediction& pred) {
  VerificationReport rep;
  rep.check = "semidirect-prediction";
  const auto all_c = all_elements(sd.acting.order());
  const std::vector<Elem> one{0};
  const auto want_derived = lift_subspace(pred.derived_base, all_c);
  const auto want_ann = lift_subspace(pred.ann_base, one);
  const auto got_derived = derived_ideal(sd.brace).members();
  const auto got_ann = annihilator(sd.brace).members();
  rep.checked = 2;
  if (got_derived != want_derived) rep.fail(got_derived, "A*A differs from the prediction");
  if (got_ann != want_ann) rep.fail(got_ann, "Ann(A) differs from the prediction");
  return rep;
}

/// Fix(G) x {1} <= Ann(A) <= Fix(G) x (ker(phi) n Ann(C)).
inline VerificationReport check_annihilator_bounds(const MatrixSemidirect& sd) {
  VerificationReport rep;
  rep.check = "annihilator-bounds";
  const auto fix = fixed_space(sd.image);
  const auto ann = annihilator(sd.brace);
  const auto ann_c = annihilator(sd.acting);
  std::vector<Elem> upper_c;
  for (Elem c : ann_c.members())
    if (sd.rep(c) == 0) upper_c.push_back(c);
  const std::vector<Elem> one{0};
  const auto lower = lift_subspace(fix, one);
  const auto upper = lift_subspace(fix, upper_c);
  for (Elem x : lower) {
    ++rep.checked;
    if (!ann.contains(x)) rep.fail({x}, "fixed vector outside Ann(A)");
  }
  for (Elem x : ann.members()) {
    ++rep.checked;
    if (!std::binary_search(upper.begin(), upper.end(), x)) rep.fail({x}, "Ann(A) element outside the upper bound");
  }
  return rep;
}

}  // namespace bracelab
