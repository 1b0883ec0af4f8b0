#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "fp.hpp"
#include "group.hpp"

namespace bracelab {

inline constexpr std::size_t kMatrixClosureCap = 100'000;
inline constexpr std::size_t kMaxTabulatedOrder = 2048;

/// Finite subgroup of GL_n(F_p) with its elements in BFS order from the
/// identity (right-multiplying by generators in the given order).
struct MatrixGroup {
  unsigned p = 2;
  std::size_t dim = 0;
  std::vector<FpMatrix> generators;
  std::vector<FpMatrix> elements;
  /// Multiplication table over element indices; present when the order is
  /// at most 2048.
  std::optional<GroupTable> table;

  std::size_t order() const { return elements.size(); }

  std::optional<Elem> index_of(const FpMatrix& m) const {
    auto it = index_.find(key(m));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  static std::string key(const FpMatrix& m) { return std::string(m.entries().begin(), m.entries().end()); }

  std::unordered_map<std::string, Elem> index_;
};

inline MatrixGroup matrix_group_closure(const std::vector<FpMatrix>& gens, unsigned p, std::size_t dim,
                                        std::size_t cap = kMatrixClosureCap) {
  require_prime(p);
  MatrixGroup g;
  g.p = p;
  g.dim = dim;
  for (const auto& m : gens) {
    if (m.p() != p || m.rows() != dim || m.cols() != dim)
      throw Error(ErrorKind::DimensionMismatch, "generator " + m.str() + " has the wrong shape or modulus");
    if (!m.is_invertible()) throw Error(ErrorKind::SingularGenerator, "generator " + m.str() + " is singular");
  }
  g.generators = gens;
  const auto id = FpMatrix::identity(p, dim);
  g.elements.push_back(id);
  g.index_.emplace(MatrixGroup::key(id), 0);
  for (std::size_t i = 0; i < g.elements.size(); ++i)
    for (const auto& s : gens) {
      FpMatrix y = g.elements[i] * s;
      auto k = MatrixGroup::key(y);
      if (g.index_.count(k)) continue;
      if (g.elements.size() >= cap)
        throw Error(ErrorKind::ClosureBudgetExceeded, "matrix group exceeds " + std::to_string(cap) + " elements");
      g.index_.emplace(std::move(k), static_cast<Elem>(g.elements.size()));
      g.elements.push_back(std::move(y));
    }
  if (g.order() <= kMaxTabulatedOrder) {
    g.table = tabulate(g.order(), [&](Elem a, Elem b) { return *g.index_of(g.elements[a] * g.elements[b]); });
  }
  return g;
}

inline MatrixGroup matrix_group_closure(const std::vector<FpMatrix>& gens) {
  if (gens.empty()) throw Error(ErrorKind::DimensionMismatch, "need at least one generator to infer p and n");
  return matrix_group_closure(gens, gens[0].p(), gens[0].rows());
}

/// Common fixed space of a list of matrices: intersection of ker(M - I).
inline FpSubspace common_fixed_space(const std::vector<FpMatrix>& ms, unsigned p, std::size_t dim) {
  if (ms.empty()) return FpSubspace::full(p, dim);
  std::vector<FpMatrix> blocks;
  for (const auto& m : ms) blocks.push_back(m.minus_identity());
  return kernel(FpMatrix::stack(p, dim, blocks));
}

/// Fixed space of the group, computed from its generators.
inline FpSubspace fixed_space(const MatrixGroup& g) { return common_fixed_space(g.generators, g.p, g.dim); }

/// Fixed space computed from every element of the group.
inline FpSubspace fixed_space_all_elements(const MatrixGroup& g) { return common_fixed_space(g.elements, g.p, g.dim); }

struct RecipeCheck {
  /// Columns of all M_i - I span F_p^n.
  bool cond1 = false;
  /// U: intersection of ker(M_i - I).
  FpSubspace fixed{2, 0};
  /// {v : (M_i - I) v in U for all i}; contains U.
  FpSubspace preimage{2, 0};
  /// Some v outside U is mapped into U by every M_i - I.
  bool cond2 = false;
  /// Vectors of preimage \ U, scaled so the first nonzero entry is 1, in
  /// lexicographic order. Truncated when `witnesses_truncated`.
  std::vector<FpVector> witnesses_v;
  bool witnesses_truncated = false;
};

inline constexpr std::size_t kMaxRecipeWitnesses = 4096;

inline RecipeCheck recipe_check(const std::vector<FpMatrix>& gens, unsigned p, std::size_t n) {
  require_prime(p);
  RecipeCheck r;
  for (const auto& m : gens)
    if (!m.is_invertible()) throw Error(ErrorKind::SingularGenerator, "generator " + m.str() + " is singular");
  std::vector<FpVector> cols;
  for (const auto& m : gens) {
    const auto d = m.minus_identity();
    for (std::size_t j = 0; j < n; ++j) cols.push_back(d.column(j));
  }
  r.cond1 = FpSubspace::span(p, n, cols).dim() == n;
  r.fixed = common_fixed_space(gens, p, n);
  const auto proj = defining_matrix(r.fixed);
  std::vector<FpMatrix> blocks;
  for (const auto& m : gens) blocks.push_back(proj * m.minus_identity());
  r.preimage = blocks.empty() ? FpSubspace::full(p, n) : kernel(FpMatrix::stack(p, n, blocks));
  r.cond2 = r.preimage.dim() > r.fixed.dim();
  if (r.cond2) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < r.preimage.dim() && total <= kMaxRecipeWitnesses * p; ++i) total *= p;
    if (total > kMaxRecipeWitnesses * p) {
      r.witnesses_truncated = true;
      for (const auto& b : r.preimage.basis())
        if (!r.fixed.contains(b)) r.witnesses_v.push_back(b);
    } else {
      for (auto& v : r.preimage.elements()) {
        if (r.fixed.contains(v)) continue;
        const auto lead = *std::find_if(v.begin(), v.end(), [](auto x) { return x != 0; });
        if (lead != 1) continue;  // keep one representative per scalar class
        r.witnesses_v.push_back(std::move(v));
      }
    }
    std::sort(r.witnesses_v.begin(), r.witnesses_v.end());
  }
  return r;
}

inline RecipeCheck recipe_check(const std::vector<FpMatrix>& gens) {
  if (gens.empty()) throw Error(ErrorKind::DimensionMismatch, "need at least one generator");
  return recipe_check(gens, gens[0].p(), gens[0].rows());
}

/// Element orders of a matrix group, as a profile order -> count.
inline OrderProfile matrix_order_profile(const MatrixGroup& g) {
  OrderProfile prof;
  const auto id = FpMatrix::identity(g.p, g.dim);
  for (const auto& m : g.elements) {
    std::size_t k = 1;
    for (FpMatrix x = m; !(x == id); x = x * m) ++k;
    ++prof[k];
  }
  return prof;
}

/// Conjugacy-invariant fingerprint used to deduplicate recipe candidates.
struct RecipeSignature {
  std::size_t group_order = 0;
  std::size_t fixed_dim = 0;
  OrderProfile profile;

  friend bool operator<(const RecipeSignature& a, const RecipeSignature& b) {
    return std::tie(a.group_order, a.fixed_dim, a.profile) < std::tie(b.group_order, b.fixed_dim, b.profile);
  }
  friend bool operator==(const RecipeSignature& a, const RecipeSignature& b) {
    return a.group_order == b.group_order && a.fixed_dim == b.fixed_dim && a.profile == b.profile;
  }
};

struct RecipeCandidate {
  std::vector<FpMatrix> generators;
  RecipeSignature signature;
  /// Qualifying generator sets seen with this signature.
  std::size_t multiplicity = 0;
};

enum class SearchStrategy { Exhaustive, Random };

struct RecipeSearchOptions {
  SearchStrategy strategy = SearchStrategy::Exhaustive;
  std::uint64_t budget = 10'000'000;
  std::uint64_t seed = 0;
  /// Largest generator-set size tried.
  std::size_t max_generators = 2;
  /// Random strategy stops after this many qualifying sets (0 = run the
  /// whole budget).
  std::size_t stop_after = 64;
};

struct RecipeSearchResult {
  /// One entry per signature (lexicographically first generator set),
  /// ordered by signature.
  std::vector<RecipeCandidate> catalog;
  std::uint64_t nodes = 0;
  std::size_t qualifying_sets = 0;
  bool budget_exceeded = false;
};

namespace detail {

inline FpMatrix matrix_from_index(unsigned p, std::size_t n, std::uint64_t idx) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n * n; ++i) {
    m(i / n, i % n) = static_cast<std::uint8_t>(idx % p);
    idx /= p;
  }
  return m;
}

class RecipeCollector {
 public:
  RecipeCollector(unsigned p, std::size_t n) : p_(p), n_(n) {}

  bool consider(std::vector<FpMatrix> gens) {
    auto rc = recipe_check(gens, p_, n_);
    if (!rc.cond1 || !rc.cond2) return false;
    std::sort(gens.begin(), gens.end());
    auto g = matrix_group_closure(gens, p_, n_);
    RecipeSignature sig{g.order(), fixed_space(g).dim(), matrix_order_profile(g)};
    ++qualifying_;
    auto [it, fresh] = found_.try_emplace(sig, RecipeCandidate{gens, sig, 0});
    ++it->second.multiplicity;
    if (!fresh && gens < it->second.generators) it->second.generators = gens;
    return true;
  }

  void finish(RecipeSearchResult& out) {
    out.qualifying_sets = qualifying_;
    for (auto& [sig, cand] : found_) out.catalog.push_back(std::move(cand));
  }

  std::size_t qualifying() const { return qualifying_; }

 private:
  unsigned p_;
  std::size_t n_;
  std::size_t qualifying_ = 0;
  std::map<RecipeSignature, RecipeCandidate> found_;
};

}  // namespace detail

/// Searches for generator sets of GL_n(F_p) satisfying both recipe
/// conditions. Exhaustive: all sets of 1..max_generators distinct
/// non-identity invertible matrices in lexicographic order, one node per
/// set. Random: rejection-sampled invertible matrices from a seeded RNG,
/// one node per sampled matrix.
inline RecipeSearchResult search_recipe(std::size_t n, unsigned p, const RecipeSearchOptions& opt = {}) {
  require_prime(p);
  if (n == 0 || n > kMaxDimension) throw Error(ErrorKind::DimensionMismatch, "dimension must be 1..16");
  RecipeSearchResult out;
  detail::RecipeCollector col(p, n);
  const auto id = FpMatrix::identity(p, n);

  if (opt.strategy == SearchStrategy::Exhaustive) {
    // Enumerating all of GL_n(F_p) is only feasible for tiny n, p.
    double space = 1;
    for (std::size_t i = 0; i < n * n; ++i) space *= p;
    if (space > 1e7) throw Error(ErrorKind::BudgetExceeded, "exhaustive search space too large; use --strategy random");
    std::vector<FpMatrix> gl;
    for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(space); ++idx) {
      auto m = detail::matrix_from_index(p, n, idx);
      if (m.is_invertible() && !(m == id)) gl.push_back(std::move(m));
    }
    std::sort(gl.begin(), gl.end());
    std::vector<std::size_t> pick;
    // Combinations of increasing index, size 1..max_generators.
    auto rec = [&](auto&& self, std::size_t start) -> bool {
      if (!pick.empty()) {
        if (++out.nodes > opt.budget) {
          out.budget_exceeded = true;
          return false;
        }
        std::vector<FpMatrix> gens;
        for (auto i : pick) gens.push_back(gl[i]);
        col.consider(std::move(gens));
      }
      if (pick.size() == opt.max_generators) return true;
      for (std::size_t i = start; i < gl.size(); ++i) {
        pick.push_back(i);
        const bool go = self(self, i + 1);
        pick.pop_back();
        if (!go) return false;
      }
      return true;
    };
    rec(rec, 0);
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<unsigned> entry(0, p - 1);
    std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, opt.max_generators));
    auto sample = [&]() -> std::optional<FpMatrix> {
      for (;;) {
        if (++out.nodes > opt.budget) {
          out.budget_exceeded = true;
          return std::nullopt;
        }
        FpMatrix m(p, n, n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<std::uint8_t>(entry(rng));
        if (m.is_invertible() && !(m == id)) return m;
      }
    };
    while (!out.budget_exceeded && (opt.stop_after == 0 || col.qualifying() < opt.stop_after)) {
      const std::size_t d = count(rng);
      std::vector<FpMatrix> gens;
      for (std::size_t k = 0; k < d; ++k) {
        auto m = sample();
        if (!m) break;
        gens.push_back(std::move(*m));
      }
      if (gens.size() == d) col.consider(std::move(gens));
    }
    // Running out of budget after at least one hit is not an error for the
    // random strategy.
    if (col.qualifying() > 0) out.budget_exceeded = false;
  }
  col.finish(out);
  return out;
}

}  // namespace bracelab
