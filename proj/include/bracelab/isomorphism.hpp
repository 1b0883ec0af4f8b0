#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "group.hpp"

namespace bracelab {

enum class SearchOutcome { Found, None, BudgetExceeded };

struct IsomorphismSearch {
  SearchOutcome outcome = SearchOutcome::None;
  std::optional<GroupHom> map;
  std::uint64_t nodes = 0;

  explicit operator bool() const { return outcome == SearchOutcome::Found; }
};

inline constexpr std::uint64_t kDefaultIsoBudget = 10'000'000;

namespace detail {

class IsoSearch {
 public:
  IsoSearch(const GroupTable& g, const GroupTable& h, std::uint64_t budget) : g_(g), h_(h), budget_(budget) {}

  IsomorphismSearch run() {
    IsomorphismSearch res;
    if (g_.order() != h_.order() || order_profile(g_) != order_profile(h_)) return res;

    gens_ = generating_set(g_);
    std::vector<std::size_t> h_ord(h_.order());
    for (Elem x = 0; x < h_.order(); ++x) h_ord[x] = element_order(h_, x);
    for (Elem gen : gens_) {
      const std::size_t o = element_order(g_, gen);
      std::vector<Elem> c;
      for (Elem x = 0; x < h_.order(); ++x)
        if (h_ord[x] == o) c.push_back(x);
      candidates_.push_back(std::move(c));
    }
    images_.assign(gens_.size(), 0);
    map_.assign(g_.order(), 0);

    const bool found = descend(0);
    res.nodes = nodes_;
    if (found) {
      res.outcome = SearchOutcome::Found;
      res.map = GroupHom{g_, h_, map_};
    } else {
      res.outcome = exceeded_ ? SearchOutcome::BudgetExceeded : SearchOutcome::None;
    }
    return res;
  }

 private:
  // Extends the generator assignment images_[0..depth] to the subgroup they
  // generate; false on a relation clash or a non-injective image.
  bool extend(std::size_t depth) {
    constexpr Elem unset = ~Elem{0};
    map_.assign(g_.order(), unset);
    std::vector<char> used(h_.order(), 0);
    std::vector<Elem> queue{0};
    map_[0] = 0;
    used[0] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const Elem x = queue[i];
      for (std::size_t j = 0; j <= depth; ++j) {
        const Elem y = g_.mul(x, gens_[j]);
        const Elem fy = h_.mul(map_[x], images_[j]);
        if (map_[y] == unset) {
          if (used[fy]) return false;
          used[fy] = 1;
          map_[y] = fy;
          queue.push_back(y);
        } else if (map_[y] != fy) {
          return false;
        }
      }
    }
    return true;
  }

  bool descend(std::size_t depth) {
    if (depth == gens_.size()) return true;
    for (Elem cand : candidates_[depth]) {
      if (++nodes_ > budget_) {
        exceeded_ = true;
        return false;
      }
      images_[depth] = cand;
      if (extend(depth) && descend(depth + 1)) return true;
      if (exceeded_) return false;
    }
    return false;
  }

  const GroupTable& g_;
  const GroupTable& h_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exceeded_ = false;
  std::vector<Elem> gens_;
  std::vector<std::vector<Elem>> candidates_;
  std::vector<Elem> images_;
  std::vector<Elem> map_;
};

}  // namespace detail

/// Backtracking search for an isomorphism G -> H over images of a greedy
/// generating set of G. Candidate images must match the generator's element
/// order; groups with different order profiles are rejected immediately.
inline IsomorphismSearch find_isomorphism(const GroupTable& g, const GroupTable& h,
                                          std::uint64_t budget = kDefaultIsoBudget) {
  return detail::IsoSearch(g, h, budget).run();
}

inline bool are_isomorphic(const GroupTable& g, const GroupTable& h, std::uint64_t budget = kDefaultIsoBudget) {
  auto r = find_isomorphism(g, h, budget);
  if (r.outcome == SearchOutcome::BudgetExceeded)
    throw Error(ErrorKind::BudgetExceeded, "isomorphism search exceeded its node budget");
  return r.outcome == SearchOutcome::Found;
}

/// A surjective homomorphism G -> H, if any: tries each normal subgroup N of
/// index |H| (smallest first) and an isomorphism G/N -> H.
inline std::optional<GroupHom> find_surjection(const GroupTable& g, const GroupTable& h) {
  if (h.order() == 0 || g.order() % h.order() != 0) return std::nullopt;
  if (h.order() == 1) return GroupHom{g, h, std::vector<Elem>(g.order(), 0)};
  for (const auto& n : normal_subgroups(g)) {
    if (n.size() * h.order() != g.order()) continue;
    auto q = quotient_group(g, n);
    auto iso = find_isomorphism(q.group, h);
    if (iso) return compose(*iso.map, q.projection);
  }
  return std::nullopt;
}

}  // namespace bracelab
