#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace bracelab;

namespace {

GroupTable shuffled(const GroupTable& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto perm = all_elements(g.order());
  std::shuffle(perm.begin() + 1, perm.end(), rng);
  std::vector<Elem> inv(g.order());
  for (Elem i = 0; i < g.order(); ++i) inv[perm[i]] = i;
  return tabulate(g.order(), [&](Elem a, Elem b) { return perm[g.mul(inv[a], inv[b])]; });
}

bool is_isomorphism(const GroupHom& f) { return check_homomorphism(f).passed() && is_injective(f) && is_surjective(f); }

}  // namespace

TEST(Isomorphism, SmallGroupsPairwiseNonIsomorphic) {
  const auto gs = groups::small_groups();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j) {
      if (gs[i].table.order() != gs[j].table.order()) continue;
      const auto r = find_isomorphism(gs[i].table, gs[j].table);
      EXPECT_EQ(r.outcome, SearchOutcome::None) << gs[i].name << " vs " << gs[j].name;
    }
}

TEST(Isomorphism, FindsMapToRelabelledCopy) {
  std::uint64_t seed = 1;
  for (const auto& ng : groups::small_groups()) {
    const auto h = shuffled(ng.table, seed++);
    const auto r = find_isomorphism(ng.table, h);
    ASSERT_EQ(r.outcome, SearchOutcome::Found) << ng.name;
    EXPECT_TRUE(is_isomorphism(*r.map)) << ng.name;
  }
}

TEST(Isomorphism, AgreesWithBruteForceOnTinyGroups) {
  std::vector<GroupTable> tiny;
  for (const auto& ng : groups::small_groups())
    if (ng.table.order() <= 6) tiny.push_back(ng.table);
  for (const auto& g : tiny)
    for (const auto& h : tiny) {
      const bool want = oracle::isomorphic_bruteforce(g.raw(), h.raw());
      EXPECT_EQ(bool(find_isomorphism(g, h)), want);
    }
}

TEST(Isomorphism, LargerGroups) {
  EXPECT_TRUE(are_isomorphic(groups::symmetric(4), shuffled(groups::symmetric(4), 3)));
  EXPECT_FALSE(are_isomorphic(groups::symmetric(4), groups::special_linear_2(3)));
  EXPECT_FALSE(are_isomorphic(groups::symmetric(5), groups::special_linear_2(5)));
  EXPECT_TRUE(are_isomorphic(groups::alternating(5), shuffled(groups::alternating(5), 9)));
}

TEST(Isomorphism, BudgetExceeded) {
  const auto g = groups::by_name("C2^4").value();
  const auto r = find_isomorphism(g, shuffled(g, 5), 1);
  EXPECT_EQ(r.outcome, SearchOutcome::BudgetExceeded);
  EXPECT_THROW(are_isomorphic(g, shuffled(g, 5), 1), Error);
}

TEST(Surjection, S4OntoS3AndC2) {
  const auto s4 = groups::symmetric(4);
  for (const auto& h : {groups::symmetric(3), groups::cyclic(2), GroupTable{}}) {
    const auto f = find_surjection(s4, h);
    ASSERT_TRUE(f.has_value());
    EXPECT_TRUE(check_homomorphism(*f).passed());
    EXPECT_TRUE(is_surjective(*f));
  }
  EXPECT_FALSE(find_surjection(s4, groups::cyclic(3)).has_value());
  EXPECT_FALSE(find_surjection(s4, groups::cyclic(5)).has_value());
  EXPECT_FALSE(find_surjection(groups::alternating(5), groups::cyclic(2)).has_value());
}
