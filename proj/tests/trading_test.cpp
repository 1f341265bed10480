#include <gtest/gtest.h>

#include <random>

#include "cex/enumerate.hpp"
#include "cex/trading.hpp"
#include "oracles.hpp"

using namespace cex;

namespace {

// Strict-core test by brute force: no coalition can reallocate its own
// workers so that every member is weakly better off and one strictly.
bool in_strict_core(const oracle::Orders& o, const oracle::Map& m) {
  const int n = static_cast<int>(o.size());
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> s;
    for (int i = 1; i <= n; ++i)
      if (mask >> (i - 1) & 1) s.push_back(i);
    std::vector<int> perm(s);
    do {
      bool weak = true, strict = false;
      for (std::size_t k = 0; k < s.size(); ++k) {
        const int i = s[k];
        if (oracle::better(o, i, m[i - 1], perm[k])) weak = false;
        if (oracle::better(o, i, perm[k], m[i - 1])) strict = true;
      }
      if (weak && strict) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return true;
}

oracle::Map values(const Assignment& a) { return {a.values().begin(), a.values().end()}; }

const PreferenceProfile kBase({{1, 2, 3}, {3, 1, 2}, {2, 3, 1}});
const PreferenceProfile kImproved({{1, 2, 3}, {1, 3, 2}, {2, 3, 1}});

}  // namespace

TEST(Ttc, OutcomeIsTheStrictCore) {
  std::mt19937_64 g(13);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + trial % 4;
    const auto o = oracle::random_orders(n, g);
    EXPECT_TRUE(in_strict_core(o, values(run_ttc(Problem(PreferenceProfile(o))))));
  }
}

TEST(Ttc, OwnTopKeepsEveryone) {
  const Problem p(PreferenceProfile({{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}));
  EXPECT_EQ(run_ttc(p), Assignment::identity(3));
}

TEST(Ttc, DivergesFromBackwardTtc) {
  EXPECT_EQ(run_ttc(Problem(kBase)), Assignment({1, 3, 2}));
  EXPECT_EQ(run_ttc(Problem(kImproved)), Assignment({1, 3, 2}));
  EXPECT_EQ(run_bttc(Problem(kBase)).assignment, Assignment({1, 3, 2}));
  EXPECT_EQ(run_bttc(Problem(kImproved)).assignment, Assignment({2, 1, 3}));
}

TEST(Bttc, CyclesAndClearing) {
  const auto base = run_bttc_detailed(Problem(kBase));
  ASSERT_EQ(base.cycles.size(), 2u);
  EXPECT_EQ(base.cycles[0].step, 1);
  EXPECT_FALSE(base.cycles[0].staying);
  EXPECT_EQ(base.cycles[1].step, 2);
  EXPECT_EQ(base.cycles[1].members, (std::vector<Division>{1}));
  EXPECT_TRUE(base.cycles[1].staying);

  const auto imp = run_bttc_detailed(Problem(kImproved));
  ASSERT_EQ(imp.cycles.size(), 2u);
  EXPECT_FALSE(imp.cycles[0].staying);
  EXPECT_EQ(imp.cycles[1].members, (std::vector<Division>{3}));
  EXPECT_TRUE(imp.cycles[1].staying);
}

TEST(Bttc, TwoDivisions) {
  EXPECT_EQ(run_bttc(Problem(PreferenceProfile({{1, 2}, {2, 1}}))).assignment,
            Assignment({1, 2}));
  EXPECT_EQ(run_bttc(Problem(PreferenceProfile({{2, 1}, {1, 2}}))).assignment,
            Assignment({2, 1}));
  // One member wants to trade, so the cycle trades.
  EXPECT_EQ(run_bttc(Problem(PreferenceProfile({{2, 1}, {2, 1}}))).assignment,
            Assignment({2, 1}));
}

TEST(Bttc, AlwaysABijectionAndStayersKeepTheirWorker) {
  std::mt19937_64 g(17);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 + trial % 8;
    const auto o = oracle::random_orders(n, g);
    const auto out = run_bttc_detailed(Problem(PreferenceProfile(o)));
    EXPECT_EQ(out.assignment.size(), n);
    for (const auto& c : out.cycles)
      for (std::size_t k = 0; k < c.members.size(); ++k) {
        const Division i = c.members[k];
        EXPECT_EQ(out.assignment[i], c.staying ? i : c.pointed[k]);
      }
  }
}

TEST(CeTtc, InitialDerangementRules) {
  EXPECT_EQ(initial_derangement(4, CyclicShift{}), Assignment({2, 3, 4, 1}));
  EXPECT_EQ(initial_derangement(3, ExplicitDerangement{Assignment({3, 1, 2})}),
            Assignment({3, 1, 2}));
  EXPECT_THROW(initial_derangement(3, ExplicitDerangement{Assignment({1, 3, 2})}), InvalidInput);
  EXPECT_THROW(initial_derangement(4, ExplicitDerangement{Assignment({3, 1, 2})}), InvalidInput);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto a = initial_derangement(7, SeededRandom{s});
    EXPECT_TRUE(is_derangement(a));
    EXPECT_EQ(a, initial_derangement(7, SeededRandom{s}));
  }
}

TEST(CeTtc, OutcomeIsCeEfficientForEveryStartAtFour) {
  const ProfileSpace space(4, SpaceKind::Canonical);
  const auto starts = all_derangements(4);
  for (std::uint64_t idx = 0; idx < space.size(); ++idx) {
    const auto prefs = space.profile_at(idx);
    const auto best = oracle::cee_set(prefs.orders());
    for (const auto& mu0 : starts) {
      const auto a = values(run_cettc(Problem(prefs), ExplicitDerangement{mu0}).assignment);
      EXPECT_NE(std::find(best.begin(), best.end(), a), best.end()) << idx << " " << mu0.str();
    }
  }
}

TEST(CeTtc, OutcomeIsCeEfficientOnRandomFullProfiles) {
  std::mt19937_64 g(19);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + trial % 4;
    const auto o = oracle::random_orders(n, g);
    const auto best = oracle::cee_set(o);
    const auto a = values(run_cettc(Problem(PreferenceProfile(o)), SeededRandom{static_cast<std::uint64_t>(trial)}).assignment);
    EXPECT_NE(std::find(best.begin(), best.end(), a), best.end());
  }
}

TEST(CeTtc, StartDecidesBetweenIncomparableDerangements) {
  // Division 1 ranks 2 over 3; divisions 2 and 3 both rank 1 first.
  const auto prefs = complete_partial_profile({{2, 3}, {1, 3}, {1, 2}});
  EXPECT_EQ(run_cettc(Problem(prefs)).assignment, Assignment({2, 3, 1}));
  EXPECT_EQ(run_cettc(Problem(prefs), ExplicitDerangement{Assignment({3, 1, 2})}).assignment,
            Assignment({3, 1, 2}));
}

TEST(CeTtc, IgnoresRankOfOwnWorker) {
  std::mt19937_64 g(23);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + trial % 5;
    const auto o = oracle::random_orders(n, g);
    auto moved = o;
    for (int i = 1; i <= n; ++i) {
      auto& row = moved[i - 1];
      row.erase(std::find(row.begin(), row.end(), i));
      row.push_back(i);
    }
    EXPECT_EQ(run_cettc(Problem(PreferenceProfile(o))).assignment,
              run_cettc(Problem(PreferenceProfile(moved))).assignment);
  }
}
