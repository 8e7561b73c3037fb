#include "pellpow2/search.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

namespace pellpow2 {
namespace {

std::set<SolutionTuple> full_range_set() {
  return {
      {1, 0, 0, 0}, {1, 1, 0, 1}, {2, 0, 0, 1}, {2, 1, 1, 2}, {2, 2, 0, 2},
      {3, 2, 1, 3}, {4, 2, 2, 4}, {5, 2, 1, 5}, {6, 5, 5, 7},
  };
}

TEST(IsPowerOfTwo, Examples) {
  EXPECT_EQ(is_power_of_two(32), 5u);
  EXPECT_EQ(is_power_of_two(1), 0u);
  EXPECT_EQ(is_power_of_two(12), std::nullopt);
  EXPECT_EQ(is_power_of_two(mpz_class(1) << 100), 100u);
  EXPECT_EQ(is_power_of_two((mpz_class(1) << 100) + 1), std::nullopt);
  EXPECT_THROW(is_power_of_two(0), std::domain_error);
  EXPECT_THROW(is_power_of_two(-4), std::domain_error);
}

TEST(VerifySolution, Examples) {
  EXPECT_TRUE(verify_solution({6, 5, 5, 7}));   // 70 + 29 + 29 = 128
  EXPECT_TRUE(verify_solution({5, 2, 1, 5}));   // 29 + 2 + 1 = 32
  EXPECT_TRUE(verify_solution({2, 1, 1, 2}));   // 2 + 1 + 1 = 4
  EXPECT_FALSE(verify_solution({4, 3, 2, 4}));  // 12 + 5 + 2 = 19
  EXPECT_FALSE(verify_solution({1, 2, 0, 1}));  // ordering violated
  EXPECT_FALSE(verify_solution({2, 1, -1, 2}));
  EXPECT_FALSE(verify_solution({6, 5, 5, 8}));
}

TEST(BruteForce, SmallRanges) {
  EXPECT_TRUE(brute_force(0).empty());
  std::set<SolutionTuple> one = {{1, 0, 0, 0}, {1, 1, 0, 1}};
  EXPECT_EQ(brute_force(1), one);
  std::set<SolutionTuple> three = {{1, 0, 0, 0}, {1, 1, 0, 1}, {2, 0, 0, 1},
                                   {2, 1, 1, 2}, {2, 2, 0, 2}, {3, 2, 1, 3}};
  EXPECT_EQ(brute_force(3), three);
  EXPECT_THROW(brute_force(-1), std::domain_error);
}

TEST(BruteForce, FullRange) {
  auto found = brute_force(150);
  EXPECT_EQ(found, full_range_set());
  for (const auto& t : found) EXPECT_TRUE(verify_solution(t)) << to_string(t);
}

TEST(BruteForce, MonotoneInRange) {
  auto full = brute_force(150);
  for (long k : {0L, 1L, 2L, 3L, 4L, 6L, 10L, 40L}) {
    auto sub = brute_force(k);
    EXPECT_TRUE(std::includes(full.begin(), full.end(), sub.begin(), sub.end()));
    std::set<SolutionTuple> filtered;
    for (const auto& t : full)
      if (t.n <= k) filtered.insert(t);
    EXPECT_EQ(sub, filtered) << "n_max = " << k;
  }
}

TEST(CaseEllZero, MatchesBruteForceSubset) {
  auto structural = case_ell_zero();
  std::set<SolutionTuple> expected = {
      {1, 0, 0, 0}, {1, 1, 0, 1}, {2, 0, 0, 1}, {2, 2, 0, 2}};
  EXPECT_EQ(structural.solutions, expected);

  std::set<SolutionTuple> ell_zero_subset;
  for (const auto& t : brute_force(150))
    if (t.ell == 0) ell_zero_subset.insert(t);
  EXPECT_EQ(structural.solutions, ell_zero_subset);

  for (const auto& t : structural.solutions) EXPECT_TRUE(verify_solution(t));
  EXPECT_FALSE(structural.notes.empty());
  bool mentions_parity = false;
  for (const auto& note : structural.notes)
    mentions_parity = mentions_parity || note.find("parity") != std::string::npos;
  EXPECT_TRUE(mentions_parity);
}

TEST(Search, TriplePellNeverPowerOfTwo) {
  for (long n = 1; n <= 150; ++n)
    EXPECT_EQ(is_power_of_two(3 * pell(n)), std::nullopt) << "n = " << n;
}

}  // namespace
}  // namespace pellpow2
