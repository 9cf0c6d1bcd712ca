#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "partbias/asymptote.hpp"
#include "partbias/counter.hpp"

namespace partbias {
namespace {

part_list range_list(std::int64_t lo, std::int64_t hi) {
  part_list out;
  for (auto v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

// Random disjoint (R, S) from [1, max_part] with gcd 1.
std::pair<part_list, part_list> random_rs(std::mt19937& rng, std::size_t max_size, std::int64_t max_part) {
  while (true) {
    auto pool = range_list(1, max_part);
    std::shuffle(pool.begin(), pool.end(), rng);
    const auto l = 1 + rng() % max_size, m = 1 + rng() % max_size;
    part_list r(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(l));
    part_list s(pool.begin() + static_cast<std::ptrdiff_t>(l), pool.begin() + static_cast<std::ptrdiff_t>(l + m));
    if (validate_system(r, s).theorem_applicable()) return {r, s};
  }
}

TEST(AsymptoticRatio, Corollaries) {
  EXPECT_EQ(asymptotic_ratio({1}, {2}), rational(2, 3));
  EXPECT_EQ(asymptotic_ratio({1, 2}, {3}), rational(9, 10));
  EXPECT_EQ(asymptotic_ratio({1}, {2, 3, 4}), rational(2, 5));
}

TEST(AsymptoticRatio, ClosedFamilies) {
  for (std::int64_t k = 2; k <= 12; ++k) {
    EXPECT_EQ(asymptotic_ratio({1}, range_list(2, k)), rational(2, k + 1)) << k;
    if (k >= 3) {
      EXPECT_EQ(asymptotic_ratio({1, 2}, range_list(3, k)), rational(6 * k, (k + 1) * (k + 2))) << k;
    }
  }
  // Single parts: s / (r + s); R = {1}: prod s / (s + 1).
  for (std::int64_t r = 1; r <= 9; ++r)
    for (std::int64_t s = 1; s <= 9; ++s)
      if (r != s && std::gcd(r, s) == 1) EXPECT_EQ(asymptotic_ratio({r}, {s}), rational(s, r + s));
  EXPECT_EQ(asymptotic_ratio({1}, {3, 5, 8}), rational(3 * 5 * 8, 4 * 6 * 9));
}

TEST(LeadingCoefficients, Examples) {
  EXPECT_EQ(leading_coefficient_total({2, 3, 6}, {10, 15}), rational(1, 5400));
  EXPECT_EQ(leading_coefficient_total({1}, {2}), rational(1, 2));
  EXPECT_EQ(leading_coefficient_greater({1}, {2}), rational(1, 3));
  EXPECT_EQ(leading_coefficient_greater({1, 2}, {3}), rational(3, 20));
  // Three-term sum, evaluated independently with Python fractions.
  EXPECT_EQ(leading_coefficient_greater({2, 3, 6}, {10, 15}), rational(2875, 16039296));
  EXPECT_EQ(asymptotic_ratio({2, 3, 6}, {10, 15}), rational(71875, 74256));
}

TEST(LeadingCoefficients, Errors) {
  auto code = [](auto&& call) {
    try {
      call();
    } catch (const error& e) {
      return e.code();
    }
    return errc::precondition_violated;
  };
  EXPECT_EQ(code([] { asymptotic_ratio({2}, {4}); }), errc::gcd_hypothesis_violated);
  EXPECT_EQ(code([] { leading_coefficient_total({1}, {1}); }), errc::disjointness_violation);
  EXPECT_EQ(code([] {
              leading_coefficient_greater_in_order(std::vector<std::int64_t>{3, 3},
                                                   std::vector<std::int64_t>{2});
            }),
            errc::degenerate_denominator);
}

TEST(AsymptoticReport, FactoredIdentityAndBounds) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    auto [r, s] = random_rs(rng, 4, 25);
    const auto report = asymptotic(validate_system(r, s));
    EXPECT_EQ(report.ratio_limit, report.lead_greater / report.lead_total);
    EXPECT_GE(report.ratio_limit, 0);
    EXPECT_LE(report.ratio_limit, 1);
    EXPECT_EQ(report.dimension, static_cast<std::int64_t>(r.size() + s.size()) - 1);
  }
}

TEST(AsymptoticReport, ComplementBound) {
  std::mt19937 rng(5);
  rational widest_gap = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto [r, s] = random_rs(rng, 3, 20);
    const rational both = asymptotic_ratio(r, s) + asymptotic_ratio(s, r);
    EXPECT_LE(both, 1);
    widest_gap = std::max(widest_gap, rational(1) - both);
  }
  // Density of the #R = #S class; reported, not asserted.
  std::cout << "largest equal-class density seen: " << to_string(widest_gap) << "\n";
}

TEST(AsymptoticRatio, InvariantUnderROrder) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto [r, s] = random_rs(rng, 4, 30);
    const auto reference = asymptotic_ratio(r, s);
    auto perm = r;
    std::sort(perm.begin(), perm.end());
    const auto total = leading_coefficient_total(r, s);
    do {
      EXPECT_EQ(leading_coefficient_greater_in_order(perm, s) / total, reference);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(AsymptoticRatio, IgnoresI) {
  const auto with_i = validate_system({1, 2}, {3}, {4, 7});
  EXPECT_EQ(asymptotic_ratio(with_i), rational(9, 10));
}

TEST(AsymptoticRatio, FiniteRatiosApproachTheLimit) {
  // Lower-order terms are periodic in n, so compare the worst gap over a
  // window starting at each point of a doubling grid.
  constexpr std::uint64_t window = 64;
  for (auto [r, s] : std::vector<std::pair<part_list, part_list>>{
           {{1}, {2}}, {{1, 2}, {3}}, {{2}, {3}}, {{1}, {2, 3}}, {{3}, {1, 4}}}) {
    const auto sys = validate_system(r, s);
    const auto limit = asymptotic_ratio(sys);
    const auto table = count_bias_table(sys, 2000 + window);
    double previous = 1.0;
    for (std::uint64_t start : {250, 500, 1000, 2000}) {
      double worst = 0.0;
      for (auto n = start; n < start + window; ++n)
        worst = std::max(worst, std::abs(to_double(*bias_ratio(table[n]) - limit)));
      EXPECT_LT(worst, previous) << "n=" << start;
      previous = worst;
    }
  }
}

TEST(DominanceScan, ReportsCandidatesOnly) {
  const auto single = dominance_scan(1, 12);
  EXPECT_GT(single.systems_checked, 0u);
  EXPECT_TRUE(single.candidates.empty());  // s / (r + s) > 1/2 whenever r < s

  const auto pairs = dominance_scan(2, 10);
  EXPECT_GT(pairs.systems_checked, 0u);
  for (const auto& c : pairs.candidates) EXPECT_LE(c.ratio, rational(1, 2));
  std::cout << "l=m=2, parts <= 10: " << pairs.systems_checked << " systems, "
            << pairs.candidates.size() << " with limit <= 1/2\n";
}

}  // namespace
}  // namespace partbias
