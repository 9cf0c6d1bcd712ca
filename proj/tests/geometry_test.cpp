#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "partbias/asymptote.hpp"
#include "partbias/counter.hpp"
#include "partbias/geometry.hpp"

namespace partbias {
namespace {

const lattice_basis& reference_basis() {
  static const auto basis = lattice_basis::from_rows(
      {2, 3, 6, 10, 15}, {{1, -4, 0, 1, 0}, {0, 1, -3, 0, 1}, {0, 0, 5, -3, 0}, {0, 0, 0, 3, -2}});
  return basis;
}
const int_vector reference_anchor{-1, 1, 0, 0, 0};

rational inv(std::int64_t den) { return rational(1, den); }

// Distinct entries from [1, 30] split into A and B with |A| + |B| <= 7.
vform random_form(std::mt19937& rng) {
  std::vector<std::int64_t> pool(30);
  for (int k = 0; k < 30; ++k) pool[k] = k + 1;
  std::shuffle(pool.begin(), pool.end(), rng);
  const auto total = 1 + rng() % 7;
  const auto na = rng() % (total + 1);
  vform f;
  f.a.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(na));
  f.b.assign(pool.begin() + static_cast<std::ptrdiff_t>(na), pool.begin() + static_cast<std::ptrdiff_t>(total));
  std::sort(f.b.begin(), f.b.end());
  return f;
}

TEST(LatticeBasis, Examples) {
  const auto basis = make_lattice_basis(int_vector{2, 3, 6, 10, 15});
  basis.check();
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(basis.rows[i][i], (int_vector{1, 1, 5, 3})[i]);
  reference_basis().check();

  EXPECT_EQ(make_lattice_basis(int_vector{1, 1}).rows, (std::vector<int_vector>{{1, -1}}));
  EXPECT_EQ(make_lattice_basis(int_vector{2, 4}).rows, (std::vector<int_vector>{{2, -1}}));
}

TEST(LatticeBasis, RejectsInvalidRows) {
  EXPECT_THROW(lattice_basis::from_rows({2, 4}, {{1, -1}}), error);
  EXPECT_THROW(lattice_basis::from_rows({1, 1, 1}, {{1, -1, 0}, {1, 0, -1}}), error);
}

TEST(LatticeBasis, RandomVectorsSatisfyInvariants) {
  std::mt19937 rng(314);
  for (int trial = 0; trial < 100; ++trial) {
    int_vector e(2 + rng() % 5);
    for (auto& v : e) v = 1 + static_cast<std::int64_t>(rng() % 50);
    const auto basis = make_lattice_basis(e);
    EXPECT_NO_THROW(basis.check());
    const auto x = bezout_vector(e);
    std::int64_t dot = 0, g = 0;
    for (std::size_t j = 0; j < e.size(); ++j) {
      dot += x[j] * e[j];
      g = std::gcd(g, e[j]);
    }
    EXPECT_EQ(dot, g);
  }
}

TEST(Bijection, RunningExamplePoint) {
  const auto sys = validate_system({2, 3, 6}, {10, 15});
  const int_vector mult{5, 0, 0, 0, 0};
  EXPECT_EQ(partition_to_k(sys, reference_basis(), reference_anchor, 10, mult), (int_vector{15, 50, 30, 25}));
  EXPECT_EQ(k_to_partition(reference_basis(), reference_anchor, 10, int_vector{15, 50, 30, 25}), mult);
  EXPECT_THROW(partition_to_k(sys, reference_basis(), reference_anchor, 11, mult), error);
}

TEST(Bijection, RoundTripsEveryPartition) {
  const auto sys = validate_system({2, 3, 6}, {10, 15});
  const auto generated = make_lattice_basis(sys.rs());
  const auto generated_anchor = bezout_vector(sys.rs());
  for (std::int64_t n = 0; n <= 30; ++n) {
    // Every multiplicity vector of n.
    for (std::int64_t c1 = 0; 2 * c1 <= n; ++c1)
      for (std::int64_t c2 = 0; 2 * c1 + 3 * c2 <= n; ++c2)
        for (std::int64_t c3 = 0; 2 * c1 + 3 * c2 + 6 * c3 <= n; ++c3)
          for (std::int64_t f1 = 0; 2 * c1 + 3 * c2 + 6 * c3 + 10 * f1 <= n; ++f1) {
            const auto rest = n - (2 * c1 + 3 * c2 + 6 * c3 + 10 * f1);
            if (rest % 15) continue;
            const int_vector mult{c1, c2, c3, f1, rest / 15};
            for (const auto* basis : {&reference_basis(), &generated}) {
              const auto& anchor = basis == &generated ? generated_anchor : reference_anchor;
              const auto k = partition_to_k(sys, *basis, anchor, n, mult);
              EXPECT_EQ(k_to_partition(*basis, anchor, n, k), mult);
            }
          }
  }
}

TEST(Bijection, KSpaceCountMatchesCounter) {
  const auto sys = validate_system({2, 3, 6}, {10, 15});
  const auto generated = make_lattice_basis(sys.rs());
  const auto anchor = bezout_vector(sys.rs());
  for (std::int64_t n = 0; n <= 60; ++n) {
    const auto expected = count_restricted(sys.rs(), static_cast<std::uint64_t>(n));
    EXPECT_EQ(big_int(count_k_space(sys, reference_basis(), reference_anchor, n)), expected) << n;
    EXPECT_EQ(big_int(count_k_space(sys, generated, anchor, n)), expected) << n;
  }
}

TEST(VForm, WorkedExample) {
  const vform form{{2, 3}, {6, 10}};
  const auto expected = rational(1, 24 * 4 * 6 * 8 * 9) - rational(1, 24 * 4 * 10 * 12 * 13);
  EXPECT_EQ(vform_volume(form), expected);
  EXPECT_EQ(vform_closed_form(form), expected);
  EXPECT_EQ(expected, rational(47, 2695680));
  EXPECT_EQ(vform_shift(form).a, (int_vector{4}));
  EXPECT_EQ(vform_shift(form).b, (int_vector{6, 8, 9}));
}

TEST(VForm, BaseCaseAndSmallCases) {
  EXPECT_EQ(vform_volume({{3, 5, 8}, {}}), 0);
  EXPECT_EQ(vform_closed_form({{3, 5, 8}, {}}), 0);
  // u1 + 2 u2 <= 1, u1 < u2: triangle (0,0), (0,1/2), (1/3,1/3).
  EXPECT_EQ(vform_volume({{1}, {2}}), inv(12));
  EXPECT_EQ(vform_closed_form({{1}, {2}}), inv(12));
}

TEST(VForm, NegativeEntriesShiftToPositive) {
  const vform form{{-9, -5}, {17, 18}};
  const auto shifted = vform_shift(form);
  EXPECT_EQ(shifted.a, (int_vector{1}));
  EXPECT_EQ(shifted.b, (int_vector{17, 8, 12}));
  EXPECT_EQ(vform_closed_form(form), vform_closed_form(shifted));
  EXPECT_EQ(vform_volume(form), vform_volume(shifted));
}

TEST(VForm, DegenerateDenominator) {
  try {
    vform_volume({{-6}, {6}});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::degenerate_denominator);
  }
  EXPECT_THROW(vform_closed_form({{1}, {4, 4}}), error);
}

TEST(ComplementIdentity, Examples) {
  auto t = complement_identity_check({2, 3}, {6, 10});
  EXPECT_EQ(t.v_ab + t.v_ba, inv(24 * 2 * 3 * 6 * 10));
  EXPECT_EQ(t.simplex, inv(8640));

  t = complement_identity_check({1}, {2});
  EXPECT_EQ(t.v_ab, inv(12));
  EXPECT_EQ(t.v_ba, inv(6));
  EXPECT_EQ(t.simplex, inv(4));

  t = complement_identity_check({4}, {6, 8, 9});
  EXPECT_EQ(t.v_ab + t.v_ba, inv(24 * 4 * 6 * 8 * 9));
  EXPECT_THROW(complement_identity_check({-1}, {2}), error);
}

TEST(VForm, RandomIdentities) {
  std::mt19937 rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    const auto form = random_form(rng);
    const auto v = vform_volume(form);
    EXPECT_EQ(v, vform_closed_form(form));
    const auto t = complement_identity_check(form.a, form.b);
    EXPECT_EQ(t.v_ab + t.v_ba, t.simplex);
    EXPECT_GE(v, 0);
    EXPECT_LE(v, t.simplex);

    auto a = form.a, b = form.b;
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    EXPECT_EQ(vform_volume({a, b}), v);
  }
}

TEST(BiasVolume, SinglePartPair) {
  // u in (1/3, 1].
  EXPECT_EQ(bias_volume({1}, {2}), rational(2, 3));
  const auto sys = validate_system({1}, {2});
  EXPECT_EQ(bias_volume(sys) / 2 * factorial(1) * 1 * 2, rational(2, 3));
}

TEST(BiasVolume, RunningExampleDecomposition) {
  const auto sys = validate_system({2, 3, 6}, {10, 15});
  EXPECT_EQ(bias_volume(sys), bias_volume_closed_form(sys));
}

TEST(BiasVolume, MatchesLimitFormula) {
  std::mt19937 rng(161);
  int checked = 0;
  while (checked < 100) {
    std::vector<std::int64_t> pool(20);
    for (int k = 0; k < 20; ++k) pool[k] = k + 1;
    std::shuffle(pool.begin(), pool.end(), rng);
    const auto l = 1 + rng() % 3, m = 1 + rng() % 3;
    const auto sys = validate_system(part_list(pool.begin(), pool.begin() + l),
                                     part_list(pool.begin() + l, pool.begin() + l + m));
    if (!sys.theorem_applicable()) continue;
    ++checked;
    const auto volume = bias_volume(sys);
    EXPECT_EQ(volume, bias_volume_closed_form(sys));
    const auto d = sys.r().size() + sys.s().size() - 1;
    rational scaled = volume / sys.s().back() * factorial(d);
    for (auto v : sys.rs()) scaled *= v;
    EXPECT_EQ(scaled, asymptotic_ratio(sys));
  }
}

TEST(Ehrhart, Examples) {
  auto e = ehrhart_estimate(validate_system({1}, {2}), 4);
  EXPECT_EQ(e.count, 3);
  EXPECT_EQ(e.estimate, rational(3, 4));
  EXPECT_EQ(ehrhart_estimate(validate_system({2, 3, 6}, {10, 15}), 10).count, 4);

  e = ehrhart_estimate(validate_system({1}, {2}), 3000);
  EXPECT_NEAR(to_double(e.estimate * factorial(1)) / 0.5, 1.0, 0.02);
  EXPECT_THROW(ehrhart_estimate(validate_system({1}, {2}), 0), error);
  EXPECT_THROW(ehrhart_estimate(validate_system({1, 2, 3}, {4, 5}), 500, 1000), error);
}

TEST(Ehrhart, CountEqualsRestrictedPartitions) {
  const auto sys = validate_system({2, 3}, {5, 7});
  for (std::int64_t t = 1; t <= 80; ++t)
    EXPECT_EQ(ehrhart_estimate(sys, t).count, count_restricted(sys.rs(), static_cast<std::uint64_t>(t)));
}

}  // namespace
}  // namespace partbias
