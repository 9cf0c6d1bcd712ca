#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "partbias/core.hpp"
#include "partbias/error.hpp"
#include "partbias/rational.hpp"

namespace partbias {

/// Closed-form limit of p_{R>S,I}(n) / p_{RSI}(n) and its two constituents.
struct asymptotic_report {
  rational ratio_limit;
  rational lead_total;    // p_{RS}(n) ~ lead_total * n^d / d!
  rational lead_greater;  // p_{R>S}(n) ~ lead_greater * n^d / d!
  std::int64_t dimension = 0;  // d = l + m - 1
};

namespace detail {

inline void require_theorem(const part_system& sys) {
  if (!sys.theorem_applicable()) {
    fail(errc::gcd_hypothesis_violated,
         "gcd of R and S is " + std::to_string(sys.gcd_all()) + ", the limit formula needs 1");
  }
}

}  // namespace detail

/*
 * sum_i (-1)^{i-1} / [r_i prod_{j>i}(r_j - r_i) prod_{t<i}(r_i - r_t) prod_k(s_k + r_i)]
 * evaluated in the order given.  The value does not depend on that order,
 * since each term equals 1 / [r_i prod_{j != i}(r_j - r_i) prod_k(s_k + r_i)].
 */
inline rational leading_coefficient_greater_in_order(std::span<const std::int64_t> r,
                                                     std::span<const std::int64_t> s) {
  rational sum = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    big_int den = r[i];
    for (std::size_t j = i + 1; j < r.size(); ++j) den *= r[j] - r[i];
    for (std::size_t t = 0; t < i; ++t) den *= r[i] - r[t];
    for (auto sk : s) den *= sk + r[i];
    if (den == 0) fail(errc::degenerate_denominator, "repeated or cancelling part in R/S");
    const rational term = reciprocal(den);
    if (i % 2 == 0) sum += term;
    else sum -= term;
  }
  return sum;
}

inline rational leading_coefficient_total(const part_system& sys) {
  detail::require_theorem(sys);
  big_int den = 1;
  for (auto v : sys.r()) den *= v;
  for (auto v : sys.s()) den *= v;
  return reciprocal(den);
}

inline rational leading_coefficient_greater(const part_system& sys) {
  detail::require_theorem(sys);
  return leading_coefficient_greater_in_order(sys.r(), sys.s());
}

/// I is accepted and ignored: a finite I does not move the limit.
inline asymptotic_report asymptotic(const part_system& sys) {
  asymptotic_report out;
  out.lead_total = leading_coefficient_total(sys);
  out.lead_greater = leading_coefficient_greater(sys);
  out.ratio_limit = out.lead_greater / out.lead_total;
  out.dimension = static_cast<std::int64_t>(sys.r().size() + sys.s().size()) - 1;
  return out;
}

inline rational asymptotic_ratio(const part_system& sys) { return asymptotic(sys).ratio_limit; }

inline rational asymptotic_ratio(part_list r, part_list s) {
  return asymptotic_ratio(validate_system(std::move(r), std::move(s)));
}
inline rational leading_coefficient_total(part_list r, part_list s) {
  return leading_coefficient_total(validate_system(std::move(r), std::move(s)));
}
inline rational leading_coefficient_greater(part_list r, part_list s) {
  return leading_coefficient_greater(validate_system(std::move(r), std::move(s)));
}

struct dominance_candidate {
  part_list r;
  part_list s;
  rational ratio;
};

struct dominance_scan_result {
  std::uint64_t systems_checked = 0;
  std::vector<dominance_candidate> candidates;  // ratio <= 1/2
};

/*
 * Scans all systems with |R| = |S| = size, parts in [1, max_part],
 * r_i < s_i after sorting both, gcd 1, and reports those whose limit is not
 * above one half.  Reports only; an empty list proves nothing beyond the range.
 */
inline dominance_scan_result dominance_scan(std::size_t size, std::int64_t max_part) {
  dominance_scan_result out;
  if (size == 0) return out;
  const auto pool = static_cast<std::size_t>(std::max<std::int64_t>(max_part, 0));
  std::vector<std::int64_t> chosen;
  std::vector<int> side(2 * size);  // 0 -> R, 1 -> S

  auto classify = [&] {
    part_list r, s;
    for (std::size_t k = 0; k < chosen.size(); ++k) (side[k] ? s : r).push_back(chosen[k]);
    for (std::size_t k = 0; k < size; ++k)
      if (r[k] >= s[k]) return;
    auto sys = validate_system(r, s);
    if (!sys.theorem_applicable()) return;
    ++out.systems_checked;
    auto ratio = asymptotic_ratio(sys);
    if (ratio <= rational(1, 2)) out.candidates.push_back({r, s, ratio});
  };

  // Ascending choice of 2*size values, then every balanced R/S labelling.
  std::function<void(std::int64_t)> choose = [&](std::int64_t next) {
    if (chosen.size() == 2 * size) {
      std::vector<int> labels(2 * size, 0);
      std::fill(labels.begin() + static_cast<std::ptrdiff_t>(size), labels.end(), 1);
      do {
        side = labels;
        classify();
      } while (std::next_permutation(labels.begin(), labels.end()));
      return;
    }
    for (std::int64_t v = next; v <= static_cast<std::int64_t>(pool); ++v) {
      chosen.push_back(v);
      choose(v + 1);
      chosen.pop_back();
    }
  };
  choose(1);
  return out;
}

}  // namespace partbias
