#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "partbias/core.hpp"
#include "partbias/error.hpp"
#include "partbias/rational.hpp"

namespace partbias {

/// Partitions of n with parts in R, S, I split by the sign of #R - #S.
struct bias_count {
  std::uint64_t n = 0;
  big_int total = 0;
  big_int greater = 0;
  big_int less = 0;
  big_int equal = 0;

  friend bool operator==(const bias_count& a, const bias_count& b) {
    return a.n == b.n && a.total == b.total && a.greater == b.greater &&
           a.less == b.less && a.equal == b.equal;
  }
};

struct counter_options {
  /// Upper bound on (amount, difference) cells held by the DP table.
  std::uint64_t state_budget = 20'000'000;
};

/// Number of multisets over `parts` summing to n; the empty partition counts.
inline big_int count_restricted(std::span<const std::int64_t> parts, std::uint64_t n) {
  if (parts.empty()) fail(errc::precondition_violated, "part set is empty");
  std::vector<big_int> ways(n + 1, 0);
  ways[0] = 1;
  for (auto p : parts) {
    if (p < 1) fail(errc::non_positive_part, "part " + std::to_string(p) + " is not positive");
    const auto step = static_cast<std::uint64_t>(p);
    for (std::uint64_t a = step; a <= n; ++a) ways[a] += ways[a - step];
  }
  return ways[n];
}

namespace detail {

inline bool accumulate(std::uint64_t& acc, std::uint64_t v) noexcept {
  return !__builtin_add_overflow(acc, v, &acc);
}
inline bool accumulate(big_int& acc, const big_int& v) {
  acc += v;
  return true;
}

// Row a of the table holds differences #R - #S in [-a/min S, a/min R].
struct diff_layout {
  std::int64_t min_r = 1;
  std::int64_t min_s = 1;
  std::vector<std::uint64_t> offset;  // offset[a] = flat index of difference lo(a)

  diff_layout(std::int64_t mr, std::int64_t ms, std::uint64_t n_max) : min_r(mr), min_s(ms) {
    offset.resize(n_max + 2);
    offset[0] = 0;
    for (std::uint64_t a = 0; a <= n_max; ++a) offset[a + 1] = offset[a] + width(a);
  }

  std::int64_t lo(std::uint64_t a) const { return -static_cast<std::int64_t>(a) / min_s; }
  std::int64_t hi(std::uint64_t a) const { return static_cast<std::int64_t>(a) / min_r; }
  std::uint64_t width(std::uint64_t a) const { return static_cast<std::uint64_t>(hi(a) - lo(a) + 1); }
  std::uint64_t cells() const { return offset.back(); }
  std::uint64_t index(std::uint64_t a, std::int64_t d) const {
    return offset[a] + static_cast<std::uint64_t>(d - lo(a));
  }

  static std::uint64_t cell_count(std::int64_t mr, std::int64_t ms, std::uint64_t n_max) {
    std::uint64_t total = 0;
    for (std::uint64_t a = 0; a <= n_max; ++a) {
      total += static_cast<std::uint64_t>(static_cast<std::int64_t>(a) / mr +
                                          static_cast<std::int64_t>(a) / ms + 1);
    }
    return total;
  }
};

// Unbounded knapsack over R and S on the (amount, difference) grid, then I
// folded in on the three class arrays.  Returns nullopt when Count overflows.
template <class Count>
std::optional<std::vector<bias_count>> bias_dp(const part_system& sys, std::uint64_t n_max) {
  const diff_layout layout(sys.r().front(), sys.s().front(), n_max);
  std::vector<Count> cell(layout.cells(), Count(0));
  cell[layout.index(0, 0)] = 1;

  auto sweep = [&](std::int64_t part, std::int64_t sign) {
    const auto step = static_cast<std::uint64_t>(part);
    for (std::uint64_t a = step; a <= n_max; ++a) {
      const std::uint64_t src = a - step;
      for (std::int64_t d = layout.lo(src); d <= layout.hi(src); ++d) {
        const Count& from = cell[layout.index(src, d)];
        if (from == 0) continue;
        if (!accumulate(cell[layout.index(a, d + sign)], from)) return false;
      }
    }
    return true;
  };
  for (auto p : sys.r())
    if (!sweep(p, +1)) return std::nullopt;
  for (auto p : sys.s())
    if (!sweep(p, -1)) return std::nullopt;

  std::vector<Count> greater(n_max + 1, Count(0)), less(n_max + 1, Count(0)),
      equal(n_max + 1, Count(0));
  for (std::uint64_t a = 0; a <= n_max; ++a) {
    for (std::int64_t d = layout.lo(a); d <= layout.hi(a); ++d) {
      const Count& c = cell[layout.index(a, d)];
      auto& bucket = d > 0 ? greater[a] : (d < 0 ? less[a] : equal[a]);
      if (!accumulate(bucket, c)) return std::nullopt;
    }
  }
  cell.clear();
  cell.shrink_to_fit();

  for (auto p : sys.i()) {
    const auto step = static_cast<std::uint64_t>(p);
    for (std::uint64_t a = step; a <= n_max; ++a) {
      if (!accumulate(greater[a], greater[a - step]) || !accumulate(less[a], less[a - step]) ||
          !accumulate(equal[a], equal[a - step]))
        return std::nullopt;
    }
  }

  std::vector<bias_count> out(n_max + 1);
  for (std::uint64_t a = 0; a <= n_max; ++a) {
    auto& row = out[a];
    row.n = a;
    row.greater = big_int(greater[a]);
    row.less = big_int(less[a]);
    row.equal = big_int(equal[a]);
    row.total = row.greater + row.less + row.equal;
  }
  return out;
}

}  // namespace detail

/// Bias counts for every n in [0, n_max], one DP pass.
inline std::vector<bias_count> count_bias_table(const part_system& sys, std::uint64_t n_max,
                                                const counter_options& options = {}) {
  const auto cells = detail::diff_layout::cell_count(sys.r().front(), sys.s().front(), n_max);
  if (cells > options.state_budget) {
    fail(errc::budget_exceeded, "DP needs " + std::to_string(cells) + " cells, budget is " +
                                    std::to_string(options.state_budget));
  }
  if (auto fast = detail::bias_dp<std::uint64_t>(sys, n_max)) return std::move(*fast);
  return *detail::bias_dp<big_int>(sys, n_max);
}

inline bias_count count_bias(const part_system& sys, std::uint64_t n,
                             const counter_options& options = {}) {
  return count_bias_table(sys, n, options).back();
}

/// greater / total, or nullopt when no partition exists.
inline std::optional<rational> bias_ratio(const bias_count& c) {
  if (c.total == 0) return std::nullopt;
  return rational(c.greater, c.total);
}

struct ratio_entry {
  std::uint64_t n = 0;
  std::optional<rational> ratio;
};

inline std::vector<ratio_entry> ratio_table(const part_system& sys,
                                            std::span<const std::uint64_t> n_values,
                                            const counter_options& options = {}) {
  if (n_values.empty()) return {};
  const auto n_max = *std::max_element(n_values.begin(), n_values.end());
  const auto table = count_bias_table(sys, n_max, options);
  std::vector<ratio_entry> out;
  out.reserve(n_values.size());
  for (auto n : n_values) out.push_back({n, bias_ratio(table[n])});
  return out;
}

/*
 * Exhaustive enumeration of multiplicity vectors (R parts, then S, then I,
 * each multiplicity running upward from zero).  Deliberately shares nothing
 * with the DP above.  Every recursive call counts as one node.
 */
inline bias_count brute_force_oracle(const part_system& sys, std::uint64_t n,
                                     std::uint64_t node_budget = 10'000'000) {
  struct slot {
    std::int64_t value;
    int sign;
  };
  std::vector<slot> slots;
  for (auto p : sys.r()) slots.push_back({p, +1});
  for (auto p : sys.s()) slots.push_back({p, -1});
  for (auto p : sys.i()) slots.push_back({p, 0});

  std::uint64_t nodes = 0, greater = 0, less = 0, equal = 0;
  std::function<void(std::size_t, std::int64_t, std::int64_t)> visit =
      [&](std::size_t at, std::int64_t remaining, std::int64_t balance) {
        if (++nodes > node_budget) {
          fail(errc::budget_exceeded, "oracle exceeded " + std::to_string(node_budget) + " nodes");
        }
        if (at == slots.size()) {
          if (remaining != 0) return;
          if (balance > 0) ++greater;
          else if (balance < 0) ++less;
          else ++equal;
          return;
        }
        const auto [value, sign] = slots[at];
        for (std::int64_t mult = 0; mult * value <= remaining; ++mult) {
          visit(at + 1, remaining - mult * value, balance + sign * mult);
        }
      };
  visit(0, static_cast<std::int64_t>(n), 0);

  bias_count out;
  out.n = n;
  out.greater = greater;
  out.less = less;
  out.equal = equal;
  out.total = big_int(greater) + less + equal;
  return out;
}

}  // namespace partbias
