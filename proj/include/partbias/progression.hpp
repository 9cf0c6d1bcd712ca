#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "partbias/core.hpp"
#include "partbias/counter.hpp"
#include "partbias/error.hpp"
#include "partbias/rational.hpp"

namespace partbias {

/*
 * R_N = {r, r+m, ..., r+m(N-1)}, S_N likewise from s, and I_N the rest of
 * [1, max(r,s) + m(N-1)].  Requires r, s not congruent mod m and
 * gcd(r, s, m) = 1.
 */
struct progression_spec {
  std::int64_t r = 1;
  std::int64_t s = 2;
  std::int64_t m = 2;
  std::int64_t count = 1;  // N

  void check() const {
    auto bad = [&](const std::string& why) {
      fail(errc::invalid_progression, "(r,s,m,N)=(" + std::to_string(r) + "," + std::to_string(s) +
                                          "," + std::to_string(m) + "," + std::to_string(count) +
                                          "): " + why);
    };
    if (r < 1 || s < 1) bad("r and s must be positive");
    if (m < 2) bad("m must be at least 2");
    if (count < 1) bad("N must be positive");
    if (r % m == s % m) bad("r and s are congruent mod m");
    if (std::gcd(std::gcd(r, s), m) != 1) bad("gcd(r, s, m) is not 1");
  }
};

inline part_system build_sets(const progression_spec& spec) {
  spec.check();
  part_list r, s, rest;
  for (std::int64_t j = 0; j < spec.count; ++j) {
    r.push_back(spec.r + spec.m * j);
    s.push_back(spec.s + spec.m * j);
  }
  const std::int64_t top = std::max(spec.r, spec.s) + spec.m * (spec.count - 1);
  for (std::int64_t v = 1; v <= top; ++v) {
    if (!std::binary_search(r.begin(), r.end(), v) && !std::binary_search(s.begin(), s.end(), v))
      rest.push_back(v);
  }
  return validate_system(std::move(r), std::move(s), std::move(rest));
}

/*
 * lim_n C_{n,N} = C (r/m + N - 1)_N (s/m + N - 1)_N, with
 * C = sum_{i=1..N} (-1)^{i-1} / [(N-i)! (i-1)! ((s+r)/m + N + i - 2)_N (r/m + i - 1)].
 */
inline rational c_limit_exact(const progression_spec& spec) {
  spec.check();
  const std::int64_t n_terms = spec.count;
  const rational x(spec.r, spec.m);
  const rational y(spec.s, spec.m);
  const rational xy(spec.r + spec.s, spec.m);
  const auto count = static_cast<std::uint64_t>(n_terms);

  rational c = 0;
  for (std::int64_t i = 1; i <= n_terms; ++i) {
    const rational den = rational(factorial(static_cast<std::uint64_t>(n_terms - i)) *
                                  factorial(static_cast<std::uint64_t>(i - 1))) *
                         falling_product(xy + (n_terms + i - 2), count) * (x + (i - 1));
    if (i % 2 == 1) c += 1 / den;
    else c -= 1 / den;
  }
  return c * falling_product(x + (n_terms - 1), count) * falling_product(y + (n_terms - 1), count);
}

namespace detail {

inline void check_beta_args(std::int64_t r, std::int64_t m, std::int64_t count) {
  if (r < 1 || m < 2 || count < 1) fail(errc::invalid_progression, "need r >= 1, m >= 2, N >= 1");
  if (r % m == 0) fail(errc::invalid_progression, "r must not be divisible by m");
  if (std::gcd(r, m) != 1) fail(errc::invalid_progression, "gcd(r, m) must be 1");
}

}  // namespace detail

/// The s = m case: C = B(r/m, 2N) / (N! (N-1)!), B evaluated as a rational.
inline rational c_limit_beta(std::int64_t r, std::int64_t m, std::int64_t count) {
  detail::check_beta_args(r, m, count);
  const auto n = static_cast<std::uint64_t>(count);
  const rational x(r, m);
  // B(x, 2N) = (2N-1)! / prod_{j=0}^{2N-1} (x + j); written over m^{2N}.
  big_int rising = 1;
  big_int scale = 1;
  for (std::uint64_t j = 0; j < 2 * n; ++j) {
    rising *= r + static_cast<std::int64_t>(j) * m;
    scale *= m;
  }
  const rational beta = rational(factorial(2 * n - 1) * scale, rising);
  const rational c = beta / rational(factorial(n) * factorial(n - 1));
  return c * falling_product(x + (count - 1), n) * rational(factorial(n));
}

/// Gamma(r/m + N) Gamma(2N) / (Gamma(N) Gamma(r/m + 2N)) through log-Gamma.
inline double gamma_form(std::int64_t r, std::int64_t m, std::int64_t count) {
  detail::check_beta_args(r, m, count);
  const double x = static_cast<double>(r) / static_cast<double>(m);
  const double n = static_cast<double>(count);
  return std::exp(std::lgamma(x + n) + std::lgamma(2 * n) - std::lgamma(n) - std::lgamma(x + 2 * n));
}

struct quadrature_options {
  double tolerance = 1e-10;
  unsigned max_depth = 15;
};

/*
 * Prefactor times the double integral
 *   int_0^1 x^{s/m-1} (1-x)^{N-1} int_0^x t^{r/m-1} (1-t)^{N-1} dt dx,
 * after t = v^m and x = w^m, which turns both integrands into polynomials:
 *   int_0^1 m w^{s-1} (1-w^m)^{N-1} int_0^w m v^{r-1} (1-v^m)^{N-1} dv dw.
 */
inline double c_limit_quadrature(const progression_spec& spec, const quadrature_options& options = {}) {
  spec.check();
  if (spec.count > 12) fail(errc::precondition_violated, "quadrature is limited to N <= 12");
  using boost::math::quadrature::gauss_kronrod;
  const double m = static_cast<double>(spec.m);
  const int power = static_cast<int>(spec.count - 1);

  double worst = 0.0;
  auto inner = [&](double w) {
    if (w <= 0.0) return 0.0;
    auto f = [&](double v) {
      return m * std::pow(v, static_cast<double>(spec.r - 1)) * std::pow(1.0 - std::pow(v, m), power);
    };
    double err = 0.0, l1 = 0.0;
    const double value = gauss_kronrod<double, 31>::integrate(f, 0.0, w, options.max_depth,
                                                              options.tolerance, &err, &l1);
    worst = std::max(worst, l1 > 0 ? err / l1 : 0.0);
    return value;
  };
  auto outer = [&](double w) {
    return m * std::pow(w, static_cast<double>(spec.s - 1)) * std::pow(1.0 - std::pow(w, m), power) *
           inner(w);
  };
  double err = 0.0, l1 = 0.0;
  const double integral =
      gauss_kronrod<double, 31>::integrate(outer, 0.0, 1.0, options.max_depth, options.tolerance, &err, &l1);
  worst = std::max(worst, l1 > 0 ? err / l1 : 0.0);
  if (!(worst <= options.tolerance)) {
    fail(errc::quadrature_not_converged, "relative error estimate " + std::to_string(worst));
  }

  const auto n = static_cast<std::uint64_t>(spec.count);
  const rational prefactor = falling_product(rational(spec.r, spec.m) + (spec.count - 1), n) *
                             falling_product(rational(spec.s, spec.m) + (spec.count - 1), n) /
                             rational(factorial(n - 1) * factorial(n - 1));
  return to_double(prefactor) * integral;
}

/// 2^{-r/m} when s = m; no conjectured value otherwise.
inline std::optional<double> conjectured_target(std::int64_t r, std::int64_t s, std::int64_t m) {
  if (s != m) return std::nullopt;
  return std::pow(2.0, -static_cast<double>(r) / static_cast<double>(m));
}

struct conjecture_cell {
  std::uint64_t n = 0;
  std::int64_t count = 0;  // N
  std::optional<bias_count> counts;  // empty when the cell was over budget
  std::optional<rational> ratio;     // empty when over budget or total = 0
  bool over_budget = false;
};

struct conjecture_limit {
  std::int64_t count = 0;  // N
  rational limit;
};

struct convergence_table {
  std::int64_t r = 0, s = 0, m = 0;
  std::vector<conjecture_cell> rows;     // sorted by (N, n)
  std::vector<conjecture_limit> limits;  // sorted by N
  std::optional<double> target;

  bool any_over_budget() const {
    return std::any_of(rows.begin(), rows.end(), [](const auto& c) { return c.over_budget; });
  }

  /// |limit_N - target| never grows along N (limits merely monotone when no target).
  bool limits_monotone() const {
    if (limits.size() < 2) return true;
    if (target) {
      for (std::size_t k = 1; k < limits.size(); ++k) {
        if (std::abs(to_double(limits[k].limit) - *target) >
            std::abs(to_double(limits[k - 1].limit) - *target))
          return false;
      }
      return true;
    }
    bool up = true, down = true;
    for (std::size_t k = 1; k < limits.size(); ++k) {
      up = up && limits[k].limit >= limits[k - 1].limit;
      down = down && limits[k].limit <= limits[k - 1].limit;
    }
    return up || down;
  }

  /// For fixed N, |C_{n,N} - lim_n C_{n,N}| never grows along the n grid.
  bool cells_monotone(std::int64_t count) const {
    const auto lim = std::find_if(limits.begin(), limits.end(),
                                  [&](const auto& l) { return l.count == count; });
    if (lim == limits.end()) return true;
    std::optional<double> previous;
    for (const auto& cell : rows) {
      if (cell.count != count || !cell.ratio) continue;
      const double gap = std::abs(to_double(*cell.ratio - lim->limit));
      if (previous && gap > *previous) return false;
      previous = gap;
    }
    return true;
  }
};

/*
 * Tabulates C_{n,N} exactly over the grids together with lim_n C_{n,N} for
 * each N.  Descriptive only: nothing here asserts the double-limit exchange.
 */
inline convergence_table conjecture_table(std::int64_t r, std::int64_t s, std::int64_t m,
                                          std::vector<std::uint64_t> n_grid,
                                          std::vector<std::int64_t> count_grid,
                                          const counter_options& options = {}) {
  if (n_grid.empty() || count_grid.empty()) fail(errc::precondition_violated, "grids must be nonempty");
  std::sort(n_grid.begin(), n_grid.end());
  n_grid.erase(std::unique(n_grid.begin(), n_grid.end()), n_grid.end());
  std::sort(count_grid.begin(), count_grid.end());
  count_grid.erase(std::unique(count_grid.begin(), count_grid.end()), count_grid.end());

  convergence_table out;
  out.r = r;
  out.s = s;
  out.m = m;
  out.target = conjectured_target(r, s, m);
  for (auto count : count_grid) {
    const progression_spec spec{r, s, m, count};
    const auto sys = build_sets(spec);
    out.limits.push_back({count, c_limit_exact(spec)});

    std::optional<std::vector<bias_count>> table;
    try {
      table = count_bias_table(sys, n_grid.back(), options);
    } catch (const error& e) {
      if (e.code() != errc::budget_exceeded) throw;
    }
    for (auto n : n_grid) {
      conjecture_cell cell;
      cell.n = n;
      cell.count = count;
      if (table) {
        cell.counts = (*table)[n];
        cell.ratio = bias_ratio(*cell.counts);
      } else {
        cell.over_budget = true;
      }
      out.rows.push_back(std::move(cell));
    }
  }
  return out;
}

struct direction_report {
  progression_spec spec;
  std::uint64_t n = 0;
  big_int greater = 0;
  big_int less = 0;
  /// Smallest n0 <= n with greater > less on all of [n0, n]; empty if it fails at n.
  std::optional<std::uint64_t> first_n0;

  bool greater_wins() const { return greater > less; }
};

inline direction_report bias_direction_scan(const progression_spec& spec, std::uint64_t n,
                                            const counter_options& options = {}) {
  spec.check();
  if (spec.r >= spec.s) fail(errc::precondition_violated, "direction scan needs r < s");
  const auto table = count_bias_table(build_sets(spec), n, options);
  direction_report out;
  out.spec = spec;
  out.n = n;
  out.greater = table[n].greater;
  out.less = table[n].less;
  for (std::uint64_t k = n + 1; k-- > 0;) {
    if (table[k].greater <= table[k].less) break;
    out.first_n0 = k;
  }
  return out;
}

}  // namespace partbias
