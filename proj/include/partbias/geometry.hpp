#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "partbias/core.hpp"
#include "partbias/error.hpp"
#include "partbias/rational.hpp"

namespace partbias {

using int_vector = std::vector<std::int64_t>;

namespace detail {

struct ext_gcd_result {
  std::int64_t g, x, y;  // g = x a + y b, g >= 0
};

inline ext_gcd_result ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
    old_t -= q * t;
    std::swap(old_t, t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

// Nearest integer to x / d for d > 0, ties rounding down.
inline std::int64_t nearest_quotient(std::int64_t x, std::int64_t d) {
  std::int64_t q = x / d;
  std::int64_t rem = x - q * d;
  if (rem < 0) {
    rem += d;
    --q;
  }
  return 2 * rem > d ? q + 1 : q;
}

inline std::int64_t floor_div(std::int64_t x, std::int64_t d) {
  std::int64_t q = x / d;
  if ((x % d != 0) && ((x < 0) != (d < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t x, std::int64_t d) { return -floor_div(-x, d); }

}  // namespace detail

/// Coefficients x with sum x_i e_i = gcd(e).
inline int_vector bezout_vector(std::span<const std::int64_t> e) {
  if (e.empty()) fail(errc::precondition_violated, "bezout_vector of an empty vector");
  int_vector x(e.size(), 0);
  x[0] = 1;
  std::int64_t g = e[0];
  for (std::size_t j = 1; j < e.size(); ++j) {
    const auto step = detail::ext_gcd(g, e[j]);
    for (std::size_t k = 0; k < j; ++k) x[k] *= step.x;
    x[j] = step.y;
    g = step.g;
  }
  return x;
}

/*
 * Triangular basis of the lattice {x in Z^k : x . e = 0}.  Row i vanishes
 * before column i and carries gcd_chain(e)[i] there.
 */
struct lattice_basis {
  int_vector e;
  std::vector<int_vector> rows;

  /// Throws inconsistent_input unless both basis invariants hold.
  void check() const {
    if (e.size() < 2 || rows.size() + 1 != e.size())
      fail(errc::inconsistent_input, "basis needs |e| - 1 rows");
    const auto d = gcd_chain(e);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& row = rows[i];
      if (row.size() != e.size()) fail(errc::inconsistent_input, "row length differs from |e|");
      std::int64_t dot = 0;
      for (std::size_t j = 0; j < e.size(); ++j) dot += row[j] * e[j];
      if (dot != 0) fail(errc::inconsistent_input, "row " + std::to_string(i) + " is not orthogonal to e");
      for (std::size_t j = 0; j < i; ++j)
        if (row[j] != 0) fail(errc::inconsistent_input, "row " + std::to_string(i) + " is not triangular");
      if (row[i] != d[i]) fail(errc::inconsistent_input, "row " + std::to_string(i) + " has the wrong pivot");
    }
  }

  static lattice_basis from_rows(int_vector e, std::vector<int_vector> rows) {
    lattice_basis out{std::move(e), std::move(rows)};
    out.check();
    return out;
  }
};

inline lattice_basis make_lattice_basis(std::span<const std::int64_t> e) {
  const auto d = gcd_chain(e);
  const std::size_t k = e.size();
  lattice_basis out;
  out.e.assign(e.begin(), e.end());

  std::vector<std::int64_t> suffix(k + 1, 0);
  for (std::size_t j = k; j-- > 0;) suffix[j] = std::gcd(suffix[j + 1], e[j]);

  for (std::size_t i = 0; i + 1 < k; ++i) {
    // d_i e_i = (e_i / g_i) g_{i+1}; realise -g_{i+1} on the suffix by Bezout.
    const auto tail = bezout_vector(e.subspan(i + 1));
    const std::int64_t scale = e[i] / suffix[i];
    int_vector row(k, 0);
    row[i] = d[i];
    for (std::size_t j = i + 1; j < k; ++j) row[j] = -scale * tail[j - i - 1];
    out.rows.push_back(std::move(row));
  }
  // Size-reduce against later rows; keeps the triangular shape and pivots.
  for (std::size_t i = 0; i + 1 < k; ++i) {
    for (std::size_t j = i + 1; j + 1 < k; ++j) {
      const auto q = detail::nearest_quotient(out.rows[i][j], d[j]);
      if (q == 0) continue;
      for (std::size_t c = j; c < k; ++c) out.rows[i][c] -= q * out.rows[j][c];
    }
  }
  return out;
}

namespace detail {

inline void check_anchor(const part_system& sys, const lattice_basis& basis,
                         std::span<const std::int64_t> anchor) {
  if (!sys.i().empty()) fail(errc::precondition_violated, "lattice bijection needs I empty");
  if (basis.e != sys.rs()) fail(errc::inconsistent_input, "basis does not match R then S");
  if (anchor.size() != basis.e.size()) fail(errc::inconsistent_input, "Bezout vector length mismatch");
  std::int64_t dot = 0;
  for (std::size_t j = 0; j < anchor.size(); ++j) dot += anchor[j] * basis.e[j];
  if (dot != 1) fail(errc::inconsistent_input, "Bezout vector does not reach 1");
}

}  // namespace detail

/*
 * Solves (c, f) = n * anchor + sum_i k_i v_i for k by forward substitution.
 * `anchor` is the Bezout vector (a, b) with a . r + b . s = 1.
 */
inline int_vector partition_to_k(const part_system& sys, const lattice_basis& basis,
                                 std::span<const std::int64_t> anchor, std::int64_t n,
                                 std::span<const std::int64_t> multiplicities) {
  detail::check_anchor(sys, basis, anchor);
  const std::size_t k = basis.e.size();
  if (multiplicities.size() != k) fail(errc::inconsistent_input, "multiplicity vector length mismatch");
  std::int64_t weight = 0;
  for (std::size_t j = 0; j < k; ++j) weight += multiplicities[j] * basis.e[j];
  if (weight != n)
    fail(errc::inconsistent_input, "multiplicities sum to " + std::to_string(weight) + ", not n");

  int_vector out(k - 1, 0);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    std::int64_t rest = multiplicities[i] - n * anchor[i];
    for (std::size_t j = 0; j < i; ++j) rest -= out[j] * basis.rows[j][i];
    if (rest % basis.rows[i][i] != 0) fail(errc::inconsistent_input, "point is off the lattice");
    out[i] = rest / basis.rows[i][i];
  }
  std::int64_t last = n * anchor[k - 1];
  for (std::size_t j = 0; j + 1 < k; ++j) last += out[j] * basis.rows[j][k - 1];
  if (last != multiplicities[k - 1]) fail(errc::inconsistent_input, "basis does not span the point");
  return out;
}

inline int_vector k_to_partition(const lattice_basis& basis, std::span<const std::int64_t> anchor,
                                 std::int64_t n, std::span<const std::int64_t> coords) {
  const std::size_t k = basis.e.size();
  if (coords.size() + 1 != k || anchor.size() != k)
    fail(errc::inconsistent_input, "coordinate length mismatch");
  int_vector out(k);
  for (std::size_t j = 0; j < k; ++j) out[j] = n * anchor[j];
  for (std::size_t i = 0; i + 1 < k; ++i)
    for (std::size_t j = i; j < k; ++j) out[j] += coords[i] * basis.rows[i][j];
  return out;
}

/*
 * Number of integer k with n * anchor + sum k_i v_i >= 0, enumerated in k
 * space.  Coordinate i is bounded through the i-th multiplicity, which lies in
 * [0, n / e_i]; the last multiplicity is checked once all k are fixed.
 */
inline std::uint64_t count_k_space(const part_system& sys, const lattice_basis& basis,
                                   std::span<const std::int64_t> anchor, std::int64_t n,
                                   std::uint64_t node_budget = 50'000'000) {
  detail::check_anchor(sys, basis, anchor);
  const std::size_t k = basis.e.size();
  int_vector partial(k);
  for (std::size_t j = 0; j < k; ++j) partial[j] = n * anchor[j];
  std::uint64_t found = 0, nodes = 0;

  std::function<void(std::size_t)> descend = [&](std::size_t i) {
    if (++nodes > node_budget) fail(errc::budget_exceeded, "k-space enumeration over budget");
    if (i + 1 == k) {
      if (partial[k - 1] >= 0) ++found;
      return;
    }
    const auto& row = basis.rows[i];
    const std::int64_t pivot = row[i];
    const std::int64_t lo = detail::ceil_div(-partial[i], pivot);
    const std::int64_t hi = detail::floor_div(n / basis.e[i] - partial[i], pivot);
    if (lo > hi) return;
    for (std::size_t j = i; j < k; ++j) partial[j] += lo * row[j];
    for (std::int64_t ki = lo; ki <= hi; ++ki) {
      descend(i + 1);
      for (std::size_t j = i; j < k; ++j) partial[j] += row[j];
    }
    for (std::size_t j = i; j < k; ++j) partial[j] -= (hi + 1) * row[j];
  };
  descend(0);
  return found;
}

/// V_{A,B}: volume of {u >= 0, A.u_A + B.u_B <= 1, sum u_A < sum u_B}.
struct vform {
  int_vector a;
  int_vector b;

  std::size_t dimension() const noexcept { return a.size() + b.size(); }
};

namespace detail {

inline big_int product_of(std::span<const std::int64_t> v) {
  big_int out = 1;
  for (auto x : v) out *= x;
  return out;
}

}  // namespace detail

/// 1 / (d! prod A prod B), the volume of {u >= 0, A.u_A + B.u_B <= 1}.
inline rational simplex_total(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  const big_int den = factorial(a.size() + b.size()) * detail::product_of(a) * detail::product_of(b);
  if (den == 0) fail(errc::degenerate_denominator, "zero coefficient in simplex");
  return reciprocal(den);
}

/*
 * V_{A,B} = 1 / (d! b_1 prod(a_i + b_1) prod_{j>=2}(b_j - b_1))
 *           - V_{(b_1, A + b_1), (b_2 - b_1, ..., b_q - b_1)},   V_{A,()} = 0.
 * Always reduces on the first entry of B; never re-sorts.
 */
inline rational vform_volume(const vform& form) {
  int_vector a = form.a;
  int_vector b = form.b;
  const big_int d_factorial = factorial(form.dimension());
  rational total = 0;
  bool add = true;
  while (!b.empty()) {
    const std::int64_t head = b.front();
    big_int den = d_factorial * head;
    for (auto x : a) den *= x + head;
    for (std::size_t j = 1; j < b.size(); ++j) den *= b[j] - head;
    if (den == 0) fail(errc::degenerate_denominator, "V-form recursion hit a zero factor");
    const rational term = reciprocal(den);
    if (add) total += term;
    else total -= term;
    add = !add;

    int_vector next_a;
    next_a.reserve(a.size() + 1);
    next_a.push_back(head);
    for (auto x : a) next_a.push_back(x + head);
    int_vector next_b;
    for (std::size_t j = 1; j < b.size(); ++j) next_b.push_back(b[j] - head);
    a = std::move(next_a);
    b = std::move(next_b);
  }
  return total;
}

/// Explicit alternating sum over the entries of B.
inline rational vform_closed_form(const vform& form) {
  const auto& a = form.a;
  const auto& b = form.b;
  rational sum = 0;
  for (std::size_t j = 0; j < b.size(); ++j) {
    big_int den = b[j];
    for (std::size_t i = j + 1; i < b.size(); ++i) den *= b[i] - b[j];
    for (std::size_t t = 0; t < j; ++t) den *= b[j] - b[t];
    for (auto x : a) den *= x + b[j];
    if (den == 0) fail(errc::degenerate_denominator, "V-form closed form hit a zero factor");
    const rational term = reciprocal(den);
    if (j % 2 == 0) sum += term;
    else sum -= term;
  }
  return sum / rational(factorial(form.dimension()));
}

/// One application of V_{A,B} = V_{(b_2 - b_1, ...), (b_1, A + b_1)}.
inline vform vform_shift(const vform& form) {
  if (form.b.empty()) fail(errc::precondition_violated, "cannot shift a form with empty B");
  const std::int64_t head = form.b.front();
  vform out;
  for (std::size_t j = 1; j < form.b.size(); ++j) out.a.push_back(form.b[j] - head);
  out.b.push_back(head);
  for (auto x : form.a) out.b.push_back(x + head);
  return out;
}

struct complement_triple {
  rational v_ab;
  rational v_ba;
  rational simplex;
};

/// V_{A,B}, V_{B,A} and the simplex volume they partition.
inline complement_triple complement_identity_check(const int_vector& a, const int_vector& b) {
  for (const int_vector* v : {&a, &b}) {
    for (auto x : *v)
      if (x < 1) fail(errc::precondition_violated, "complement identity needs positive entries");
    auto sorted = *v;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail(errc::precondition_violated, "complement identity needs distinct entries");
  }
  return {vform_volume({a, b}), vform_volume({b, a}), simplex_total(a, b)};
}

/*
 * Volume V of {u >= 0, r.u_R + s'.u_S' <= 1, (s_m + r).u_R + (s' - s_m).u_S' > 1}
 * with S' = S minus its largest element s_m, computed as
 * simplex(R, S') - V_{R,S'} - V_{S' - s_m, R + s_m} through the V-form recursion.
 */
inline rational bias_volume(const part_system& sys) {
  const auto& r = sys.r();
  const auto& s = sys.s();
  const std::int64_t s_last = s.back();
  const int_vector s_head(s.begin(), s.end() - 1);

  vform v1{r, s_head};
  vform v2;
  for (auto x : s_head) v2.a.push_back(x - s_last);
  for (auto x : r) v2.b.push_back(x + s_last);
  return simplex_total(r, s_head) - vform_volume(v1) - vform_volume(v2);
}

inline rational bias_volume(part_list r, part_list s) {
  return bias_volume(validate_system(std::move(r), std::move(s)));
}

/// The same volume from its explicit alternating sum.
inline rational bias_volume_closed_form(const part_system& sys) {
  const auto& r = sys.r();
  const auto& s = sys.s();
  rational sum = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    big_int den = r[i];
    for (std::size_t j = 0; j < r.size(); ++j)
      if (j != i) den *= r[j] - r[i];
    for (auto sk : s) den *= sk + r[i];
    sum += reciprocal(den);
  }
  const auto d = r.size() + s.size() - 1;
  return sum * s.back() / rational(factorial(d));
}

struct ehrhart_result {
  big_int count;                // integer points of the t-dilate
  std::int64_t dimension = 0;   // l + m - 1
  rational estimate;            // count / t^dimension
};

/*
 * Integer points of t D_1 counted in multiplicity coordinates: choose
 * c_1..c_l, f_1..f_{m-1} >= 0 and require the leftover to be a nonnegative
 * multiple of s_m.
 */
inline ehrhart_result ehrhart_estimate(const part_system& sys, std::int64_t t,
                                       std::uint64_t node_budget = 50'000'000) {
  if (t < 1) fail(errc::precondition_violated, "dilation must be positive");
  part_list free_parts = sys.r();
  free_parts.insert(free_parts.end(), sys.s().begin(), sys.s().end() - 1);
  const std::int64_t closing = sys.s().back();

  std::uint64_t nodes = 0;
  big_int count = 0;
  std::function<void(std::size_t, std::int64_t)> walk = [&](std::size_t at, std::int64_t left) {
    if (++nodes > node_budget) fail(errc::budget_exceeded, "Ehrhart enumeration over budget");
    if (at == free_parts.size()) {
      if (left % closing == 0) ++count;
      return;
    }
    for (std::int64_t used = 0; used <= left; used += free_parts[at]) walk(at + 1, left - used);
  };
  walk(0, t);

  ehrhart_result out;
  out.count = count;
  out.dimension = static_cast<std::int64_t>(free_parts.size());
  big_int scale = 1;
  for (std::int64_t j = 0; j < out.dimension; ++j) scale *= t;
  out.estimate = rational(count, scale);
  return out;
}

}  // namespace partbias
