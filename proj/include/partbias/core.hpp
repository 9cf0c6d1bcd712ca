#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "partbias/error.hpp"
#include "partbias/rational.hpp"

namespace partbias {

using part_list = std::vector<std::int64_t>;

inline std::string join(std::span<const std::int64_t> values, char sep = ',') {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += sep;
    out += std::to_string(values[k]);
  }
  return out;
}

inline std::int64_t gcd_of(std::span<const std::int64_t> values) {
  std::int64_t g = 0;
  for (auto v : values) g = std::gcd(g, v);
  return g;
}

/*
 * The triple (R, S, I) of pairwise disjoint part sets.  Each set is held
 * ascending without repeats.  gcd_all covers R and S only; a value above one
 * leaves counting intact but disables the closed-form limit.
 */
class part_system {
 public:
  const part_list& r() const noexcept { return r_; }
  const part_list& s() const noexcept { return s_; }
  const part_list& i() const noexcept { return i_; }
  std::int64_t gcd_all() const noexcept { return gcd_all_; }
  bool theorem_applicable() const noexcept { return gcd_all_ == 1; }

  /// R, then S, then I.
  part_list parts() const {
    part_list out = r_;
    out.insert(out.end(), s_.begin(), s_.end());
    out.insert(out.end(), i_.begin(), i_.end());
    return out;
  }

  /// R then S; the coordinate order e_1..e_{l+m} of the lattice construction.
  part_list rs() const {
    part_list out = r_;
    out.insert(out.end(), s_.begin(), s_.end());
    return out;
  }

  friend bool operator==(const part_system&, const part_system&) = default;

 private:
  part_system(part_list r, part_list s, part_list i, std::int64_t g)
      : r_(std::move(r)), s_(std::move(s)), i_(std::move(i)), gcd_all_(g) {}

  friend part_system validate_system(part_list r, part_list s, part_list i);

  part_list r_;
  part_list s_;
  part_list i_;
  std::int64_t gcd_all_ = 1;
};

inline part_system validate_system(part_list r, part_list s, part_list i = {}) {
  for (const part_list* set : {&r, &s, &i}) {
    for (auto v : *set) {
      if (v < 1) fail(errc::non_positive_part, "part " + std::to_string(v) + " is not positive");
    }
  }
  if (r.empty() || s.empty()) fail(errc::empty_rs, "R and S must both be nonempty");
  for (part_list* set : {&r, &s, &i}) {
    std::sort(set->begin(), set->end());
    set->erase(std::unique(set->begin(), set->end()), set->end());
  }
  auto check_disjoint = [](const part_list& a, const part_list& b, const char* names) {
    part_list common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    if (!common.empty()) {
      fail(errc::disjointness_violation,
           "element " + std::to_string(common.front()) + " appears in both " + names);
    }
  };
  check_disjoint(r, s, "R and S");
  check_disjoint(r, i, "R and I");
  check_disjoint(s, i, "S and I");

  part_list rs = r;
  rs.insert(rs.end(), s.begin(), s.end());
  const auto g = gcd_of(rs);
  return part_system(std::move(r), std::move(s), std::move(i), g);
}

inline part_system validate_system(const part_system& sys) {
  return validate_system(sys.r(), sys.s(), sys.i());
}

/*
 * Leading entries of the triangular lattice basis:
 * d_i = gcd(e_{i+1}, ..., e_k) / gcd(e_i, ..., e_k) for i = 1..k-1.
 * Their product telescopes to e_k / gcd(e_1, ..., e_k).
 */
inline std::vector<std::int64_t> gcd_chain(std::span<const std::int64_t> e) {
  if (e.size() < 2) fail(errc::precondition_violated, "gcd_chain needs at least two entries");
  for (auto v : e) {
    if (v < 1) fail(errc::non_positive_part, "gcd_chain entries must be positive");
  }
  std::vector<std::int64_t> suffix(e.size() + 1, 0);
  for (std::size_t k = e.size(); k-- > 0;) suffix[k] = std::gcd(suffix[k + 1], e[k]);
  std::vector<std::int64_t> d(e.size() - 1);
  for (std::size_t k = 0; k + 1 < e.size(); ++k) d[k] = suffix[k + 1] / suffix[k];
  return d;
}

}  // namespace partbias
