#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "partbias/cli/output.hpp"
#include "partbias/partbias.hpp"

namespace partbias::cli {

namespace detail {

inline json optional_rational(const std::optional<rational>& value) {
  return value ? json(to_string(*value)) : json(nullptr);
}

inline void note_gcd(const part_system& sys, output_record& record) {
  if (!sys.theorem_applicable()) {
    record.diagnostics.push_back("warning: gcd(R u S) = " + std::to_string(sys.gcd_all()) +
                                 "; counts are exact but the closed-form limit does not apply");
  }
}

}  // namespace detail

struct count_params {
  part_list r, s, i;
  std::vector<std::uint64_t> n;        // explicit values
  std::optional<std::uint64_t> n_max;  // or 0, step, 2 step, ... <= n_max
  std::uint64_t step = 1;
  std::string method = "dp";  // dp | brute
  std::uint64_t budget = counter_options{}.state_budget;
};

inline output_record cmd_count(const count_params& p) {
  const auto sys = validate_system(p.r, p.s, p.i);
  std::vector<std::uint64_t> ns = p.n;
  if (p.n_max) {
    if (p.step == 0) fail(errc::precondition_violated, "--step must be positive");
    for (std::uint64_t v = 0; v <= *p.n_max; v += p.step) ns.push_back(v);
  }
  if (ns.empty()) fail(errc::precondition_violated, "give --n or --n-max");
  if (p.method != "dp" && p.method != "brute")
    fail(errc::precondition_violated, "--method must be dp or brute");

  output_record record;
  record.command = "count";
  record.inputs = {{"r", sys.r()}, {"s", sys.s()}, {"i", sys.i()}, {"n", ns}, {"method", p.method}};
  detail::note_gcd(sys, record);

  std::vector<bias_count> rows;
  if (p.method == "dp") {
    const auto table = count_bias_table(sys, *std::max_element(ns.begin(), ns.end()), {p.budget});
    for (auto n : ns) rows.push_back(table[n]);
  } else {
    for (auto n : ns) rows.push_back(brute_force_oracle(sys, n));
  }
  for (const auto& c : rows) {
    record.results.push_back({{"n", c.n},
                              {"total", c.total.str()},
                              {"greater", c.greater.str()},
                              {"less", c.less.str()},
                              {"equal", c.equal.str()},
                              {"ratio", detail::optional_rational(bias_ratio(c))}});
  }
  return record;
}

struct asymptote_params {
  part_list r, s, i;
};

inline output_record cmd_asymptote(const asymptote_params& p) {
  const auto sys = validate_system(p.r, p.s, p.i);
  output_record record;
  record.command = "asymptote";
  record.inputs = {{"r", sys.r()}, {"s", sys.s()}, {"i", sys.i()}};
  if (!sys.i().empty()) record.diagnostics.push_back("note: I does not affect the limit and is ignored");
  const auto report = asymptotic(sys);
  record.results.push_back({{"ratio_limit", to_string(report.ratio_limit)},
                            {"lead_total", to_string(report.lead_total)},
                            {"lead_greater", to_string(report.lead_greater)},
                            {"dimension", report.dimension}});
  return record;
}

struct volume_params {
  int_vector a, b;
};

inline output_record cmd_volume(const volume_params& p) {
  output_record record;
  record.command = "volume";
  record.inputs = {{"a", p.a}, {"b", p.b}};
  const vform ab{p.a, p.b};
  const vform ba{p.b, p.a};
  record.results.push_back({{"v_ab", to_string(vform_volume(ab))},
                            {"v_ba", to_string(vform_volume(ba))},
                            {"simplex_total", to_string(simplex_total(p.a, p.b))},
                            {"v_ab_closed_form", to_string(vform_closed_form(ab))}});
  return record;
}

struct progression_params {
  std::int64_t r = 1, s = 2, m = 2;
  std::vector<std::int64_t> counts{1};  // N values
  std::string mode = "exact";           // exact | beta | quadrature | gamma
};

inline output_record cmd_progression(const progression_params& p) {
  output_record record;
  record.command = "progression";
  record.inputs = {{"r", p.r}, {"s", p.s}, {"m", p.m}, {"N", p.counts}, {"mode", p.mode}};
  const bool s_is_m = p.s == p.m;
  if ((p.mode == "beta" || p.mode == "gamma") && !s_is_m)
    fail(errc::invalid_progression, "mode " + p.mode + " needs s = m");
  for (auto count : p.counts) {
    const progression_spec spec{p.r, p.s, p.m, count};
    spec.check();
    json value;
    if (p.mode == "exact") value = to_string(c_limit_exact(spec));
    else if (p.mode == "beta") value = to_string(c_limit_beta(p.r, p.m, count));
    else if (p.mode == "quadrature") value = format_double(c_limit_quadrature(spec));
    else if (p.mode == "gamma") value = format_double(gamma_form(p.r, p.m, count));
    else fail(errc::precondition_violated, "unknown mode " + p.mode);
    record.results.push_back({{"N", count}, {"mode", p.mode}, {"limit", value}});
  }
  if (auto target = conjectured_target(p.r, p.s, p.m))
    record.metadata["target"] = format_double(*target);
  return record;
}

struct conjecture_params {
  std::int64_t r = 1, s = 2, m = 2;
  std::vector<std::uint64_t> n_grid;
  std::vector<std::int64_t> count_grid;
  std::uint64_t budget = counter_options{}.state_budget;
};

/// Data rows sorted by (N, n), then one "n = inf" row per N holding the exact limit.
inline output_record cmd_conjecture(const conjecture_params& p) {
  const auto table = conjecture_table(p.r, p.s, p.m, p.n_grid, p.count_grid, {p.budget});
  output_record record;
  record.command = "conjecture";
  record.inputs = {{"r", p.r}, {"s", p.s}, {"m", p.m}, {"n_grid", p.n_grid}, {"N_grid", p.count_grid}};

  json diagnostics = json::object();
  diagnostics["target"] = table.target ? json(format_double(*table.target)) : json(nullptr);
  diagnostics["limits_monotone"] = table.limits_monotone();
  json per_count = json::array();

  for (const auto& cell : table.rows) {
    json row = {{"n", cell.n}, {"N", cell.count}};
    if (cell.counts) {
      row["total"] = cell.counts->total.str();
      row["greater"] = cell.counts->greater.str();
      row["less"] = cell.counts->less.str();
      row["equal"] = cell.counts->equal.str();
    } else {
      row["total"] = row["greater"] = row["less"] = row["equal"] = nullptr;
      record.diagnostics.push_back("budget: cell n=" + std::to_string(cell.n) +
                                   " N=" + std::to_string(cell.count) + " skipped");
    }
    row["ratio"] = detail::optional_rational(cell.ratio);
    record.results.push_back(std::move(row));
  }
  for (const auto& lim : table.limits) {
    record.results.push_back({{"n", "inf"},
                              {"N", lim.count},
                              {"total", nullptr},
                              {"greater", nullptr},
                              {"less", nullptr},
                              {"equal", nullptr},
                              {"ratio", to_string(lim.limit)}});
    json entry = {{"N", lim.count},
                  {"limit", format_double(to_double(lim.limit))},
                  {"cells_monotone", table.cells_monotone(lim.count)}};
    entry["limit_gap_to_target"] =
        table.target ? json(format_double(to_double(lim.limit) - *table.target)) : json(nullptr);
    json gaps = json::array();
    for (const auto& cell : table.rows) {
      if (cell.count != lim.count) continue;
      json g = {{"n", cell.n}};
      g["gap_to_limit"] = cell.ratio ? json(format_double(to_double(*cell.ratio - lim.limit))) : json(nullptr);
      g["gap_to_target"] = cell.ratio && table.target
                               ? json(format_double(to_double(*cell.ratio) - *table.target))
                               : json(nullptr);
      gaps.push_back(std::move(g));
    }
    entry["cells"] = std::move(gaps);
    per_count.push_back(std::move(entry));
  }
  diagnostics["per_N"] = std::move(per_count);
  record.metadata["diagnostics"] = diagnostics;
  record.diagnostics.push_back("limits monotone toward target: " +
                               std::string(table.limits_monotone() ? "yes" : "no"));
  if (table.any_over_budget()) record.exit_code = 3;
  return record;
}

struct direction_params {
  std::int64_t r = 1, s = 2, m = 2, count = 1;
  std::uint64_t n = 100;
};

inline output_record cmd_direction(const direction_params& p) {
  const progression_spec spec{p.r, p.s, p.m, p.count};
  const auto report = bias_direction_scan(spec, p.n);
  output_record record;
  record.command = "direction";
  record.inputs = {{"r", p.r}, {"s", p.s}, {"m", p.m}, {"N", p.count}, {"n", p.n}};
  record.results.push_back({{"n", report.n},
                            {"greater", report.greater.str()},
                            {"less", report.less.str()},
                            {"greater_wins", report.greater_wins()},
                            {"first_n0", report.first_n0 ? json(*report.first_n0) : json(nullptr)}});
  return record;
}

struct basis_params {
  int_vector e;
};

inline output_record cmd_basis(const basis_params& p) {
  const auto basis = make_lattice_basis(p.e);
  output_record record;
  record.command = "basis";
  record.inputs = {{"e", p.e}};
  record.results.push_back({{"gcd_chain", gcd_chain(p.e)},
                            {"bezout", bezout_vector(p.e)},
                            {"rows", basis.rows}});
  return record;
}

}  // namespace partbias::cli
