// Command-line front end: one subcommand per library operation.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "partbias/cli/commands.hpp"

namespace {

using partbias::cli::output_record;

struct common_flags {
  std::string format = "json";
  bool timing = false;
};

void add_common(CLI::App* sub, common_flags& flags) {
  sub->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sub->add_flag("--timing", flags.timing, "Add elapsed_ms to metadata");
  sub->add_option("--config", "Flat key=value file with the same keys as the flags");
}

int emit(output_record record, const common_flags& flags, double elapsed_ms) {
  record.metadata["version"] = partbias::cli::version;
  if (flags.timing) record.metadata["elapsed_ms"] = elapsed_ms;
  for (const auto& line : record.diagnostics) std::cerr << line << "\n";
  std::cout << (flags.format == "csv" ? record.csv_text() : record.json_text());
  return record.exit_code;
}

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  return text.substr(first, text.find_last_not_of(" \t\r") - first + 1);
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args)
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  return false;
}

// Appends "--key value" for every key=value line whose flag is not already on the command line.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) path = args[k + 1];
    else if (args[k].rfind("--config=", 0) == 0) path = args[k].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw CLI::FileError::Missing(path);
  const auto given = args;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';' || line[0] == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw CLI::ConversionError("config line without '=': " + line);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front())
      value = value.substr(1, value.size() - 2);
    if (key.rfind("--", 0) != 0) key = "--" + key;
    if (has_flag(given, key)) continue;
    if (key == "--timing") {
      if (value == "true" || value == "1") args.push_back(key);
      continue;
    }
    args.push_back(key);
    args.push_back(value);
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact counts and limits for biased restricted partitions"};
  app.require_subcommand(1);
  common_flags flags;
  std::function<output_record()> run;

  partbias::cli::count_params count;
  auto* count_cmd = app.add_subcommand("count", "Exact p_{RSI}(n) split by sign of #R - #S");
  count_cmd->add_option("--r", count.r, "R parts")->delimiter(',')->required();
  count_cmd->add_option("--s", count.s, "S parts")->delimiter(',')->required();
  count_cmd->add_option("--i", count.i, "I parts")->delimiter(',');
  count_cmd->add_option("--n", count.n, "Values of n")->delimiter(',');
  count_cmd->add_option("--n-max", count.n_max, "Tabulate 0..n-max");
  count_cmd->add_option("--step", count.step, "Stride for --n-max")->capture_default_str();
  count_cmd->add_option("--method", count.method, "dp or brute")
      ->check(CLI::IsMember({"dp", "brute"}))
      ->capture_default_str();
  count_cmd->add_option("--budget", count.budget, "DP cell budget")->capture_default_str();
  add_common(count_cmd, flags);
  count_cmd->callback([&] { run = [&] { return partbias::cli::cmd_count(count); }; });

  partbias::cli::asymptote_params asym;
  auto* asym_cmd = app.add_subcommand("asymptote", "Closed-form limit ratio and leading coefficients");
  asym_cmd->add_option("--r", asym.r, "R parts")->delimiter(',')->required();
  asym_cmd->add_option("--s", asym.s, "S parts")->delimiter(',')->required();
  asym_cmd->add_option("--i", asym.i, "I parts (ignored by the limit)")->delimiter(',');
  add_common(asym_cmd, flags);
  asym_cmd->callback([&] { run = [&] { return partbias::cli::cmd_asymptote(asym); }; });

  partbias::cli::volume_params vol;
  auto* vol_cmd = app.add_subcommand("volume", "V_{A,B}, V_{B,A} and the simplex volume");
  vol_cmd->add_option("--a", vol.a, "A entries")->delimiter(',');
  vol_cmd->add_option("--b", vol.b, "B entries")->delimiter(',');
  add_common(vol_cmd, flags);
  vol_cmd->callback([&] { run = [&] { return partbias::cli::cmd_volume(vol); }; });

  partbias::cli::progression_params prog;
  auto* prog_cmd = app.add_subcommand("progression", "lim_n C_{n,N} for arithmetic-progression parts");
  prog_cmd->add_option("--r", prog.r)->required();
  prog_cmd->add_option("--s", prog.s)->required();
  prog_cmd->add_option("--m", prog.m)->required();
  prog_cmd->add_option("--N", prog.counts, "Truncation lengths")->delimiter(',')->required();
  prog_cmd->add_option("--mode", prog.mode)
      ->check(CLI::IsMember({"exact", "beta", "quadrature", "gamma"}))
      ->capture_default_str();
  add_common(prog_cmd, flags);
  prog_cmd->callback([&] { run = [&] { return partbias::cli::cmd_progression(prog); }; });

  partbias::cli::conjecture_params conj;
  auto* conj_cmd = app.add_subcommand("conjecture", "Exact C_{n,N} table with per-N limits");
  conj_cmd->add_option("--r", conj.r)->required();
  conj_cmd->add_option("--s", conj.s)->required();
  conj_cmd->add_option("--m", conj.m)->required();
  conj_cmd->add_option("--n-grid", conj.n_grid)->delimiter(',')->required();
  conj_cmd->add_option("--N-grid", conj.count_grid)->delimiter(',')->required();
  conj_cmd->add_option("--budget", conj.budget, "DP cell budget per N")->capture_default_str();
  add_common(conj_cmd, flags);
  conj_cmd->callback([&] { run = [&] { return partbias::cli::cmd_conjecture(conj); }; });

  partbias::cli::direction_params dir;
  auto* dir_cmd = app.add_subcommand("direction", "Whether R_N beats S_N at n, and since when");
  dir_cmd->add_option("--r", dir.r)->required();
  dir_cmd->add_option("--s", dir.s)->required();
  dir_cmd->add_option("--m", dir.m)->required();
  dir_cmd->add_option("--N", dir.count)->required();
  dir_cmd->add_option("--n", dir.n)->required();
  add_common(dir_cmd, flags);
  dir_cmd->callback([&] { run = [&] { return partbias::cli::cmd_direction(dir); }; });

  partbias::cli::basis_params basis;
  auto* basis_cmd = app.add_subcommand("basis", "Triangular basis of {x : x.e = 0}");
  basis_cmd->add_option("--e", basis.e)->delimiter(',')->required();
  add_common(basis_cmd, flags);
  basis_cmd->callback([&] { run = [&] { return partbias::cli::cmd_basis(basis); }; });

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.get_name() << ": " << e.what() << "\n";
    return 2;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    auto record = run();
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    return emit(std::move(record), flags, elapsed.count());
  } catch (const partbias::error& e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
    return e.code() == partbias::errc::budget_exceeded ? 3 : 2;
  }
}
