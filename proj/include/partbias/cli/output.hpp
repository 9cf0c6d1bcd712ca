#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

namespace partbias::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* version = "0.1.0";

/*
 * One command's result.  Exact rationals travel as "p/q" strings, counts as
 * decimal strings, floats as shortest-round-trip decimal strings and
 * undefined cells as null.
 */
struct output_record {
  std::string command;
  json inputs = json::object();
  json results = json::array();
  json metadata = json::object();
  std::vector<std::string> diagnostics;  // for the error stream only
  int exit_code = 0;

  json to_json() const {
    json out = json::object();
    out["command"] = command;
    out["inputs"] = inputs;
    out["results"] = results;
    out["metadata"] = metadata;
    return out;
  }

  std::string json_text() const { return to_json().dump(2) + "\n"; }

  /// Header from the first row's keys; later rows are laid out in that order.
  std::string csv_text() const {
    if (results.empty()) return "";
    std::vector<std::string> columns;
    for (const auto& [key, _] : results.front().items()) columns.push_back(key);
    std::string out;
    for (std::size_t k = 0; k < columns.size(); ++k) out += (k ? "," : "") + columns[k];
    out += "\n";
    for (const auto& row : results) {
      for (std::size_t k = 0; k < columns.size(); ++k) {
        if (k) out += ",";
        if (row.contains(columns[k])) out += csv_field(row[columns[k]]);
      }
      out += "\n";
    }
    return out;
  }

 private:
  static std::string csv_field(const json& value) {
    if (value.is_null()) return "";
    if (value.is_string()) {
      const auto& text = value.get_ref<const std::string&>();
      if (text.find_first_of(",\"\n") == std::string::npos) return text;
      std::string quoted = "\"";
      for (char c : text) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      return quoted + "\"";
    }
    return value.dump();
  }
};

inline std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

}  // namespace partbias::cli
