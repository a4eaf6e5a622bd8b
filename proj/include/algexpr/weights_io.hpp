// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>

#include "algexpr/error.hpp"
#include "algexpr/graph.hpp"

namespace algexpr {

/// Shortest decimal that reads back to the same double; "inf" for +infinity.
inline std::string format_double(double v) {
  if (v == kInfinity) return "inf";
  if (v == -kInfinity) return "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error("cannot format number");
  return std::string(buf, end);
}

inline double parse_double(const std::string& text) {
  if (text == "inf") return kInfinity;
  if (text == "-inf") return -kInfinity;
  double v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw WeightError("malformed number '" + text + "'");
  }
  return v;
}

/// Reads `name<TAB>weight` lines; blank and '#' lines are skipped.
inline WeightMap read_weights(std::istream& in) {
  WeightMap w;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw WeightError("line " + std::to_string(lineno) + ": expected name<TAB>weight");
    }
    std::string name = line.substr(0, tab);
    double value;
    try {
      value = parse_double(line.substr(tab + 1));
    } catch (const WeightError& e) {
      throw WeightError("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!std::isfinite(value)) {
      throw WeightError("line " + std::to_string(lineno) + ": weight must be finite");
    }
    if (!w.emplace(std::move(name), value).second) {
      throw WeightError("line " + std::to_string(lineno) + ": duplicate weight for '" +
                        line.substr(0, tab) + "'");
    }
  }
  return w;
}

inline WeightMap read_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_weights(in);
}

inline WeightMap parse_weights(const std::string& text) {
  std::istringstream in(text);
  return read_weights(in);
}

inline void write_weights(std::ostream& out, const WeightMap& w) {
  for (const auto& [name, value] : w) out << name << '\t' << format_double(value) << '\n';
}

}  // namespace algexpr
