// Copyright 2026 The Hourglass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOURGLASS_IO_HPP
#define HOURGLASS_IO_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hourglass/centrality.hpp"
#include "hourglass/core.hpp"
#include "hourglass/error.hpp"
#include "hourglass/graph.hpp"

namespace hourglass {

/// Shortest decimal that round-trips, always with a fraction or exponent
/// ("1.0", "0.5", "1e-07").
inline std::string format_double(double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, end);
  if (std::isfinite(x) && s.find_first_of(".e") == std::string::npos)
    s += ".0";
  return s;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
      ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
      ++j;
    if (j > i)
      tokens.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return tokens;
}

// Calls fn(line_number, content) for every line with the '#' comment and
// surrounding whitespace removed, skipping blank lines.
template <class Fn> void for_each_line(std::string_view text, Fn &&fn) {
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty())
      fn(number, line);
  }
}

} // namespace detail

/// One edge per line, "u v" meaning v depends on u. '#' starts a comment;
/// blank lines are skipped.
inline RawDigraph parse_edgelist(std::string_view text) {
  std::vector<NamedEdge> edges;
  detail::for_each_line(text, [&](std::size_t number, std::string_view line) {
    auto tokens = detail::split_ws(line);
    if (tokens.size() != 2)
      throw ParseError(number, "expected two vertex ids, got " +
                                   std::to_string(tokens.size()));
    edges.emplace_back(std::move(tokens[0]), std::move(tokens[1]));
  });
  return build_raw(edges);
}

/// One reaction per line, "A + B -> C + D": every substrate gets an edge to
/// every product. A '+' separates metabolites only as a standalone token, so
/// names such as "NAD+" survive; whitespace inside a name becomes '_'.
inline RawDigraph parse_reactions(std::string_view text) {
  std::vector<NamedEdge> edges;
  detail::for_each_line(text, [&](std::size_t number, std::string_view line) {
    const auto arrow = line.find("->");
    if (arrow == std::string_view::npos)
      throw ParseError(number, "reaction without '->'");
    if (line.find("->", arrow + 2) != std::string_view::npos)
      throw ParseError(number, "reaction with more than one '->'");
    auto side = [&](std::string_view part, const char *what) {
      std::vector<std::string> names;
      std::string current;
      bool empty_operand = true;
      for (const auto &token : detail::split_ws(part)) {
        if (token == "+") {
          if (empty_operand)
            throw ParseError(number, std::string("empty ") + what);
          names.push_back(std::move(current));
          current.clear();
          empty_operand = true;
          continue;
        }
        if (!current.empty())
          current += '_';
        current += token;
        empty_operand = false;
      }
      if (empty_operand)
        throw ParseError(number, std::string("empty ") + what);
      names.push_back(std::move(current));
      return names;
    };
    const auto substrates = side(line.substr(0, arrow), "substrate");
    const auto products = side(line.substr(arrow + 2), "product");
    for (const auto &s : substrates)
      for (const auto &p : products)
        edges.emplace_back(s, p);
  });
  return build_raw(edges);
}

/// Edge list in the format read by parse_edgelist, sorted by vertex ids.
/// Isolated vertices have no line.
inline std::string write_edgelist(const DependencyNetwork &g) {
  std::string out;
  for (const auto &[u, v] : g.edges()) {
    out += g.id(u);
    out += ' ';
    out += g.id(v);
    out += '\n';
  }
  return out;
}

namespace detail {

inline std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"')
      q += '"';
    q += c;
  }
  return q + '"';
}

inline std::string dot_quote(const std::string &s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      q += '\\';
    q += c;
  }
  return q + '"';
}

// Weight of the core element holding each vertex; negative when not in core.
inline std::vector<double> core_weights(std::size_t n, const Core &core) {
  std::vector<double> w(n, -1.0);
  for (const auto &e : core.elements)
    for (Vertex v : e.members)
      w[v] = e.weight;
  return w;
}

} // namespace detail

/// Per-vertex table: vertex,class,ps,pt,p,p_frac,location,in_core,core_weight.
/// Counts are exact decimals; an undefined location is an empty field.
inline std::string write_metrics_csv(const DependencyNetwork &g,
                                     const PathStats &stats,
                                     const Core &core) {
  std::ostringstream out;
  out << "vertex,class,ps,pt,p,p_frac,location,in_core,core_weight\n";
  const auto weights = detail::core_weights(g.size(), core);
  for (Vertex v = 0; v < g.size(); ++v) {
    const double frac =
        stats.has_paths() ? ratio(stats.p[v], stats.total) : 0.0;
    const auto loc = location(g, stats, v);
    out << detail::csv_field(g.id(v)) << ',' << to_string(g.vertex_class(v))
        << ',' << stats.ps[v] << ',' << stats.pt[v] << ',' << stats.p[v]
        << ',' << format_double(frac) << ','
        << (loc ? format_double(*loc) : std::string{}) << ','
        << (weights[v] >= 0.0 ? "true" : "false") << ','
        << format_double(std::max(weights[v], 0.0)) << '\n';
  }
  return out.str();
}

/// Rank group of a vertex in the DOT drawing: "source", "target", or
/// "interior_<k>" with k = floor(location * bins) clamped to bins - 1.
/// Empty for vertices without a location.
inline std::string location_bin(const DependencyNetwork &g,
                                const PathStats &stats, Vertex v,
                                std::size_t bins) {
  if (g.is_source(v))
    return "source";
  if (g.is_target(v))
    return "target";
  const auto loc = location(g, stats, v);
  if (!loc)
    return {};
  const auto k = std::min<std::size_t>(
      bins - 1, static_cast<std::size_t>(std::floor(*loc * static_cast<double>(bins))));
  return "interior_" + std::to_string(k);
}

/// Graphviz drawing: one same-rank group per location bin (sources at the
/// bottom, targets at the top), fill darkness growing with log(1 + P(v)),
/// and core members outlined in red.
inline std::string write_dot(const DependencyNetwork &g,
                             const PathStats &stats, const Core &core,
                             std::size_t bins = 12) {
  if (bins == 0)
    throw Error("location bins must be positive");
  std::vector<std::string> group_names{"source"};
  for (std::size_t k = 0; k < bins; ++k)
    group_names.push_back("interior_" + std::to_string(k));
  group_names.push_back("target");
  std::vector<std::vector<Vertex>> groups(group_names.size());
  for (Vertex v = 0; v < g.size(); ++v) {
    const auto bin = location_bin(g, stats, v, bins);
    const auto it = std::find(group_names.begin(), group_names.end(), bin);
    if (it != group_names.end())
      groups[static_cast<std::size_t>(it - group_names.begin())].push_back(v);
  }

  double max_log = 0.0;
  for (Vertex v = 0; v < g.size(); ++v)
    if (stats.p[v] > 0)
      max_log = std::max(max_log, log_count(stats.p[v] + 1));
  const auto weights = detail::core_weights(g.size(), core);

  std::ostringstream out;
  out << "digraph hourglass {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=ellipse, style=filled];\n";
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].empty())
      continue;
    out << "  subgraph " << detail::dot_quote(group_names[i])
        << " {\n    rank=same;\n";
    for (Vertex v : groups[i])
      out << "    " << detail::dot_quote(g.id(v)) << ";\n";
    out << "  }\n";
  }
  for (Vertex v = 0; v < g.size(); ++v) {
    out << "  " << detail::dot_quote(g.id(v)) << " [";
    if (stats.p[v] == 0) {
      out << "fillcolor=white, style=\"filled,dotted\"";
    } else {
      const double shade =
          max_log > 0.0 ? log_count(stats.p[v] + 1) / max_log : 0.0;
      const int level = static_cast<int>(std::lround(95.0 - 65.0 * shade));
      out << "fillcolor=gray" << level;
      if (level < 60)
        out << ", fontcolor=white";
    }
    if (weights[v] >= 0.0)
      out << ", color=red, penwidth=3";
    out << "];\n";
  }
  for (const auto &[u, v] : g.edges())
    out << "  " << detail::dot_quote(g.id(u)) << " -> "
        << detail::dot_quote(g.id(v)) << ";\n";
  out << "}\n";
  return out.str();
}

} // namespace hourglass

#endif // HOURGLASS_IO_HPP
