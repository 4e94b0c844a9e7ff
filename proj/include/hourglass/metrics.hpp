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

#ifndef HOURGLASS_METRICS_HPP
#define HOURGLASS_METRICS_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "hourglass/centrality.hpp"
#include "hourglass/core.hpp"
#include "hourglass/error.hpp"
#include "hourglass/graph.hpp"
#include "hourglass/random.hpp"

namespace hourglass {

/// The non-hierarchical baseline: sources and targets only, with an edge
/// s -> t whenever s is an ancestor of t.
inline DependencyNetwork flatten(const DependencyNetwork &g) {
  std::vector<Vertex> sources;
  std::vector<std::uint32_t> slot(g.size(), 0);
  for (Vertex v = 0; v < g.size(); ++v) {
    if (g.is_source(v)) {
      slot[v] = static_cast<std::uint32_t>(sources.size());
      sources.push_back(v);
    }
  }
  if (sources.empty())
    throw Error("no ST-paths");

  // reach[v] is a bitset over `sources`
  const std::size_t words = (sources.size() + 63) / 64;
  std::vector<std::uint64_t> reach(g.size() * words, 0);
  auto row = [&](Vertex v) { return reach.data() + v * words; };
  for (Vertex v : g.topological_order()) {
    if (g.is_source(v))
      row(v)[slot[v] / 64] |= std::uint64_t{1} << (slot[v] % 64);
    for (Vertex w : g.out(v)) {
      auto *dst = row(w);
      const auto *src = row(v);
      for (std::size_t i = 0; i < words; ++i)
        dst[i] |= src[i];
    }
  }

  std::vector<std::string> ids;
  std::vector<std::vector<std::string>> members;
  std::vector<Vertex> kept(g.size(), 0);
  for (Vertex v = 0; v < g.size(); ++v) {
    if (!g.is_source(v) && !g.is_target(v))
      continue;
    kept[v] = static_cast<Vertex>(ids.size());
    ids.push_back(g.id(v));
    members.push_back(g.members(v));
  }
  std::vector<Edge> edges;
  for (Vertex t = 0; t < g.size(); ++t) {
    if (!g.is_target(t))
      continue;
    const auto *bits = row(t);
    for (std::size_t i = 0; i < sources.size(); ++i)
      if (bits[i / 64] >> (i % 64) & 1)
        edges.emplace_back(kept[sources[i]], kept[t]);
  }
  return DependencyNetwork::build(std::move(ids), std::move(members),
                                  std::move(edges));
}

/// Location of a core element: the vertex location, or for a
/// Path-Equivalent Set the median of its members' defined locations.
inline std::optional<double> element_location(const DependencyNetwork &g,
                                              const PathStats &stats,
                                              const CoreElement &element) {
  std::vector<double> locs;
  for (Vertex v : element.members)
    if (auto l = location(g, stats, v))
      locs.push_back(*l);
  if (locs.empty())
    return std::nullopt;
  std::sort(locs.begin(), locs.end());
  const std::size_t mid = locs.size() / 2;
  if (locs.size() % 2 == 1)
    return locs[mid];
  return (locs[mid - 1] + locs[mid]) / 2.0;
}

struct LocationSample {
  double location = 0.0;
  double weight = 0.0;

  bool operator==(const LocationSample &) const = default;
};

/// Weighted location of every core element with a defined location.
inline std::vector<LocationSample>
core_location_samples(const DependencyNetwork &g, const PathStats &stats,
                      const Core &core) {
  std::vector<LocationSample> samples;
  for (const auto &e : core.elements)
    if (auto l = element_location(g, stats, e))
      samples.push_back({*l, e.weight});
  return samples;
}

/// Coverage-weighted mean location of the core elements.
inline double avg_core_location(const DependencyNetwork &g,
                                const PathStats &stats, const Core &core) {
  if (core.elements.empty())
    throw Error("empty core has no location");
  double num = 0.0;
  double den = 0.0;
  for (const auto &s : core_location_samples(g, stats, core)) {
    num += s.weight * s.location;
    den += s.weight;
  }
  if (den == 0.0)
    throw Error("no core element has a defined location");
  return num / den;
}

/// Fraction of the vertices on ST-paths that reach, or are reached from, a
/// core member. Core members count as covered.
inline double core_vertex_coverage(const DependencyNetwork &g,
                                   const PathStats &stats, const Core &core) {
  std::vector<char> seen(g.size(), 0);
  std::vector<Vertex> stack;
  for (bool forward : {true, false}) {
    std::vector<char> visited(g.size(), 0);
    for (Vertex v : core.vertices()) {
      visited[v] = 1;
      stack.push_back(v);
    }
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      seen[v] = 1;
      for (Vertex w : forward ? g.out(v) : g.in(v))
        if (!visited[w]) {
          visited[w] = 1;
          stack.push_back(w);
        }
    }
  }
  std::size_t on_paths = 0;
  std::size_t covered = 0;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (stats.p[v] == 0)
      continue;
    ++on_paths;
    covered += seen[v];
  }
  if (on_paths == 0)
    throw Error("no vertex lies on an ST-path");
  return static_cast<double>(covered) / static_cast<double>(on_paths);
}

namespace detail {

// Core of a flat network built from one side only. Every flat path is a
// single source-target edge, so taking that side in descending path count is
// the smallest one-sided core. Ties keep ascending vertex order.
inline Core one_sided_core(const DependencyNetwork &flat,
                           const PathStats &stats, double tau,
                           bool use_sources) {
  std::vector<Vertex> side;
  for (Vertex v = 0; v < flat.size(); ++v)
    if (use_sources ? flat.is_source(v) : flat.is_target(v))
      side.push_back(v);
  std::stable_sort(side.begin(), side.end(), [&](Vertex a, Vertex b) {
    return stats.p[a] > stats.p[b];
  });
  ResidualPaths residual(flat, stats);
  Core core = empty_core(stats, tau);
  for (Vertex v : side) {
    if (done(core, residual))
      break;
    add_element(core, residual, {v});
  }
  return core;
}

} // namespace detail

/// Core of a flat network: the greedy core, unless taking only sources or
/// only targets yields a strictly smaller one. This keeps C_f within
/// min(|S|, |T|), which plain greedy does not guarantee.
inline Core flat_core(const DependencyNetwork &flat, const PathStats &stats,
                      const CoreOptions &options = {}) {
  Core best = greedy_core(flat, stats, options);
  for (bool use_sources : {true, false}) {
    Core side = detail::one_sided_core(flat, stats, options.tau, use_sources);
    if (side.size() < best.size())
      best = std::move(side);
  }
  return best;
}

/// H = 1 - C/C_f for a core of size `core` and a flat core of size `flat`.
inline double h_from_sizes(std::size_t core, std::size_t flat) {
  if (flat == 0)
    throw Error("flat core is empty");
  return 1.0 - static_cast<double>(core) / static_cast<double>(flat);
}

struct HourglassReport {
  std::size_t core_size = 0;      // C(tau)
  std::size_t flat_core_size = 0; // C_f(tau)
  double h_score = 0.0;           // 1 - C/C_f, may be negative for tau < 1
  double core_vertex_coverage = 0.0;
  double avg_core_location = 0.0;
  std::vector<LocationSample> location_samples;
  Core core;
  Core flat_core;
  DependencyNetwork flat; // the flattened network flat_core refers to
};

/// Cores of `g` and of its flattened network under the same tau and tie
/// policy. With seeded ties the flat run uses a sub-stream forked from the
/// same seed.
inline HourglassReport h_score(const DependencyNetwork &g,
                               const PathStats &stats,
                               const CoreOptions &options = {}) {
  detail::check_tau(options.tau);
  if (!stats.has_paths())
    throw Error("no ST-paths");
  auto flat = flatten(g);
  const auto flat_stats = compute_path_stats(flat);

  CoreOptions flat_options = options;
  flat_options.ties.seed = fork_seed(options.ties.seed, 1);

  HourglassReport r;
  r.core = greedy_core(g, stats, options);
  r.flat_core = flat_core(flat, flat_stats, flat_options);
  r.flat = std::move(flat);
  r.core_size = r.core.size();
  r.flat_core_size = r.flat_core.size();
  r.h_score = h_from_sizes(r.core_size, r.flat_core_size);
  r.core_vertex_coverage = core_vertex_coverage(g, stats, r.core);
  r.avg_core_location = avg_core_location(g, stats, r.core);
  r.location_samples = core_location_samples(g, stats, r.core);
  return r;
}

inline HourglassReport h_score(const DependencyNetwork &g,
                               const CoreOptions &options = {}) {
  return h_score(g, compute_path_stats(g), options);
}

} // namespace hourglass

#endif // HOURGLASS_METRICS_HPP
