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

#ifndef HOURGLASS_CORE_HPP
#define HOURGLASS_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "hourglass/bigcount.hpp"
#include "hourglass/centrality.hpp"
#include "hourglass/error.hpp"
#include "hourglass/graph.hpp"

namespace hourglass {

enum class TieMode { Deterministic, Seeded };

/// How ties between vertices with different path sets are broken.
/// Deterministic takes the group holding the smallest vertex id; Seeded
/// draws a group uniformly from a stream seeded with `seed`.
struct TiePolicy {
  TieMode mode = TieMode::Deterministic;
  std::uint64_t seed = 0;

  static TiePolicy deterministic() { return {}; }
  static TiePolicy seeded(std::uint64_t seed) {
    return {TieMode::Seeded, seed};
  }
};

struct CoreOptions {
  double tau = 0.9;
  TiePolicy ties;
  bool pes_grouping = true;
};

enum class ElementKind { Single, Pes };

struct CoreElement {
  ElementKind kind = ElementKind::Single;
  std::vector<Vertex> members; // ascending
  BigCount paths;              // residual ST-paths covered when added
  double weight = 0.0;         // paths / total
};

/// Greedy core: elements in selection order. A Path-Equivalent Set counts as
/// one element.
struct Core {
  std::vector<CoreElement> elements;
  BigCount covered;
  BigCount total;
  double coverage = 0.0;
  double tau = 0.0;
  std::size_t tie_events = 0; // cross-PES ties resolved by the tie policy

  std::size_t size() const noexcept { return elements.size(); }

  /// Every member of every element, ascending.
  std::vector<Vertex> vertices() const {
    std::vector<Vertex> all;
    for (const auto &e : elements)
      all.insert(all.end(), e.members.begin(), e.members.end());
    std::sort(all.begin(), all.end());
    return all;
  }
};

namespace detail {

inline void check_tau(double tau) {
  if (!(tau > 0.0 && tau <= 1.0))
    throw Error("tau must lie in (0, 1]");
}

// Coverage is compared as the rounded ratio, so a threshold written as a
// decimal behaves as written: 9 of 10 paths reach tau = 0.9 even though the
// binary value of 0.9 is slightly larger.
inline bool reaches(const BigCount &covered, const BigCount &total,
                    double tau) {
  return ratio(covered, total) >= tau;
}

} // namespace detail

/// ST-paths traversing at least one vertex of `r`: total minus the paths
/// that survive deleting `r`.
inline BigCount covered_paths(const DependencyNetwork &g,
                              const PathStats &stats,
                              std::span<const Vertex> r) {
  std::vector<char> removed(g.size(), 0);
  for (Vertex v : r)
    removed[v] = 1;
  return stats.total - count_paths_avoiding(g, removed);
}

/// Path coverage of `r`, in [0, 1].
inline double coverage(const DependencyNetwork &g, const PathStats &stats,
                       std::span<const Vertex> r) {
  if (!stats.has_paths())
    throw Error("no ST-paths");
  return ratio(covered_paths(g, stats, r), stats.total);
}

/// Partitions vertices tied at the maximum residual centrality into
/// Path-Equivalent Sets: take the smallest remaining vertex u, and every
/// tied vertex left on no ST-path once u is deleted joins u's set. Groups
/// come out ordered by their smallest member.
inline std::vector<std::vector<Vertex>>
identify_pes(ResidualPaths &residual, std::span<const Vertex> tied) {
  std::vector<Vertex> remaining(tied.begin(), tied.end());
  std::sort(remaining.begin(), remaining.end());
  std::vector<std::vector<Vertex>> groups;
  while (!remaining.empty()) {
    const Vertex u = remaining.front();
    std::vector<Vertex> group{u};
    if (remaining.size() > 1) {
      const auto rest = std::span<const Vertex>(remaining).subspan(1);
      auto zeroed = residual.zeroed_by(u, rest);
      group.insert(group.end(), zeroed.begin(), zeroed.end());
      std::sort(group.begin(), group.end());
    }
    std::vector<Vertex> next;
    std::set_difference(remaining.begin(), remaining.end(), group.begin(),
                        group.end(), std::back_inserter(next));
    remaining = std::move(next);
    groups.push_back(std::move(group));
  }
  return groups;
}

inline std::vector<std::vector<Vertex>>
identify_pes(const DependencyNetwork &g, const PathStats &stats,
             std::span<const Vertex> tied) {
  ResidualPaths residual(g, stats);
  return identify_pes(residual, tied);
}

namespace detail {

inline Core empty_core(const PathStats &stats, double tau) {
  Core core;
  core.total = stats.total;
  core.tau = tau;
  return core;
}

inline bool done(const Core &core, const ResidualPaths &residual) {
  return residual.total() == 0 ||
         reaches(core.covered, core.total, core.tau);
}

inline void add_element(Core &core, ResidualPaths &residual,
                        std::vector<Vertex> group) {
  CoreElement e;
  e.kind = group.size() > 1 ? ElementKind::Pes : ElementKind::Single;
  e.paths = residual.centrality(group.front());
  const BigCount lost = residual.remove(group);
  if (lost != e.paths)
    throw InvariantViolation("core element members are not path-equivalent");
  e.weight = ratio(e.paths, core.total);
  e.members = std::move(group);
  core.covered += e.paths;
  core.coverage = ratio(core.covered, core.total);
  core.elements.push_back(std::move(e));
}

inline std::vector<std::vector<Vertex>>
candidate_groups(ResidualPaths &residual, const std::vector<Vertex> &tied,
                 bool pes_grouping) {
  if (pes_grouping)
    return identify_pes(residual, tied);
  std::vector<std::vector<Vertex>> groups;
  for (Vertex v : tied)
    groups.push_back({v});
  return groups;
}

} // namespace detail

/// Greedy maximum-coverage core. Each round takes the vertex of maximum
/// residual path centrality (with its Path-Equivalent Set when grouping is
/// on), deletes it, and updates the counts; stops once coverage reaches tau.
inline Core greedy_core(const DependencyNetwork &g, const PathStats &stats,
                        const CoreOptions &options = {}) {
  detail::check_tau(options.tau);
  if (!stats.has_paths())
    throw Error("no ST-paths");

  ResidualPaths residual(g, stats);
  Core core = detail::empty_core(stats, options.tau);
  std::mt19937_64 rng(options.ties.seed);

  while (!detail::done(core, residual)) {
    auto tied = residual.max_centrality_vertices();
    std::vector<Vertex> chosen;
    if (tied.size() == 1) {
      chosen = std::move(tied);
    } else if (options.ties.mode == TieMode::Seeded) {
      auto groups =
          detail::candidate_groups(residual, tied, options.pes_grouping);
      std::size_t pick = 0;
      if (groups.size() > 1) {
        ++core.tie_events;
        pick = std::uniform_int_distribution<std::size_t>(
            0, groups.size() - 1)(rng);
      }
      chosen = std::move(groups[pick]);
    } else {
      // the group of the smallest tied vertex is the only one needed
      chosen.push_back(tied.front());
      if (options.pes_grouping) {
        auto zeroed = residual.zeroed_by(
            tied.front(), std::span<const Vertex>(tied).subspan(1));
        chosen.insert(chosen.end(), zeroed.begin(), zeroed.end());
        std::sort(chosen.begin(), chosen.end());
      }
      if (chosen.size() < tied.size())
        ++core.tie_events;
    }
    detail::add_element(core, residual, std::move(chosen));
  }
  return core;
}

/// Coverage after each greedy step when run to full coverage; entry k-1 is
/// the coverage of the first k elements.
inline std::vector<BigCount> greedy_prefix_paths(const DependencyNetwork &g,
                                                 const PathStats &stats,
                                                 TiePolicy ties = {},
                                                 bool pes_grouping = true) {
  const auto core = greedy_core(g, stats, {1.0, ties, pes_grouping});
  std::vector<BigCount> prefix;
  BigCount sum = 0;
  for (const auto &e : core.elements) {
    sum += e.paths;
    prefix.push_back(sum);
  }
  return prefix;
}

struct CoreEnumeration {
  std::vector<Core> cores; // sorted by element member sets
  bool truncated = false;
};

namespace detail {

using CoreKey = std::vector<std::vector<Vertex>>;

inline CoreKey core_key(const Core &core) {
  CoreKey key;
  for (const auto &e : core.elements)
    key.push_back(e.members);
  std::sort(key.begin(), key.end());
  return key;
}

struct Enumerator {
  std::size_t limit = 0;
  std::size_t max_leaves = 0;
  bool pes_grouping = true;
  std::size_t leaves = 0;
  bool stop = false;
  bool truncated = false;
  std::vector<std::pair<CoreKey, Core>> found;

  void record(Core core) {
    ++leaves;
    auto key = core_key(core);
    for (const auto &f : found)
      if (f.first == key)
        return;
    found.emplace_back(std::move(key), std::move(core));
  }

  void explore(ResidualPaths residual, Core core) {
    while (!stop) {
      if (done(core, residual)) {
        record(std::move(core));
        return;
      }
      auto tied = residual.max_centrality_vertices();
      auto groups = tied.size() == 1
                        ? std::vector<std::vector<Vertex>>{tied}
                        : candidate_groups(residual, tied, pes_grouping);
      if (groups.size() == 1) {
        add_element(core, residual, std::move(groups.front()));
        continue;
      }
      ++core.tie_events;
      for (auto &group : groups) {
        if (found.size() >= limit || leaves >= max_leaves) {
          truncated = true;
          stop = true;
          return;
        }
        ResidualPaths branch_residual = residual;
        Core branch = core;
        add_element(branch, branch_residual, std::move(group));
        explore(std::move(branch_residual), std::move(branch));
        if (stop)
          return;
      }
      return;
    }
  }
};

} // namespace detail

/// Every distinct core reachable through cross-PES tie-breaks, explored
/// depth-first. Cores with equal element member sets are reported once.
/// Stops after `limit` distinct cores (or 64 * limit leaves) and sets
/// `truncated` when branches were left unexplored.
inline CoreEnumeration enumerate_cores(const DependencyNetwork &g,
                                       const PathStats &stats,
                                       const CoreOptions &options,
                                       std::size_t limit = 64) {
  detail::check_tau(options.tau);
  if (limit == 0)
    throw Error("core enumeration limit must be positive");
  if (!stats.has_paths())
    throw Error("no ST-paths");

  detail::Enumerator enumerator;
  enumerator.limit = limit;
  enumerator.max_leaves = 64 * limit;
  enumerator.pes_grouping = options.pes_grouping;
  enumerator.explore(ResidualPaths(g, stats),
                     detail::empty_core(stats, options.tau));

  std::sort(enumerator.found.begin(), enumerator.found.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  CoreEnumeration result;
  result.truncated = enumerator.truncated;
  for (auto &f : enumerator.found)
    result.cores.push_back(std::move(f.second));
  return result;
}

struct BruteForceCore {
  BigCount covered;
  double coverage = 0.0;
  std::vector<Vertex> witness;
};

/// Best coverage over all k-subsets of vertices, by exhaustive search. Test
/// oracle; restricted to networks of at most 20 vertices.
inline BruteForceCore brute_force_core(const DependencyNetwork &g,
                                       const PathStats &stats, std::size_t k) {
  constexpr std::size_t kMaxVertices = 20;
  if (g.size() > kMaxVertices)
    throw Error("oracle restricted to small instances");
  if (!stats.has_paths())
    throw Error("no ST-paths");
  k = std::min(k, g.size());

  BruteForceCore best;
  std::vector<Vertex> pick(k);
  for (std::size_t i = 0; i < k; ++i)
    pick[i] = static_cast<Vertex>(i);
  const std::size_t n = g.size();
  bool first = true;
  while (true) {
    const BigCount covered = covered_paths(g, stats, pick);
    if (first || covered > best.covered) {
      best.covered = covered;
      best.witness = pick;
      first = false;
    }
    // next combination in lexicographic order
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1)
      --i;
    if (i == 0)
      break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j)
      pick[j] = pick[j - 1] + 1;
  }
  best.coverage = ratio(best.covered, stats.total);
  return best;
}

/// Mean pairwise Jaccard similarity of the vertex sets of `cores`.
inline double jaccard_core_similarity(std::span<const Core> cores) {
  if (cores.size() < 2)
    throw Error("jaccard similarity needs at least two cores");
  std::vector<std::vector<Vertex>> sets;
  for (const auto &c : cores)
    sets.push_back(c.vertices());
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      std::vector<Vertex> common, all;
      std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(),
                            sets[j].end(), std::back_inserter(common));
      std::set_union(sets[i].begin(), sets[i].end(), sets[j].begin(),
                     sets[j].end(), std::back_inserter(all));
      sum += all.empty() ? 1.0
                         : static_cast<double>(common.size()) /
                               static_cast<double>(all.size());
      ++pairs;
    }
  }
  return sum / static_cast<double>(pairs);
}

} // namespace hourglass

#endif // HOURGLASS_CORE_HPP
