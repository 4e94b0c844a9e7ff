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


// Test support: seeded random graphs and a brute-force ST-path oracle that
// enumerates every path explicitly, independent of the counting code.

#ifndef HOURGLASS_TESTS_SUPPORT_HPP
#define HOURGLASS_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <random>
#include <string>
#include <vector>

#include "hourglass/hourglass.hpp"

namespace hourglass::testing {

inline std::string vertex_name(std::size_t i) {
  return (i < 10 ? "v0" : "v") + std::to_string(i);
}

/// Random DAG on n vertices: pair (i, j), i < j in a hidden order, becomes
/// an edge with probability p. Names are shuffled so that the id order and
/// the topological order disagree.
inline DependencyNetwork random_dag(std::size_t n, double p,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), std::size_t{0});
  std::shuffle(label.begin(), label.end(), rng);
  std::bernoulli_distribution coin(p);
  std::vector<NamedEdge> edges;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(vertex_name(label[i]));
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng))
        edges.emplace_back(vertex_name(label[i]), vertex_name(label[j]));
  }
  return DependencyNetwork::from_edges(edges, names);
}

/// Random DAG with at least one ST-path.
inline DependencyNetwork random_dag_with_paths(std::size_t n, double p,
                                               std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    auto g = random_dag(n, p, seed * 7919 + attempt);
    if (g.edge_count() > 0)
      return g;
  }
}

/// Random directed graph, cycles and self-loops allowed.
inline std::vector<NamedEdge> random_digraph(std::size_t n, double p,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<NamedEdge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (coin(rng))
        edges.emplace_back("n" + std::to_string(i), "n" + std::to_string(j));
  return edges;
}

/// Every ST-path of a small network, as a vertex bitmask and a hop count.
struct PathOracle {
  std::vector<std::uint32_t> masks;
  std::vector<std::size_t> hops;
  std::vector<std::uint64_t> p; // paths through each vertex

  explicit PathOracle(const DependencyNetwork &g) {
    const std::size_t n = g.size();
    std::vector<std::vector<Vertex>> out(n);
    std::vector<std::size_t> indeg(n, 0);
    for (const auto &[u, v] : g.edges()) {
      out[u].push_back(v);
      ++indeg[v];
    }
    p.assign(n, 0);
    std::vector<Vertex> path;
    for (Vertex s = 0; s < n; ++s)
      if (indeg[s] == 0 && !out[s].empty()) {
        path.assign(1, s);
        walk(out, path);
      }
  }

  std::uint64_t total() const { return masks.size(); }

  /// Paths that meet at least one vertex of `r`.
  std::uint64_t covered(std::uint32_t r) const {
    return static_cast<std::uint64_t>(
        std::count_if(masks.begin(), masks.end(),
                      [&](std::uint32_t m) { return (m & r) != 0; }));
  }

  /// Paths through v, as a sorted list of path indices.
  std::vector<std::size_t> paths_through(Vertex v) const {
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < masks.size(); ++i)
      if (masks[i] >> v & 1)
        ids.push_back(i);
    return ids;
  }

  /// Largest coverage (in paths) of any k-subset, by exhaustive search.
  std::uint64_t best_cover(std::size_t n, std::size_t k) const {
    if (k >= n)
      return total();
    std::uint64_t best = 0;
    for (std::uint32_t r = 0; r < (std::uint32_t{1} << n); ++r)
      if (static_cast<std::size_t>(__builtin_popcount(r)) == k)
        best = std::max(best, covered(r));
    return best;
  }

private:
  void walk(const std::vector<std::vector<Vertex>> &out,
            std::vector<Vertex> &path) {
    const Vertex last = path.back();
    if (out[last].empty()) {
      std::uint32_t mask = 0;
      for (Vertex v : path) {
        mask |= std::uint32_t{1} << v;
        ++p[v];
      }
      masks.push_back(mask);
      hops.push_back(path.size() - 1);
      return;
    }
    for (Vertex w : out[last]) {
      path.push_back(w);
      walk(out, path);
      path.pop_back();
    }
  }
};

/// P_S and P_T by explicit enumeration of source-to-v and v-to-target paths.
struct PrefixOracle {
  std::vector<std::uint64_t> ps, pt;

  explicit PrefixOracle(const DependencyNetwork &g) {
    const std::size_t n = g.size();
    std::vector<std::vector<Vertex>> out(n), in(n);
    for (const auto &[u, v] : g.edges()) {
      out[u].push_back(v);
      in[v].push_back(u);
    }
    ps.assign(n, 0);
    pt.assign(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      if (in[v].empty() && out[v].empty())
        continue;
      ps[v] = count_walks(in, v);
      pt[v] = count_walks(out, v);
    }
  }

private:
  // Number of maximal walks from v following `adj` (ends where adj is empty).
  static std::uint64_t count_walks(const std::vector<std::vector<Vertex>> &adj,
                                   Vertex v) {
    if (adj[v].empty())
      return 1;
    std::uint64_t sum = 0;
    for (Vertex w : adj[v])
      sum += count_walks(adj, w);
    return sum;
  }
};

inline std::uint32_t mask_of(std::span<const Vertex> vs) {
  std::uint32_t m = 0;
  for (Vertex v : vs)
    m |= std::uint32_t{1} << v;
  return m;
}

inline std::vector<Vertex> vertices_of(std::uint32_t mask) {
  std::vector<Vertex> vs;
  for (Vertex v = 0; v < 32; ++v)
    if (mask >> v & 1)
      vs.push_back(v);
  return vs;
}

inline Vertex at(const DependencyNetwork &g, const std::string &id) {
  return g.find(id).value();
}

inline std::vector<std::string> names_of(const DependencyNetwork &g,
                                         std::span<const Vertex> vs) {
  std::vector<std::string> names;
  for (Vertex v : vs)
    names.push_back(g.id(v));
  return names;
}

inline DependencyNetwork diamond() {
  const std::vector<NamedEdge> e{
      {"s1", "a"}, {"s2", "a"}, {"a", "t1"}, {"a", "t2"}};
  return DependencyNetwork::from_edges(e);
}

inline DependencyNetwork chain() {
  const std::vector<NamedEdge> e{{"s", "m"}, {"m", "t"}};
  return DependencyNetwork::from_edges(e);
}

/// s -> t plus s -> m -> t.
inline DependencyNetwork shortcut() {
  const std::vector<NamedEdge> e{{"s", "t"}, {"s", "m"}, {"m", "t"}};
  return DependencyNetwork::from_edges(e);
}

} // namespace hourglass::testing

#endif // HOURGLASS_TESTS_SUPPORT_HPP
