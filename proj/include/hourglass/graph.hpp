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

#ifndef HOURGLASS_GRAPH_HPP
#define HOURGLASS_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hourglass/error.hpp"

namespace hourglass {

/// Dense vertex index. Within a network, indices follow the lexicographic
/// order of vertex ids, so "smallest id" and "smallest index" coincide.
using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;
using NamedEdge = std::pair<std::string, std::string>;

/// The directed graph as ingested, possibly cyclic. An edge (u, v) means
/// "v depends on u".
struct RawDigraph {
  std::vector<std::string> vertices; // sorted, unique
  std::vector<Edge> edges;           // sorted, unique, no self-loops
  std::size_t self_loops_dropped = 0;
  std::size_t duplicate_edges = 0;

  std::size_t size() const noexcept { return vertices.size(); }

  std::optional<Vertex> find(std::string_view id) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), id);
    if (it == vertices.end() || *it != id)
      return std::nullopt;
    return static_cast<Vertex>(it - vertices.begin());
  }
};

/// Collapses duplicate edges and drops self-loops (both are tallied). Every
/// endpoint becomes a vertex, including the endpoint of a dropped self-loop.
/// `extra_vertices` adds vertices with no edges.
inline RawDigraph build_raw(std::span<const NamedEdge> edge_pairs,
                            std::span<const std::string> extra_vertices = {}) {
  if (edge_pairs.empty() && extra_vertices.empty())
    throw Error("empty graph");

  RawDigraph g;
  g.vertices.reserve(2 * edge_pairs.size() + extra_vertices.size());
  for (const auto &[u, v] : edge_pairs) {
    g.vertices.push_back(u);
    g.vertices.push_back(v);
  }
  g.vertices.insert(g.vertices.end(), extra_vertices.begin(),
                    extra_vertices.end());
  std::sort(g.vertices.begin(), g.vertices.end());
  g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()),
                   g.vertices.end());

  g.edges.reserve(edge_pairs.size());
  for (const auto &[u, v] : edge_pairs) {
    if (u == v) {
      ++g.self_loops_dropped;
      continue;
    }
    g.edges.emplace_back(*g.find(u), *g.find(v));
  }
  std::sort(g.edges.begin(), g.edges.end());
  const auto before = g.edges.size();
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  g.duplicate_edges = before - g.edges.size();
  return g;
}

enum class VertexClass { Source, Intermediate, Target, Isolated };

inline std::string_view to_string(VertexClass c) {
  switch (c) {
  case VertexClass::Source:
    return "source";
  case VertexClass::Intermediate:
    return "intermediate";
  case VertexClass::Target:
    return "target";
  case VertexClass::Isolated:
    return "isolated";
  }
  return "?";
}

struct ClassCounts {
  std::size_t sources = 0;
  std::size_t intermediates = 0;
  std::size_t targets = 0;
  std::size_t isolated = 0;

  bool operator==(const ClassCounts &) const = default;
};

namespace detail {

inline VertexClass class_from_degrees(std::size_t in, std::size_t out) {
  if (in == 0 && out == 0)
    return VertexClass::Isolated;
  if (in == 0)
    return VertexClass::Source;
  if (out == 0)
    return VertexClass::Target;
  return VertexClass::Intermediate;
}

inline void tally(ClassCounts &counts, VertexClass c) {
  switch (c) {
  case VertexClass::Source:
    ++counts.sources;
    break;
  case VertexClass::Intermediate:
    ++counts.intermediates;
    break;
  case VertexClass::Target:
    ++counts.targets;
    break;
  case VertexClass::Isolated:
    ++counts.isolated;
    break;
  }
}

// Compressed adjacency: neighbours of v are targets[offsets[v], offsets[v+1]).
struct Csr {
  std::vector<std::uint32_t> offsets;
  std::vector<Vertex> targets;

  std::span<const Vertex> operator[](Vertex v) const {
    return {targets.data() + offsets[v], offsets[v + 1] - offsets[v]};
  }
};

// `edges` must be sorted by (first, second) for sorted neighbour lists when
// `reverse` is false.
inline Csr make_csr(std::size_t n, std::span<const Edge> edges, bool reverse) {
  Csr csr;
  csr.offsets.assign(n + 1, 0);
  for (const auto &[u, v] : edges)
    ++csr.offsets[(reverse ? v : u) + 1];
  std::partial_sum(csr.offsets.begin(), csr.offsets.end(),
                   csr.offsets.begin());
  csr.targets.resize(edges.size());
  auto cursor = csr.offsets;
  for (const auto &[u, v] : edges) {
    const Vertex from = reverse ? v : u;
    const Vertex to = reverse ? u : v;
    csr.targets[cursor[from]++] = to;
  }
  for (std::size_t v = 0; v < n; ++v)
    std::sort(csr.targets.begin() + csr.offsets[v],
              csr.targets.begin() + csr.offsets[v + 1]);
  return csr;
}

} // namespace detail

/// A condensed, acyclic dependency network. Immutable once built; every
/// transformation returns a new network.
class DependencyNetwork {
public:
  DependencyNetwork() = default;

  /// Builds a network from ids (any order, unique), their member sets, and
  /// edges given as positions into `ids`. Duplicate edges are collapsed.
  /// Throws InvariantViolation on a self-loop or a cycle.
  static DependencyNetwork build(std::vector<std::string> ids,
                                 std::vector<std::vector<std::string>> members,
                                 std::vector<Edge> edges) {
    const std::size_t n = ids.size();
    if (members.size() != n)
      throw InvariantViolation("member list does not match vertex list");

    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::sort(order.begin(), order.end(),
              [&](Vertex a, Vertex b) { return ids[a] < ids[b]; });
    std::vector<Vertex> rank(n);
    DependencyNetwork g;
    g.ids_.reserve(n);
    g.members_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      rank[order[i]] = static_cast<Vertex>(i);
      g.ids_.push_back(std::move(ids[order[i]]));
      auto &m = members[order[i]];
      std::sort(m.begin(), m.end());
      g.members_.push_back(std::move(m));
      if (i > 0 && g.ids_[i - 1] == g.ids_[i])
        throw InvariantViolation("duplicate vertex id '" + g.ids_[i] + "'");
    }
    for (auto &[u, v] : edges) {
      u = rank[u];
      v = rank[v];
      if (u == v)
        throw InvariantViolation("self-loop on '" + g.ids_[u] + "'");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges_ = std::move(edges);
    g.out_ = detail::make_csr(n, g.edges_, false);
    g.in_ = detail::make_csr(n, g.edges_, true);

    g.classes_.resize(n);
    for (Vertex v = 0; v < n; ++v) {
      g.classes_[v] =
          detail::class_from_degrees(g.in_[v].size(), g.out_[v].size());
      detail::tally(g.counts_, g.classes_[v]);
    }
    g.sort_topologically();
    return g;
  }

  /// Convenience builder from named edges; every plain vertex is its own
  /// singleton member set.
  static DependencyNetwork from_edges(std::span<const NamedEdge> named,
                                      std::span<const std::string> isolated = {}) {
    std::vector<std::string> ids;
    for (const auto &[u, v] : named) {
      ids.push_back(u);
      ids.push_back(v);
    }
    ids.insert(ids.end(), isolated.begin(), isolated.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto index = [&](const std::string &s) {
      return static_cast<Vertex>(
          std::lower_bound(ids.begin(), ids.end(), s) - ids.begin());
    };
    std::vector<Edge> edges;
    edges.reserve(named.size());
    for (const auto &[u, v] : named)
      edges.emplace_back(index(u), index(v));
    std::vector<std::vector<std::string>> members;
    members.reserve(ids.size());
    for (const auto &id : ids)
      members.push_back({id});
    return build(std::move(ids), std::move(members), std::move(edges));
  }

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  const std::string &id(Vertex v) const { return ids_[v]; }
  const std::vector<std::string> &ids() const noexcept { return ids_; }
  const std::vector<std::string> &members(Vertex v) const {
    return members_[v];
  }
  bool is_super_vertex(Vertex v) const { return members_[v].size() > 1; }

  std::optional<Vertex> find(std::string_view id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id)
      return std::nullopt;
    return static_cast<Vertex>(it - ids_.begin());
  }

  /// Vertices that depend directly on v.
  std::span<const Vertex> out(Vertex v) const { return out_[v]; }
  /// Vertices v depends on directly.
  std::span<const Vertex> in(Vertex v) const { return in_[v]; }
  const std::vector<Edge> &edges() const noexcept { return edges_; }

  VertexClass vertex_class(Vertex v) const { return classes_[v]; }
  bool is_source(Vertex v) const {
    return classes_[v] == VertexClass::Source;
  }
  bool is_target(Vertex v) const {
    return classes_[v] == VertexClass::Target;
  }
  const ClassCounts &class_counts() const noexcept { return counts_; }

  /// Topological order (dependencies first).
  std::span<const Vertex> topological_order() const { return topo_; }
  std::uint32_t topological_position(Vertex v) const { return topo_pos_[v]; }

  /// Subgraph induced by `keep`; ids and member sets are preserved and
  /// classes are recomputed.
  DependencyNetwork induced(std::span<const Vertex> keep) const {
    std::vector<Vertex> remap(size(), kAbsent);
    std::vector<std::string> ids;
    std::vector<std::vector<std::string>> members;
    for (Vertex v : keep) {
      if (remap[v] != kAbsent)
        continue;
      remap[v] = static_cast<Vertex>(ids.size());
      ids.push_back(ids_[v]);
      members.push_back(members_[v]);
    }
    std::vector<Edge> edges;
    for (const auto &[u, v] : edges_)
      if (remap[u] != kAbsent && remap[v] != kAbsent)
        edges.emplace_back(remap[u], remap[v]);
    return build(std::move(ids), std::move(members), std::move(edges));
  }

private:
  static constexpr Vertex kAbsent = ~Vertex{0};

  void sort_topologically() {
    const std::size_t n = size();
    std::vector<std::uint32_t> pending(n);
    topo_.clear();
    topo_.reserve(n);
    for (Vertex v = 0; v < n; ++v) {
      pending[v] = static_cast<std::uint32_t>(in_[v].size());
      if (pending[v] == 0)
        topo_.push_back(v);
    }
    for (std::size_t head = 0; head < topo_.size(); ++head)
      for (Vertex w : out_[topo_[head]])
        if (--pending[w] == 0)
          topo_.push_back(w);
    if (topo_.size() != n)
      throw InvariantViolation("dependency network contains a cycle");
    topo_pos_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      topo_pos_[topo_[i]] = static_cast<std::uint32_t>(i);
  }

  std::vector<std::string> ids_;
  std::vector<std::vector<std::string>> members_;
  std::vector<Edge> edges_;
  detail::Csr out_;
  detail::Csr in_;
  std::vector<VertexClass> classes_;
  ClassCounts counts_;
  std::vector<Vertex> topo_;
  std::vector<std::uint32_t> topo_pos_;
};

struct Classification {
  std::vector<VertexClass> classes;
  ClassCounts counts;
};

/// Source: in 0, out >= 1. Target: out 0, in >= 1. Isolated: both 0.
inline Classification classify(const DependencyNetwork &g) {
  Classification result;
  result.classes.reserve(g.size());
  for (Vertex v = 0; v < g.size(); ++v) {
    const auto c = detail::class_from_degrees(g.in(v).size(), g.out(v).size());
    result.classes.push_back(c);
    detail::tally(result.counts, c);
  }
  return result;
}

struct CondensationReport {
  std::size_t super_vertex_count = 0;
  std::vector<std::size_t> sizes; // in vertex-id order of the super-vertices
  double size_mean = 0.0;
  double size_std = 0.0; // population standard deviation
};

namespace detail {

// Iterative Tarjan. Returns the component index of each vertex; components
// are numbered in reverse topological order of the condensation.
inline std::vector<std::uint32_t> strong_components(const Csr &out,
                                                    std::size_t n,
                                                    std::size_t &count) {
  constexpr std::uint32_t kUnvisited = ~std::uint32_t{0};
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<Vertex> stack;
  std::vector<char> on_stack(n, 0);
  std::vector<std::pair<Vertex, std::uint32_t>> call; // (vertex, next edge)
  std::uint32_t next_index = 0;
  count = 0;

  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != kUnvisited)
      continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto &[v, edge] = call.back();
      if (edge == 0 && index[v] == kUnvisited) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = 1;
      }
      const auto succ = out[v];
      if (edge < succ.size()) {
        const Vertex w = succ[edge++];
        if (index[w] == kUnvisited) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = static_cast<std::uint32_t>(count);
        } while (w != v);
        ++count;
      }
      const Vertex done = v;
      call.pop_back();
      if (!call.empty()) {
        const Vertex parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return comp;
}

inline std::string super_vertex_id(const std::vector<std::string> &members) {
  const auto shortest = std::min_element(
      members.begin(), members.end(), [](const auto &a, const auto &b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
      });
  return "scc:" + *shortest + ":" + std::to_string(members.size());
}

} // namespace detail

/// Replaces every strongly connected component of two or more vertices with
/// one super-vertex named "scc:<shortest member>:<member count>". Edges
/// internal to a component are discarded; re-attached duplicates collapse.
inline std::pair<DependencyNetwork, CondensationReport>
condense(const RawDigraph &g) {
  if (g.size() == 0)
    throw Error("empty graph");
  const std::size_t n = g.size();
  const auto out = detail::make_csr(n, g.edges, false);
  std::size_t count = 0;
  const auto comp = detail::strong_components(out, n, count);

  std::vector<std::vector<std::string>> members(count);
  for (Vertex v = 0; v < n; ++v)
    members[comp[v]].push_back(g.vertices[v]);

  std::vector<std::string> ids;
  ids.reserve(count);
  for (const auto &m : members)
    ids.push_back(m.size() == 1 ? m.front() : detail::super_vertex_id(m));

  std::vector<Edge> edges;
  edges.reserve(g.edges.size());
  for (const auto &[u, v] : g.edges)
    if (comp[u] != comp[v])
      edges.emplace_back(comp[u], comp[v]);

  auto network = DependencyNetwork::build(std::move(ids), std::move(members),
                                          std::move(edges));
  CondensationReport report;
  for (Vertex v = 0; v < network.size(); ++v)
    if (network.is_super_vertex(v))
      report.sizes.push_back(network.members(v).size());
  report.super_vertex_count = report.sizes.size();
  if (!report.sizes.empty()) {
    const double k = static_cast<double>(report.sizes.size());
    double sum = 0.0;
    for (auto s : report.sizes)
      sum += static_cast<double>(s);
    report.size_mean = sum / k;
    double sq = 0.0;
    for (auto s : report.sizes)
      sq += (static_cast<double>(s) - report.size_mean) *
            (static_cast<double>(s) - report.size_mean);
    report.size_std = std::sqrt(sq / k);
  }
  return {std::move(network), std::move(report)};
}

/// The largest weakly connected component. Among equally large components
/// the one holding the smallest vertex id wins.
inline DependencyNetwork largest_wcc(const DependencyNetwork &g) {
  if (g.empty())
    throw Error("empty graph");
  std::vector<Vertex> parent(g.size());
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto root = [&](Vertex v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const auto &[u, v] : g.edges()) {
    const Vertex a = root(u), b = root(v);
    if (a != b)
      parent[std::max(a, b)] = std::min(a, b); // root is the smallest index
  }
  std::vector<std::size_t> size(g.size(), 0);
  for (Vertex v = 0; v < g.size(); ++v)
    ++size[root(v)];
  Vertex best = 0;
  for (Vertex v = 0; v < g.size(); ++v)
    if (size[v] > size[best])
      best = v;
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.size(); ++v)
    if (root(v) == best)
      keep.push_back(v);
  if (keep.size() == g.size())
    return g;
  return g.induced(keep);
}

struct ExclusionResult {
  DependencyNetwork network;
  std::size_t unknown_names = 0;
};

/// Removes the named vertices and their incident edges. Names that match no
/// vertex id are counted, not rejected.
inline ExclusionResult exclude_vertices(const DependencyNetwork &g,
                                        const std::set<std::string> &names) {
  ExclusionResult result;
  std::vector<char> drop(g.size(), 0);
  for (const auto &name : names) {
    if (auto v = g.find(name))
      drop[*v] = 1;
    else
      ++result.unknown_names;
  }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.size(); ++v)
    if (!drop[v])
      keep.push_back(v);
  result.network = keep.size() == g.size() ? g : g.induced(keep);
  return result;
}

/// Raw-graph variant, for removing vertices before condensation.
inline std::pair<RawDigraph, std::size_t>
exclude_vertices(const RawDigraph &g, const std::set<std::string> &names) {
  std::size_t unknown = 0;
  std::vector<char> drop(g.size(), 0);
  for (const auto &name : names) {
    if (auto v = g.find(name))
      drop[*v] = 1;
    else
      ++unknown;
  }
  RawDigraph out;
  out.self_loops_dropped = g.self_loops_dropped;
  out.duplicate_edges = g.duplicate_edges;
  std::vector<Vertex> remap(g.size(), 0);
  for (Vertex v = 0; v < g.size(); ++v) {
    if (drop[v])
      continue;
    remap[v] = static_cast<Vertex>(out.vertices.size());
    out.vertices.push_back(g.vertices[v]);
  }
  for (const auto &[u, v] : g.edges)
    if (!drop[u] && !drop[v])
      out.edges.emplace_back(remap[u], remap[v]);
  return {std::move(out), unknown};
}

} // namespace hourglass

#endif // HOURGLASS_GRAPH_HPP
