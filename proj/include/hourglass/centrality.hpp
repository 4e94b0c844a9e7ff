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

#ifndef HOURGLASS_CENTRALITY_HPP
#define HOURGLASS_CENTRALITY_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "hourglass/bigcount.hpp"
#include "hourglass/error.hpp"
#include "hourglass/graph.hpp"

namespace hourglass {

/// Exact per-vertex path counts of a dependency network.
///
///   ps[v]  number of paths from any source to v   (complexity)
///   pt[v]  number of paths from v to any target   (generality)
///   p[v]   ps[v] * pt[v], the ST-paths through v  (path centrality)
///
/// Isolated vertices take part in no ST-path and carry zeros.
struct PathStats {
  std::vector<BigCount> ps;
  std::vector<BigCount> pt;
  std::vector<BigCount> p;
  std::vector<std::optional<double>> loc;
  BigCount total; // number of ST-paths

  bool has_paths() const { return total > 0; }
};

namespace detail {

// Location from exact counts. An intermediate whose counts are both 1 sits
// on a single chain; it is placed at the midpoint.
inline std::optional<double> location_from(VertexClass c, const BigCount &ps,
                                           const BigCount &pt) {
  if (c == VertexClass::Isolated || ps == 0 || pt == 0)
    return std::nullopt;
  if (c == VertexClass::Source)
    return 0.0;
  if (c == VertexClass::Target)
    return 1.0;
  const BigCount up = ps - 1;
  const BigCount down = pt - 1;
  if (up + down == 0)
    return 0.5;
  return ratio(up, up + down);
}

// Path counts over the vertices with alive[v] set. Sources and targets keep
// their class from `g`; a removed vertex breaks every path through it.
inline void count_paths(const DependencyNetwork &g,
                        const std::vector<char> &alive,
                        std::vector<BigCount> &ps, std::vector<BigCount> &pt) {
  const auto order = g.topological_order();
  ps.assign(g.size(), BigCount{0});
  pt.assign(g.size(), BigCount{0});
  for (Vertex v : order) {
    if (!alive[v] || g.vertex_class(v) == VertexClass::Isolated)
      continue;
    if (g.is_source(v)) {
      ps[v] = 1;
      continue;
    }
    for (Vertex u : g.in(v))
      if (alive[u])
        ps[v] += ps[u];
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    if (!alive[v] || g.vertex_class(v) == VertexClass::Isolated)
      continue;
    if (g.is_target(v)) {
      pt[v] = 1;
      continue;
    }
    for (Vertex w : g.out(v))
      if (alive[w])
        pt[v] += pt[w];
  }
}

} // namespace detail

/// Bottom-up pass for ps, top-down pass for pt, O(E) big-integer additions.
/// Checks that paths leaving sources and paths entering targets agree.
inline PathStats compute_path_stats(const DependencyNetwork &g) {
  PathStats s;
  const std::vector<char> alive(g.size(), 1);
  detail::count_paths(g, alive, s.ps, s.pt);
  s.p.resize(g.size());
  s.loc.resize(g.size());
  BigCount from_sources = 0;
  for (Vertex v = 0; v < g.size(); ++v) {
    s.p[v] = s.ps[v] * s.pt[v];
    s.loc[v] = detail::location_from(g.vertex_class(v), s.ps[v], s.pt[v]);
    if (g.is_source(v))
      from_sources += s.pt[v];
    else if (g.is_target(v))
      s.total += s.ps[v];
  }
  if (from_sources != s.total)
    throw InvariantViolation("path-count conservation failed");
  return s;
}

/// L(v) = (ps-1) / ((ps-1) + (pt-1)); 0 for sources, 1 for targets, empty
/// for vertices on no ST-path.
inline std::optional<double> location(const DependencyNetwork &g,
                                      const PathStats &stats, Vertex v) {
  return detail::location_from(g.vertex_class(v), stats.ps[v], stats.pt[v]);
}

/// Mean ST-path length in edges: every edge (u, v) lies on ps[u] * pt[v]
/// ST-paths.
inline double avg_st_path_length(const DependencyNetwork &g,
                                 const PathStats &stats) {
  if (!stats.has_paths())
    throw Error("no ST-paths");
  BigCount hops = 0;
  for (const auto &[u, v] : g.edges())
    hops += stats.ps[u] * stats.pt[v];
  return ratio(hops, stats.total);
}

/// Number of ST-paths that avoid every vertex with removed[v] set.
inline BigCount count_paths_avoiding(const DependencyNetwork &g,
                                     const std::vector<char> &removed) {
  std::vector<char> alive(g.size());
  for (Vertex v = 0; v < g.size(); ++v)
    alive[v] = !removed[v];
  std::vector<BigCount> ps, pt;
  detail::count_paths(g, alive, ps, pt);
  BigCount total = 0;
  for (Vertex v = 0; v < g.size(); ++v)
    if (g.is_target(v) && alive[v])
      total += ps[v];
  return total;
}

/// Path counts of a network from which vertices are deleted one batch at a
/// time. Sources and targets keep their original roles, so a count drops to
/// zero once every path through the vertex is broken.
///
/// A deletion only touches the descendants (ps) and ancestors (pt) of the
/// deleted vertices: the number of lost paths is pushed forward and backward
/// in topological order, so a batch costs time proportional to the edges of
/// the affected region rather than O(E).
class ResidualPaths {
public:
  ResidualPaths(const DependencyNetwork &g, const PathStats &stats)
      : g_(&g), ps_(stats.ps), pt_(stats.pt), p_(stats.p),
        total_(stats.total), alive_(g.size(), 1), delta_s_(g.size()),
        delta_t_(g.size()), mark_(g.size(), 0) {}

  const DependencyNetwork &network() const { return *g_; }
  bool alive(Vertex v) const { return alive_[v] != 0; }
  const BigCount &centrality(Vertex v) const { return p_[v]; }
  const BigCount &ps(Vertex v) const { return ps_[v]; }
  const BigCount &pt(Vertex v) const { return pt_[v]; }
  const BigCount &total() const { return total_; }

  /// Alive vertices with the largest non-zero centrality, ascending.
  std::vector<Vertex> max_centrality_vertices() const {
    std::vector<Vertex> tied;
    const BigCount *best = nullptr;
    for (Vertex v = 0; v < g_->size(); ++v) {
      if (!alive_[v] || p_[v] == 0)
        continue;
      if (best == nullptr || p_[v] > *best) {
        best = &p_[v];
        tied.clear();
        tied.push_back(v);
      } else if (p_[v] == *best) {
        tied.push_back(v);
      }
    }
    return tied;
  }

  /// Deletes `batch`; returns the number of ST-paths that are lost.
  BigCount remove(std::span<const Vertex> batch) {
    propagate(batch);
    BigCount lost = 0;
    for (Vertex v : touched_s_) {
      if (g_->is_target(v))
        lost += delta_s_[v];
      ps_[v] -= delta_s_[v];
    }
    for (Vertex v : touched_t_)
      pt_[v] -= delta_t_[v];
    for (auto *list : {&touched_s_, &touched_t_})
      for (Vertex v : *list)
        p_[v] = ps_[v] * pt_[v];
    for (Vertex v : batch) {
      alive_[v] = 0;
      ps_[v] = pt_[v] = p_[v] = 0;
    }
    total_ -= lost;
    reset(batch);
    return lost;
  }

  /// Which of `candidates` would end up on no ST-path if `u` alone were
  /// deleted. Leaves the state unchanged.
  std::vector<Vertex> zeroed_by(Vertex u, std::span<const Vertex> candidates) {
    const Vertex batch[] = {u};
    propagate(batch);
    std::vector<Vertex> zeroed;
    for (Vertex c : candidates) {
      if (c == u)
        continue;
      if ((mark_[c] & kTouchedS) && delta_s_[c] == ps_[c])
        zeroed.push_back(c);
      else if ((mark_[c] & kTouchedT) && delta_t_[c] == pt_[c])
        zeroed.push_back(c);
    }
    reset(batch);
    return zeroed;
  }

  /// Counts recomputed from scratch on the alive subgraph (reference route).
  void recompute(std::vector<BigCount> &ps, std::vector<BigCount> &pt) const {
    detail::count_paths(*g_, alive_, ps, pt);
  }

private:
  static constexpr char kTouchedS = 1;
  static constexpr char kTouchedT = 2;
  static constexpr char kInBatch = 4;

  // delta_s_[v]: paths from sources to v through the batch; delta_t_[v]:
  // paths from v to targets through the batch.
  void propagate(std::span<const Vertex> batch) {
    const auto &g = *g_;
    auto pos = [&](Vertex v) { return g.topological_position(v); };
    for (Vertex v : batch)
      mark_[v] |= kInBatch;

    {
      std::priority_queue<std::uint32_t, std::vector<std::uint32_t>,
                          std::greater<>>
          heap;
      for (Vertex v : batch) {
        if (!alive_[v] || ps_[v] == 0)
          continue;
        delta_s_[v] = ps_[v];
        mark_[v] |= kTouchedS;
        touched_s_.push_back(v);
        heap.push(pos(v));
      }
      while (!heap.empty()) {
        const Vertex x = g.topological_order()[heap.top()];
        heap.pop();
        for (Vertex y : g.out(x)) {
          if (!alive_[y] || (mark_[y] & kInBatch))
            continue;
          delta_s_[y] += delta_s_[x];
          if (!(mark_[y] & kTouchedS)) {
            mark_[y] |= kTouchedS;
            touched_s_.push_back(y);
            heap.push(pos(y));
          }
        }
      }
    }
    {
      std::priority_queue<std::uint32_t> heap;
      for (Vertex v : batch) {
        if (!alive_[v] || pt_[v] == 0)
          continue;
        delta_t_[v] = pt_[v];
        mark_[v] |= kTouchedT;
        touched_t_.push_back(v);
        heap.push(pos(v));
      }
      while (!heap.empty()) {
        const Vertex x = g.topological_order()[heap.top()];
        heap.pop();
        for (Vertex y : g.in(x)) {
          if (!alive_[y] || (mark_[y] & kInBatch))
            continue;
          delta_t_[y] += delta_t_[x];
          if (!(mark_[y] & kTouchedT)) {
            mark_[y] |= kTouchedT;
            touched_t_.push_back(y);
            heap.push(pos(y));
          }
        }
      }
    }
  }

  void reset(std::span<const Vertex> batch) {
    for (Vertex v : touched_s_) {
      delta_s_[v] = 0;
      mark_[v] = 0;
    }
    for (Vertex v : touched_t_) {
      delta_t_[v] = 0;
      mark_[v] = 0;
    }
    touched_s_.clear();
    touched_t_.clear();
    for (Vertex v : batch)
      mark_[v] = 0;
  }

  const DependencyNetwork *g_;
  std::vector<BigCount> ps_;
  std::vector<BigCount> pt_;
  std::vector<BigCount> p_;
  BigCount total_;
  std::vector<char> alive_;
  std::vector<BigCount> delta_s_;
  std::vector<BigCount> delta_t_;
  std::vector<char> mark_;
  std::vector<Vertex> touched_s_;
  std::vector<Vertex> touched_t_;
};

} // namespace hourglass

#endif // HOURGLASS_CENTRALITY_HPP
