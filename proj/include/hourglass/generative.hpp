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

#ifndef HOURGLASS_GENERATIVE_HPP
#define HOURGLASS_GENERATIVE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hourglass/centrality.hpp"
#include "hourglass/error.hpp"
#include "hourglass/graph.hpp"
#include "hourglass/metrics.hpp"
#include "hourglass/parallel.hpp"
#include "hourglass/random.hpp"

namespace hourglass {

/// Zipf law over ranks 1..n: prob[r-1] = r^-alpha / sum_i i^-alpha.
inline std::vector<double> rank_distribution(double alpha, std::size_t n) {
  if (n == 0)
    throw Error("rank distribution needs at least one rank");
  std::vector<double> prob(n);
  double sum = 0.0;
  for (std::size_t r = 1; r <= n; ++r) {
    prob[r - 1] = std::pow(static_cast<double>(r), -alpha);
    sum += prob[r - 1];
  }
  for (auto &p : prob)
    p /= sum;
  return prob;
}

/// Draws ranks from the Zipf law restricted to the first n ranks, for any
/// n up to the capacity given at construction.
class RankSampler {
public:
  RankSampler(double alpha, std::size_t capacity) : cumulative_(capacity + 1) {
    for (std::size_t r = 1; r <= capacity; ++r)
      cumulative_[r] =
          cumulative_[r - 1] + std::pow(static_cast<double>(r), -alpha);
  }

  std::size_t capacity() const { return cumulative_.size() - 1; }

  /// Rank in [1, n].
  template <class Rng> std::size_t draw(std::size_t n, Rng &rng) const {
    const double x =
        std::uniform_real_distribution<double>(0.0, cumulative_[n])(rng);
    const auto it = std::upper_bound(cumulative_.begin() + 1,
                                     cumulative_.begin() + n + 1, x);
    return std::min<std::size_t>(
        static_cast<std::size_t>(it - cumulative_.begin()), n);
  }

  double weight(std::size_t r) const {
    return cumulative_[r] - cumulative_[r - 1];
  }

private:
  std::vector<double> cumulative_; // cumulative_[r] = sum of weights 1..r
};

/// In-degree law of non-source vertices: Const(c) or 1 + Poisson(mean).
struct InDegreeLaw {
  enum class Kind { Const, OnePlusPoisson };
  Kind kind = Kind::OnePlusPoisson;
  double value = 2.0;

  static InDegreeLaw constant(unsigned c) {
    return {Kind::Const, static_cast<double>(c)};
  }
  static InDegreeLaw one_plus_poisson(double mean) {
    return {Kind::OnePlusPoisson, mean};
  }

  template <class Rng> std::size_t draw(Rng &rng) const {
    if (kind == Kind::Const)
      return static_cast<std::size_t>(value);
    if (value <= 0.0)
      return 1;
    return 1 + std::poisson_distribution<std::size_t>(value)(rng);
  }
};

struct RpConfig {
  std::size_t sources = 250;
  std::size_t intermediates = 500;
  std::size_t targets = 250;
  double alpha = 0.0;
  InDegreeLaw indegree;
  std::uint64_t seed = 0;
};

namespace detail {

constexpr std::size_t kRetriesPerEdge = 100;

inline std::string padded(char prefix, std::size_t i, std::size_t count) {
  const auto width = std::to_string(count).size();
  auto digits = std::to_string(i);
  return prefix + std::string(width - std::min(width, digits.size()), '0') +
         digits;
}

// `d` distinct values from draw(); after kRetriesPerEdge * d rejected
// duplicates, falls back to fallback(chosen), which must return an unused
// value.
template <class Draw, class Fallback>
std::vector<std::size_t> draw_distinct(std::size_t d, Draw &&draw,
                                       Fallback &&fallback) {
  std::vector<std::size_t> chosen;
  chosen.reserve(d);
  std::size_t rejected = 0;
  while (chosen.size() < d) {
    if (rejected >= kRetriesPerEdge * d) {
      chosen.push_back(fallback(chosen));
      continue;
    }
    const std::size_t x = draw();
    if (std::find(chosen.begin(), chosen.end(), x) != chosen.end()) {
      ++rejected;
      continue;
    }
    chosen.push_back(x);
  }
  return chosen;
}

// Weighted draw without replacement among items not yet chosen.
template <class Rng, class Weight>
std::size_t draw_unused(std::size_t n, const std::vector<std::size_t> &chosen,
                        Weight &&weight, Rng &rng) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = std::find(chosen.begin(), chosen.end(), i) == chosen.end()
               ? weight(i)
               : 0.0;
  if (std::accumulate(w.begin(), w.end(), 0.0) <= 0.0)
    throw Error("impossible in-degree: no unused candidate left");
  return std::discrete_distribution<std::size_t>(w.begin(), w.end())(rng);
}

template <class Rng>
std::size_t draw_indegree(const InDegreeLaw &law, std::size_t candidates,
                          Rng &rng) {
  std::size_t d = law.draw(rng);
  for (std::size_t retry = 0; d > candidates && retry < kRetriesPerEdge;
       ++retry)
    d = law.draw(rng);
  return std::min(d, candidates);
}

} // namespace detail

/// Free-standing Reuse-Preference network. Sources come first; intermediates
/// arrive one at a time and rank earlier intermediates by recency (the
/// newest at rank 1), followed by the sources in a fresh random order; the
/// targets arrive last as one batch with every source and intermediate as a
/// candidate. Each non-source vertex draws its in-degree and then that many
/// distinct origins from the Zipf law over ranks.
inline DependencyNetwork rp_generate(const RpConfig &cfg) {
  if (cfg.sources == 0 || cfg.targets == 0)
    throw Error("RP-model needs at least one source and one target");
  if (cfg.indegree.kind == InDegreeLaw::Kind::Const && cfg.indegree.value < 1)
    throw Error("constant in-degree must be at least 1");

  const std::size_t S = cfg.sources, M = cfg.intermediates, T = cfg.targets;
  std::mt19937_64 rng(cfg.seed);
  const RankSampler sampler(cfg.alpha, S + M);

  std::vector<std::string> ids;
  ids.reserve(S + M + T);
  for (std::size_t i = 0; i < S; ++i)
    ids.push_back(detail::padded('s', i, S));
  for (std::size_t i = 0; i < M; ++i)
    ids.push_back(detail::padded('m', i, M));
  for (std::size_t i = 0; i < T; ++i)
    ids.push_back(detail::padded('t', i, T));

  std::vector<Vertex> source_order(S);
  std::iota(source_order.begin(), source_order.end(), Vertex{0});
  std::vector<Edge> edges;

  // `prior` intermediates already exist; rank r <= prior is the r-th most
  // recent of them, higher ranks are the shuffled sources.
  auto attach = [&](Vertex v, std::size_t prior) {
    const std::size_t n = S + prior;
    const std::size_t d = detail::draw_indegree(cfg.indegree, n, rng);
    std::shuffle(source_order.begin(), source_order.end(), rng);
    const auto ranks = detail::draw_distinct(
        d, [&] { return sampler.draw(n, rng) - 1; },
        [&](const std::vector<std::size_t> &chosen) {
          return detail::draw_unused(
              n, chosen, [&](std::size_t i) { return sampler.weight(i + 1); },
              rng);
        });
    for (std::size_t r0 : ranks) {
      const std::size_t r = r0 + 1;
      const Vertex u = r <= prior ? static_cast<Vertex>(S + prior - r)
                                  : source_order[r - prior - 1];
      edges.emplace_back(u, v);
    }
  };

  for (std::size_t m = 0; m < M; ++m)
    attach(static_cast<Vertex>(S + m), m);
  for (std::size_t t = 0; t < T; ++t)
    attach(static_cast<Vertex>(S + M + t), M);

  std::vector<std::vector<std::string>> members;
  members.reserve(ids.size());
  for (const auto &id : ids)
    members.push_back({id});
  return DependencyNetwork::build(std::move(ids), std::move(members),
                                  std::move(edges));
}

/// Layered template for fitted generation. Layer 0 holds the sources (and
/// isolated vertices); an intermediate sits one layer above its highest
/// dependency; all targets share the top layer. Vertex indices are those of
/// the template network.
struct LayeredScaffold {
  std::vector<std::string> ids;
  std::vector<std::vector<std::string>> members;
  std::vector<std::uint32_t> layer;
  std::vector<std::vector<Vertex>> layers;
  std::vector<std::size_t> indegree;
  /// A(v), sorted by (layer, vertex).
  std::vector<std::vector<Vertex>> ancestors;

  std::size_t size() const { return ids.size(); }
};

inline LayeredScaffold layered_scaffold_from(const DependencyNetwork &g) {
  if (g.edge_count() == 0)
    throw Error("no ST-paths");
  const std::size_t n = g.size();
  LayeredScaffold s;
  s.ids = g.ids();
  s.layer.assign(n, 0);
  s.indegree.resize(n);
  s.members.resize(n);
  std::uint32_t top = 0;
  for (Vertex v : g.topological_order()) {
    s.indegree[v] = g.in(v).size();
    if (g.vertex_class(v) != VertexClass::Intermediate)
      continue;
    for (Vertex u : g.in(v))
      s.layer[v] = std::max(s.layer[v], s.layer[u] + 1);
    top = std::max(top, s.layer[v]);
  }
  for (Vertex v = 0; v < n; ++v) {
    s.members[v] = g.members(v);
    if (g.is_target(v))
      s.layer[v] = top + 1;
  }
  s.layers.resize(top + 2);
  for (Vertex v = 0; v < n; ++v)
    s.layers[s.layer[v]].push_back(v);

  // ancestor sets by bitset closure in topological order
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> anc(n * words, 0);
  for (Vertex v : g.topological_order()) {
    auto *row = anc.data() + v * words;
    for (Vertex u : g.in(v)) {
      const auto *up = anc.data() + u * words;
      for (std::size_t i = 0; i < words; ++i)
        row[i] |= up[i];
      row[u / 64] |= std::uint64_t{1} << (u % 64);
    }
  }
  s.ancestors.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    const auto *row = anc.data() + v * words;
    for (Vertex u = 0; u < n; ++u)
      if (row[u / 64] >> (u % 64) & 1)
        s.ancestors[v].push_back(u);
    std::sort(s.ancestors[v].begin(), s.ancestors[v].end(),
              [&](Vertex a, Vertex b) {
                return s.layer[a] != s.layer[b] ? s.layer[a] < s.layer[b]
                                                : a < b;
              });
  }
  return s;
}

namespace detail {

inline DependencyNetwork network_from_scaffold(const LayeredScaffold &s,
                                               std::vector<Edge> edges) {
  return DependencyNetwork::build(s.ids, s.members, std::move(edges));
}

inline void check_scaffold_vertex(const LayeredScaffold &s, Vertex v) {
  if (s.indegree[v] > s.ancestors[v].size())
    throw Error("scaffold inconsistency: in-degree of '" + s.ids[v] +
                "' exceeds its ancestor count");
}

} // namespace detail

/// RP-model on a layered template: each non-source v picks indegree[v]
/// distinct origins from A(v), an ancestor u weighted by
/// (layer(v) - layer(u))^-alpha.
inline DependencyNetwork rp_generate_fitted(const LayeredScaffold &s,
                                            double alpha, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t levels = s.layers.size();
  std::vector<double> by_distance(levels + 1, 0.0);
  for (std::size_t d = 1; d <= levels; ++d)
    by_distance[d] = std::pow(static_cast<double>(d), -alpha);

  std::vector<Edge> edges;
  // (end offset, cumulative weight) of each same-layer run of A(v)
  std::vector<std::size_t> run_end;
  std::vector<double> run_cum;
  for (std::size_t l = 1; l < levels; ++l) {
    for (Vertex v : s.layers[l]) {
      const std::size_t d = s.indegree[v];
      if (d == 0)
        continue;
      detail::check_scaffold_vertex(s, v);
      const auto &a = s.ancestors[v];
      run_end.clear();
      run_cum.clear();
      double cum = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i + 1 == a.size() || s.layer[a[i + 1]] != s.layer[a[i]]) {
          const std::size_t begin = run_end.empty() ? 0 : run_end.back();
          cum += static_cast<double>(i + 1 - begin) *
                 by_distance[s.layer[v] - s.layer[a[i]]];
          run_end.push_back(i + 1);
          run_cum.push_back(cum);
        }
      }
      auto draw = [&]() -> std::size_t {
        const double x = std::uniform_real_distribution<double>(0.0, cum)(rng);
        std::size_t run = static_cast<std::size_t>(
            std::upper_bound(run_cum.begin(), run_cum.end(), x) -
            run_cum.begin());
        run = std::min(run, run_cum.size() - 1);
        const std::size_t begin = run == 0 ? 0 : run_end[run - 1];
        return std::uniform_int_distribution<std::size_t>(
            begin, run_end[run] - 1)(rng);
      };
      const auto picks = detail::draw_distinct(
          d, draw, [&](const std::vector<std::size_t> &chosen) {
            return detail::draw_unused(
                a.size(), chosen,
                [&](std::size_t i) {
                  return by_distance[s.layer[v] - s.layer[a[i]]];
                },
                rng);
          });
      for (std::size_t i : picks)
        edges.emplace_back(a[i], v);
    }
  }
  return detail::network_from_scaffold(s, std::move(edges));
}

struct EdgeCopyConfig {
  double beta = 0.5;
  std::uint64_t seed = 0;
  const LayeredScaffold *scaffold = nullptr;
};

/// Edge-copying model on a layered template. For each incoming edge of v:
/// with probability beta attach to a uniform u in A(v); otherwise pick a
/// uniform u in A(v) and copy one of u's inputs uniformly, or attach to u
/// itself when u has no inputs. Duplicate origins are redrawn.
inline DependencyNetwork edge_copy_generate_fitted(const EdgeCopyConfig &cfg) {
  if (cfg.scaffold == nullptr)
    throw Error("edge-copying model needs a scaffold");
  if (!(cfg.beta >= 0.0 && cfg.beta <= 1.0))
    throw Error("beta must lie in [0, 1]");
  const auto &s = *cfg.scaffold;
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::vector<Vertex>> inputs(s.size());
  std::vector<Edge> edges;

  for (std::size_t l = 1; l < s.layers.size(); ++l) {
    for (Vertex v : s.layers[l]) {
      const std::size_t d = s.indegree[v];
      if (d == 0)
        continue;
      detail::check_scaffold_vertex(s, v);
      const auto &a = s.ancestors[v];
      auto draw = [&]() -> std::size_t {
        const Vertex u =
            a[std::uniform_int_distribution<std::size_t>(0, a.size() - 1)(rng)];
        if (std::bernoulli_distribution(cfg.beta)(rng) || inputs[u].empty())
          return u;
        return inputs[u][std::uniform_int_distribution<std::size_t>(
            0, inputs[u].size() - 1)(rng)];
      };
      const auto picks = detail::draw_distinct(
          d, draw, [&](const std::vector<std::size_t> &chosen) {
            std::vector<std::size_t> unused;
            for (Vertex u : a)
              if (std::find(chosen.begin(), chosen.end(), u) == chosen.end())
                unused.push_back(u);
            return unused[std::uniform_int_distribution<std::size_t>(
                0, unused.size() - 1)(rng)];
          });
      for (std::size_t u : picks) {
        edges.emplace_back(static_cast<Vertex>(u), v);
        inputs[v].push_back(static_cast<Vertex>(u));
      }
    }
  }
  return detail::network_from_scaffold(s, std::move(edges));
}

/// Mean with a normal-approximation 95% confidence half-width.
struct Summary {
  double mean = 0.0;
  double ci = 0.0;
  std::size_t n = 0;
};

inline Summary summarize(std::span<const double> xs) {
  Summary s;
  s.n = xs.size();
  if (xs.empty())
    return s;
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) /
           static_cast<double>(xs.size());
  if (xs.size() < 2)
    return s;
  double sq = 0.0;
  for (double x : xs)
    sq += (x - s.mean) * (x - s.mean);
  const double sd = std::sqrt(sq / static_cast<double>(xs.size() - 1));
  s.ci = 1.96 * sd / std::sqrt(static_cast<double>(xs.size()));
  return s;
}

struct SweepRow {
  double parameter = 0.0;
  Summary h_score;
  Summary core_size;
  Summary flat_core_size;
  Summary core_vertex_coverage;
  Summary avg_core_location;
};

/// For each parameter value, generates `runs` networks with
/// generate(parameter, seed + run) and summarizes their hourglass metrics.
template <class Generate>
std::vector<SweepRow>
ensemble_sweep(Generate &&generate, std::span<const double> parameters,
               std::size_t runs, double tau, std::uint64_t seed = 0) {
  if (runs < 2)
    throw Error("an ensemble needs at least two runs");
  detail::check_tau(tau);
  std::vector<SweepRow> rows;
  for (double parameter : parameters) {
    std::vector<double> h(runs), c(runs), cf(runs), uc(runs), lc(runs);
    parallel_for(runs, [&](std::size_t run) {
      const auto g = generate(parameter, seed + run);
      const auto r = h_score(g, CoreOptions{tau, {}, true});
      h[run] = r.h_score;
      c[run] = static_cast<double>(r.core_size);
      cf[run] = static_cast<double>(r.flat_core_size);
      uc[run] = r.core_vertex_coverage;
      lc[run] = r.avg_core_location;
    });
    rows.push_back({parameter, summarize(h), summarize(c), summarize(cf),
                    summarize(uc), summarize(lc)});
  }
  return rows;
}

/// Alpha sweep of the free-standing model; cfg.alpha and cfg.seed are
/// replaced per run.
inline std::vector<SweepRow> sweep_rp_alpha(const RpConfig &cfg,
                                            std::span<const double> alphas,
                                            std::size_t runs, double tau) {
  return ensemble_sweep(
      [&](double alpha, std::uint64_t seed) {
        RpConfig run = cfg;
        run.alpha = alpha;
        run.seed = seed;
        return rp_generate(run);
      },
      alphas, runs, tau, cfg.seed);
}

/// Beta sweep of the edge-copying model on a fixed scaffold.
inline std::vector<SweepRow>
sweep_edge_copy_beta(const LayeredScaffold &scaffold,
                     std::span<const double> betas, std::size_t runs,
                     double tau, std::uint64_t seed = 0) {
  return ensemble_sweep(
      [&](double beta, std::uint64_t run_seed) {
        return edge_copy_generate_fitted({beta, run_seed, &scaffold});
      },
      betas, runs, tau, seed);
}

struct AlphaGrid {
  double min = -2.0;
  double max = 3.0;
  double step = 0.1;

  std::vector<double> points() const {
    if (!std::isfinite(min) || !std::isfinite(max) || max < min)
      throw Error("degenerate alpha grid");
    if (max == min)
      return {min};
    if (!(step > 0.0) || !std::isfinite(step))
      throw Error("degenerate alpha grid");
    const auto n =
        static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i)
      pts[i] = min + static_cast<double>(i) * step;
    return pts;
  }
};

struct FitRow {
  double alpha = 0.0;
  Summary h_score;
};

struct AlphaFit {
  double alpha = 0.0;
  double target_h_score = 0.0;
  std::vector<FitRow> table;
};

/// Fits the reuse exponent against a given layered scaffold: for each grid
/// alpha, the mean H-score of `ensemble` fitted RP networks on `scaffold`;
/// returns the alpha whose mean is closest to `target_h_score` (smaller
/// alpha on ties).
inline AlphaFit fit_alpha_on_scaffold(double target_h_score,
                                      const LayeredScaffold &scaffold,
                                      const AlphaGrid &grid,
                                      std::size_t ensemble, double tau,
                                      std::uint64_t seed = 0) {
  if (ensemble < 2)
    throw Error("an ensemble needs at least two runs");
  const auto alphas = grid.points();
  AlphaFit fit;
  fit.target_h_score = target_h_score;
  const auto rows = ensemble_sweep(
      [&](double alpha, std::uint64_t run_seed) {
        return rp_generate_fitted(scaffold, alpha, run_seed);
      },
      alphas, ensemble, tau, seed);
  double best = 0.0;
  for (const auto &row : rows) {
    fit.table.push_back({row.parameter, row.h_score});
    const double gap = std::abs(row.h_score.mean - fit.target_h_score);
    if (fit.table.size() == 1 || gap < best) {
      best = gap;
      fit.alpha = row.parameter;
    }
  }
  return fit;
}

/// Fits the reuse exponent of `g`: the target is H(g) and the scaffold is
/// the layered scaffold of `g` itself.
inline AlphaFit fit_alpha(const DependencyNetwork &g, const AlphaGrid &grid,
                          std::size_t ensemble, double tau,
                          std::uint64_t seed = 0) {
  if (ensemble < 2)
    throw Error("an ensemble needs at least two runs");
  grid.points(); // validate before the expensive work
  const double target = h_score(g, CoreOptions{tau, {}, true}).h_score;
  return fit_alpha_on_scaffold(target, layered_scaffold_from(g), grid,
                               ensemble, tau, seed);
}

} // namespace hourglass

#endif // HOURGLASS_GENERATIVE_HPP
