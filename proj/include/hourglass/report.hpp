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

#ifndef HOURGLASS_REPORT_HPP
#define HOURGLASS_REPORT_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "hourglass/centrality.hpp"
#include "hourglass/core.hpp"
#include "hourglass/graph.hpp"
#include "hourglass/metrics.hpp"

namespace hourglass {

inline constexpr const char *kVersion = "0.1.0";

/// Basic characteristics of the analyzed network. Everything after
/// `condensed_vertices` describes the analyzed network (the largest weakly
/// connected component when that option is set).
struct NetworkSummary {
  std::size_t raw_vertices = 0;
  std::size_t raw_edges = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t condensed_vertices = 0;
  double lwcc_fraction = 1.0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  double avg_degree = 0.0;
  std::size_t sources = 0;
  std::size_t intermediates = 0;
  std::size_t targets = 0;
  std::size_t isolated = 0;
  double avg_st_path_length = 0.0;
  std::string total_st_paths;
  std::size_t super_vertices = 0;
  double super_vertex_size_mean = 0.0;
  double super_vertex_size_std = 0.0;

  bool operator==(const NetworkSummary &) const = default;
};

struct CoreEntry {
  std::string kind; // "single" or "pes"
  std::vector<std::string> members;
  double p_frac = 0.0; // P(v) / P of the first member
  double weight = 0.0; // incremental coverage when added
  std::optional<double> location;

  bool operator==(const CoreEntry &) const = default;
};

struct CoreSummary {
  std::size_t size = 0;
  double size_fraction = 0.0; // C / V
  double coverage = 0.0;
  std::size_t tie_events = 0;
  std::size_t pes_count = 0;
  std::size_t scc_count = 0; // super-vertices among core members
  std::vector<CoreEntry> elements;

  bool operator==(const CoreSummary &) const = default;
};

struct HourglassSummary {
  std::size_t core_size = 0;
  std::size_t flat_core_size = 0;
  double h_score = 0.0;
  double core_vertex_coverage = 0.0;
  double avg_core_location = 0.0;
  std::vector<LocationSample> location_samples;

  bool operator==(const HourglassSummary &) const = default;
};

struct EnumerationSummary {
  std::size_t limit = 0;
  std::size_t distinct_cores = 0;
  bool truncated = false;
  std::optional<double> jaccard;

  bool operator==(const EnumerationSummary &) const = default;
};

struct Provenance {
  std::string input;
  std::string format = "edgelist";
  double tau = 0.9;
  std::uint64_t seed = 0;
  std::string tie = "det";
  bool lwcc = false;
  std::vector<std::string> excluded;
  std::size_t unknown_exclusions = 0;
  std::string version = kVersion;

  bool operator==(const Provenance &) const = default;
};

struct AnalysisReport {
  NetworkSummary network;
  CoreSummary core;
  CoreSummary flat_core;
  HourglassSummary hourglass;
  std::optional<EnumerationSummary> enumeration;
  Provenance provenance;

  bool operator==(const AnalysisReport &) const = default;
};

struct AnalysisOptions {
  CoreOptions core;
  bool lwcc = false;
  std::set<std::string> exclude;
  std::size_t enumerate_limit = 0; // 0: do not enumerate cores
};

/// Everything computed for one input, for report and file emission.
struct Analysis {
  DependencyNetwork network;
  PathStats stats;
  HourglassReport hourglass;
  std::optional<CoreEnumeration> enumeration;
  AnalysisReport report;
};

inline CoreSummary summarize_core(const DependencyNetwork &g,
                                  const PathStats &stats, const Core &core) {
  CoreSummary s;
  s.size = core.size();
  s.size_fraction =
      static_cast<double>(core.size()) / static_cast<double>(g.size());
  s.coverage = core.coverage;
  s.tie_events = core.tie_events;
  for (const auto &e : core.elements) {
    CoreEntry entry;
    entry.kind = e.kind == ElementKind::Pes ? "pes" : "single";
    for (Vertex v : e.members) {
      entry.members.push_back(g.id(v));
      s.scc_count += g.is_super_vertex(v) ? 1 : 0;
    }
    entry.p_frac = ratio(stats.p[e.members.front()], stats.total);
    entry.weight = e.weight;
    entry.location = element_location(g, stats, e);
    s.pes_count += e.kind == ElementKind::Pes ? 1 : 0;
    s.elements.push_back(std::move(entry));
  }
  return s;
}

/// Exclusion, condensation, optional largest-WCC restriction, path counts,
/// both cores and the hourglass metrics.
inline Analysis analyze(const RawDigraph &input, const AnalysisOptions &options,
                        Provenance provenance) {
  Analysis a;
  auto [raw, unknown] = exclude_vertices(input, options.exclude);
  if (raw.size() == 0)
    throw Error("empty graph after exclusions");
  auto [condensed, condensation] = condense(raw);
  const std::size_t condensed_size = condensed.size();
  a.network = options.lwcc ? largest_wcc(condensed) : std::move(condensed);
  a.stats = compute_path_stats(a.network);
  if (!a.stats.has_paths())
    throw Error("network has no ST-paths");
  a.hourglass = h_score(a.network, a.stats, options.core);
  if (options.enumerate_limit > 0)
    a.enumeration = enumerate_cores(a.network, a.stats, options.core,
                                    options.enumerate_limit);

  auto &n = a.report.network;
  n.raw_vertices = raw.size();
  n.raw_edges = raw.edges.size();
  n.self_loops_dropped = raw.self_loops_dropped;
  n.condensed_vertices = condensed_size;
  n.lwcc_fraction = static_cast<double>(a.network.size()) /
                    static_cast<double>(condensed_size);
  n.vertices = a.network.size();
  n.edges = a.network.edge_count();
  n.avg_degree =
      static_cast<double>(n.edges) / static_cast<double>(n.vertices);
  const auto &counts = a.network.class_counts();
  n.sources = counts.sources;
  n.intermediates = counts.intermediates;
  n.targets = counts.targets;
  n.isolated = counts.isolated;
  n.avg_st_path_length = avg_st_path_length(a.network, a.stats);
  n.total_st_paths = a.stats.total.str();
  std::vector<double> sizes;
  for (Vertex v = 0; v < a.network.size(); ++v)
    if (a.network.is_super_vertex(v))
      sizes.push_back(static_cast<double>(a.network.members(v).size()));
  n.super_vertices = sizes.size();
  if (!sizes.empty()) {
    double sum = 0.0, sq = 0.0;
    for (double x : sizes)
      sum += x;
    n.super_vertex_size_mean = sum / static_cast<double>(sizes.size());
    for (double x : sizes)
      sq += (x - n.super_vertex_size_mean) * (x - n.super_vertex_size_mean);
    n.super_vertex_size_std = std::sqrt(sq / static_cast<double>(sizes.size()));
  }

  const auto &h = a.hourglass;
  a.report.core = summarize_core(a.network, a.stats, h.core);
  a.report.flat_core =
      summarize_core(h.flat, compute_path_stats(h.flat), h.flat_core);
  a.report.hourglass = {h.core_size,
                        h.flat_core_size,
                        h.h_score,
                        h.core_vertex_coverage,
                        h.avg_core_location,
                        h.location_samples};
  if (a.enumeration) {
    EnumerationSummary e;
    e.limit = options.enumerate_limit;
    e.distinct_cores = a.enumeration->cores.size();
    e.truncated = a.enumeration->truncated;
    if (e.distinct_cores >= 2)
      e.jaccard = jaccard_core_similarity(a.enumeration->cores);
    a.report.enumeration = e;
  }
  provenance.unknown_exclusions = unknown;
  provenance.excluded.assign(options.exclude.begin(), options.exclude.end());
  provenance.tau = options.core.tau;
  provenance.seed = options.core.ties.seed;
  provenance.tie =
      options.core.ties.mode == TieMode::Seeded ? "seeded" : "det";
  provenance.lwcc = options.lwcc;
  a.report.provenance = std::move(provenance);
  return a;
}

// JSON mapping. nlohmann::json keeps object keys sorted, so dumps are
// stable and diffable.

namespace detail {

template <class T>
void put_optional(nlohmann::json &j, const char *key,
                  const std::optional<T> &value) {
  j[key] = value ? nlohmann::json(*value) : nlohmann::json(nullptr);
}

template <class T>
void get_optional(const nlohmann::json &j, const char *key,
                  std::optional<T> &value) {
  const auto &field = j.at(key);
  value = field.is_null() ? std::nullopt : std::optional<T>(field.get<T>());
}

} // namespace detail

inline void to_json(nlohmann::json &j, const LocationSample &s) {
  j = nlohmann::json::array({s.location, s.weight});
}
inline void from_json(const nlohmann::json &j, LocationSample &s) {
  s.location = j.at(0).get<double>();
  s.weight = j.at(1).get<double>();
}

inline void to_json(nlohmann::json &j, const CoreEntry &e) {
  j = {{"kind", e.kind},
       {"members", e.members},
       {"p_frac", e.p_frac},
       {"weight", e.weight}};
  detail::put_optional(j, "location", e.location);
}
inline void from_json(const nlohmann::json &j, CoreEntry &e) {
  j.at("kind").get_to(e.kind);
  j.at("members").get_to(e.members);
  j.at("p_frac").get_to(e.p_frac);
  j.at("weight").get_to(e.weight);
  detail::get_optional(j, "location", e.location);
}

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(NetworkSummary, raw_vertices, raw_edges,
                                   self_loops_dropped, condensed_vertices,
                                   lwcc_fraction, vertices, edges, avg_degree,
                                   sources, intermediates, targets, isolated,
                                   avg_st_path_length, total_st_paths,
                                   super_vertices, super_vertex_size_mean,
                                   super_vertex_size_std)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(HourglassSummary, core_size, flat_core_size,
                                   h_score, core_vertex_coverage,
                                   avg_core_location, location_samples)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CoreSummary, size, size_fraction, coverage,
                                   tie_events, pes_count, scc_count, elements)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Provenance, input, format, tau, seed, tie,
                                   lwcc, excluded, unknown_exclusions, version)

inline void to_json(nlohmann::json &j, const EnumerationSummary &e) {
  j = {{"limit", e.limit},
       {"distinct_cores", e.distinct_cores},
       {"truncated", e.truncated}};
  detail::put_optional(j, "jaccard", e.jaccard);
}
inline void from_json(const nlohmann::json &j, EnumerationSummary &e) {
  j.at("limit").get_to(e.limit);
  j.at("distinct_cores").get_to(e.distinct_cores);
  j.at("truncated").get_to(e.truncated);
  detail::get_optional(j, "jaccard", e.jaccard);
}

inline void to_json(nlohmann::json &j, const AnalysisReport &r) {
  j = {{"network", r.network},
       {"core", r.core},
       {"flat_core", r.flat_core},
       {"hourglass", r.hourglass},
       {"provenance", r.provenance}};
  detail::put_optional(j, "enumeration", r.enumeration);
}
inline void from_json(const nlohmann::json &j, AnalysisReport &r) {
  j.at("network").get_to(r.network);
  j.at("core").get_to(r.core);
  j.at("flat_core").get_to(r.flat_core);
  j.at("hourglass").get_to(r.hourglass);
  j.at("provenance").get_to(r.provenance);
  detail::get_optional(j, "enumeration", r.enumeration);
}

inline std::string report_to_json(const AnalysisReport &r) {
  return nlohmann::json(r).dump(2) + "\n";
}

inline AnalysisReport report_from_json(const std::string &text) {
  try {
    return nlohmann::json::parse(text).get<AnalysisReport>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
}

} // namespace hourglass

#endif // HOURGLASS_REPORT_HPP
