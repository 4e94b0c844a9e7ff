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


#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "hourglass/io.hpp"
#include "hourglass/report.hpp"
#include "support.hpp"

namespace hourglass {
namespace {

using testing::at;

std::vector<std::string> lines_of(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    out.push_back(line);
  return out;
}

std::string csv_row(const std::string &csv, const std::string &vertex) {
  for (const auto &line : lines_of(csv))
    if (line.rfind(vertex + ",", 0) == 0)
      return line;
  return {};
}

TEST(ParseEdgelist, SingleEdge) {
  const auto g = parse_edgelist("a b\n");
  EXPECT_EQ(g.vertices, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0], (Edge{0, 1}));
}

TEST(ParseEdgelist, SkipsCommentsAndBlankLines) {
  const auto g = parse_edgelist("# note\n\na b\n");
  EXPECT_EQ(g.edges.size(), 1u);
  const auto h = parse_edgelist("  a\tb   # trailing\r\n   \n");
  EXPECT_EQ(h.vertices, (std::vector<std::string>{"a", "b"}));
}

TEST(ParseEdgelist, MalformedLineReportsLineNumber) {
  try {
    parse_edgelist("a\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 1u);
  }
  try {
    parse_edgelist("# header\na b\nc d e\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(ParseEdgelist, EmptyInputIsAnError) {
  EXPECT_THROW(parse_edgelist("# nothing\n"), Error);
}

TEST(ParseReactions, SubstratesFeedProducts) {
  const auto g = parse_reactions("A + B -> C\n");
  EXPECT_EQ(g.vertices, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(g.edges, (std::vector<Edge>{{0, 2}, {1, 2}}));
}

TEST(ParseReactions, ReversiblePairIsACycle) {
  const auto g = parse_reactions("A -> B\nB -> A\n");
  EXPECT_EQ(g.edges.size(), 2u);
  const auto [net, report] = condense(g);
  EXPECT_EQ(net.size(), 1u);
  EXPECT_EQ(report.super_vertex_count, 1u);
}

TEST(ParseReactions, EmptyOperandIsAnError) {
  EXPECT_THROW(parse_reactions("A + -> C\n"), ParseError);
  EXPECT_THROW(parse_reactions("A -> \n"), ParseError);
  EXPECT_THROW(parse_reactions("-> C\n"), ParseError);
}

TEST(ParseReactions, MissingArrowReportsLineNumber) {
  try {
    parse_reactions("A -> B\nA + B\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseReactions, NamesAreTrimmedAndDuplicatesCollapsed) {
  const auto g = parse_reactions(
      "  D-Glucose   +  ATP -> D-Glucose 6-phosphate + ADP\n"
      "ATP -> ADP # again\n");
  EXPECT_EQ(g.vertices,
            (std::vector<std::string>{"ADP", "ATP", "D-Glucose",
                                      "D-Glucose_6-phosphate"}));
  EXPECT_EQ(g.edges.size(), 4u);
  EXPECT_EQ(g.duplicate_edges, 1u);
}

TEST(ParseReactions, PlusInsideNameIsKept) {
  const auto g = parse_reactions("NAD+ + H2O -> NADH\n");
  EXPECT_EQ(g.vertices, (std::vector<std::string>{"H2O", "NAD+", "NADH"}));
}

TEST(WriteEdgelist, RoundTripsRandomNetworks) {
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const auto g = testing::random_dag_with_paths(30, 0.1, trial);
    const auto text = write_edgelist(g);
    const auto back = parse_edgelist(text);
    std::set<std::pair<std::string, std::string>> a, b;
    for (const auto &[u, v] : g.edges())
      a.emplace(g.id(u), g.id(v));
    for (const auto &[u, v] : back.edges)
      b.emplace(back.vertices[u], back.vertices[v]);
    EXPECT_EQ(a, b);
    EXPECT_EQ(write_edgelist(condense(back).first), text);
  }
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(1.0), "1.0");
  EXPECT_EQ(format_double(0.0), "0.0");
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2.0 / 3.0), "0.6666666666666666");
  EXPECT_EQ(std::stod(format_double(1e-300)), 1e-300);
}

TEST(MetricsCsv, DiamondRows) {
  const auto g = testing::diamond();
  const auto s = compute_path_stats(g);
  const auto core = greedy_core(g, s);
  const auto csv = write_metrics_csv(g, s, core);
  const auto lines = lines_of(csv);
  EXPECT_EQ(lines[0],
            "vertex,class,ps,pt,p,p_frac,location,in_core,core_weight");
  EXPECT_EQ(lines.size(), g.size() + 1);
  EXPECT_EQ(csv_row(csv, "a"), "a,intermediate,2,2,4,1.0,0.5,true,1.0");
  EXPECT_EQ(csv_row(csv, "s1"), "s1,source,1,2,2,0.5,0.0,false,0.0");
  EXPECT_EQ(csv_row(csv, "t2"), "t2,target,2,1,2,0.5,1.0,false,0.0");
}

TEST(MetricsCsv, RowsSortedByVertexId) {
  const auto g = testing::random_dag_with_paths(20, 0.15, 3);
  const auto s = compute_path_stats(g);
  const auto lines = lines_of(write_metrics_csv(g, s, greedy_core(g, s)));
  ASSERT_EQ(lines.size(), g.size() + 1);
  for (std::size_t i = 2; i < lines.size(); ++i)
    EXPECT_LT(lines[i - 1], lines[i]);
}

TEST(MetricsCsv, UndefinedLocationIsEmpty) {
  const std::vector<NamedEdge> e{{"s", "t"}};
  const std::vector<std::string> lone{"z"};
  const auto g = DependencyNetwork::from_edges(e, lone);
  const auto s = compute_path_stats(g);
  const auto csv = write_metrics_csv(g, s, greedy_core(g, s));
  EXPECT_EQ(csv_row(csv, "z"), "z,isolated,0,0,0,0.0,,false,0.0");
}

TEST(MetricsCsv, QuotesAwkwardIds) {
  const std::vector<NamedEdge> e{{"a,b", "c\"d"}};
  const auto g = DependencyNetwork::from_edges(e);
  const auto s = compute_path_stats(g);
  const auto csv = write_metrics_csv(g, s, Core{});
  EXPECT_NE(csv.find("\"a,b\",source"), std::string::npos);
  EXPECT_NE(csv.find("\"c\"\"d\",target"), std::string::npos);
}

TEST(Dot, ChainBins) {
  const auto g = testing::chain();
  const auto s = compute_path_stats(g);
  EXPECT_EQ(location_bin(g, s, at(g, "m"), 12), "interior_6");
  EXPECT_EQ(location_bin(g, s, at(g, "s"), 12), "source");
  EXPECT_EQ(location_bin(g, s, at(g, "t"), 12), "target");
  const auto dot = write_dot(g, s, Core{});
  std::size_t groups = 0;
  for (auto pos = dot.find("rank=same"); pos != std::string::npos;
       pos = dot.find("rank=same", pos + 1))
    ++groups;
  EXPECT_EQ(groups, 3u);
  EXPECT_NE(dot.find("subgraph \"interior_6\" {\n    rank=same;\n    \"m\";"),
            std::string::npos);
}

TEST(Dot, DiamondWaistAloneAndOutlined) {
  const auto g = testing::diamond();
  const auto s = compute_path_stats(g);
  const auto dot = write_dot(g, s, greedy_core(g, s));
  EXPECT_NE(dot.find("subgraph \"interior_6\" {\n    rank=same;\n    \"a\";\n  }"),
            std::string::npos);
  const auto a_line = dot.find("  \"a\" [");
  ASSERT_NE(a_line, std::string::npos);
  const auto a_attrs = dot.substr(a_line, dot.find('\n', a_line) - a_line);
  EXPECT_NE(a_attrs.find("color=red"), std::string::npos);
  EXPECT_EQ(dot.find("color=red"), dot.rfind("color=red"));
}

TEST(Dot, EmptyCoreHasNoOutlines) {
  const auto g = testing::diamond();
  const auto dot = write_dot(g, compute_path_stats(g), Core{});
  EXPECT_EQ(dot.find("color=red"), std::string::npos);
}

TEST(Dot, DeterministicAndValidBins) {
  const auto g = testing::random_dag_with_paths(25, 0.15, 9);
  const auto s = compute_path_stats(g);
  const auto core = greedy_core(g, s);
  EXPECT_EQ(write_dot(g, s, core), write_dot(g, s, core));
  EXPECT_THROW(write_dot(g, s, core, 0), Error);
  for (Vertex v = 0; v < g.size(); ++v) {
    const auto bin = location_bin(g, s, v, 12);
    if (auto l = location(g, s, v); l && !g.is_source(v) && !g.is_target(v)) {
      EXPECT_EQ(bin, "interior_" + std::to_string(std::min<int>(
                                       11, static_cast<int>(*l * 12))));
    }
  }
}

RawDigraph diamond_raw() {
  return parse_edgelist("s1 a\ns2 a\na t1\na t2\n");
}

TEST(Analyze, DiamondReport) {
  AnalysisOptions options;
  const auto a = analyze(diamond_raw(), options, {});
  const auto &r = a.report;
  EXPECT_EQ(r.hourglass.core_size, 1u);
  EXPECT_EQ(r.hourglass.flat_core_size, 2u);
  EXPECT_EQ(r.hourglass.h_score, 0.5);
  EXPECT_EQ(r.network.vertices, 5u);
  EXPECT_EQ(r.network.edges, 4u);
  EXPECT_EQ(r.network.sources, 2u);
  EXPECT_EQ(r.network.targets, 2u);
  EXPECT_EQ(r.network.avg_st_path_length, 2.0);
  EXPECT_EQ(r.network.total_st_paths, "4");
  ASSERT_EQ(r.core.elements.size(), 1u);
  EXPECT_EQ(r.core.elements[0].members, (std::vector<std::string>{"a"}));
  EXPECT_EQ(r.core.elements[0].p_frac, 1.0);
  EXPECT_EQ(r.core.elements[0].weight, 1.0);
  EXPECT_EQ(*r.core.elements[0].location, 0.5);
  EXPECT_EQ(r.flat_core.size, 2u);
  EXPECT_EQ(r.provenance.version, kVersion);
  EXPECT_FALSE(r.enumeration.has_value());
}

TEST(Analyze, CondensationExclusionAndComponents) {
  const auto raw = parse_edgelist("x y\ny x\nx z\nz z\nw1 w2\nmain x\n");
  AnalysisOptions options;
  options.lwcc = true;
  options.exclude = {"main", "ghost"};
  const auto a = analyze(raw, options, {});
  const auto &n = a.report.network;
  EXPECT_EQ(n.raw_vertices, 5u);
  EXPECT_EQ(n.self_loops_dropped, 1u);
  EXPECT_EQ(n.condensed_vertices, 4u);
  EXPECT_EQ(n.vertices, 2u);
  EXPECT_DOUBLE_EQ(n.lwcc_fraction, 0.5);
  EXPECT_EQ(n.super_vertices, 1u);
  EXPECT_EQ(n.super_vertex_size_mean, 2.0);
  EXPECT_EQ(a.report.provenance.unknown_exclusions, 1u);
  EXPECT_EQ(a.report.provenance.excluded,
            (std::vector<std::string>{"ghost", "main"}));
  EXPECT_EQ(a.report.core.scc_count, 1u);
}

TEST(Analyze, Errors) {
  AnalysisOptions options;
  options.exclude = {"a", "b"};
  EXPECT_THROW(analyze(parse_edgelist("a b\n"), options, {}), Error);
  EXPECT_THROW(analyze(parse_edgelist("a b\nb a\n"), AnalysisOptions{}, {}),
               Error);
}

TEST(Analyze, EnumerationSummary) {
  AnalysisOptions options;
  options.core.tau = 1.0;
  options.core.pes_grouping = false;
  options.enumerate_limit = 8;
  const auto a = analyze(parse_edgelist("s t\ns m\nm t\n"), options, {});
  ASSERT_TRUE(a.report.enumeration.has_value());
  EXPECT_EQ(a.report.enumeration->distinct_cores, 2u);
  EXPECT_FALSE(a.report.enumeration->truncated);
  EXPECT_EQ(*a.report.enumeration->jaccard, 0.0);
}

TEST(Report, JsonRoundTripsAndIsStable) {
  AnalysisOptions options;
  options.enumerate_limit = 4;
  Provenance p;
  p.input = "diamond.txt";
  const auto a = analyze(diamond_raw(), options, p);
  const auto text = report_to_json(a.report);
  EXPECT_EQ(report_from_json(text), a.report);
  EXPECT_EQ(report_to_json(report_from_json(text)), text);
  EXPECT_EQ(report_to_json(analyze(diamond_raw(), options, p).report), text);
}

TEST(Report, KeysAreSorted) {
  const auto a = analyze(diamond_raw(), AnalysisOptions{}, {});
  const auto j = nlohmann::json::parse(report_to_json(a.report));
  std::vector<std::string> keys;
  for (const auto &[k, v] : j.items())
    keys.push_back(k);
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  EXPECT_EQ(j.at("hourglass").at("h_score"), 0.5);
  EXPECT_TRUE(j.at("enumeration").is_null());
}

TEST(Report, RandomNetworksRoundTrip) {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const auto g = testing::random_dag_with_paths(40, 0.08, trial + 60);
    AnalysisOptions options;
    options.core.ties = TiePolicy::seeded(trial);
    options.enumerate_limit = 3;
    const auto a = analyze(parse_edgelist(write_edgelist(g)), options, {});
    EXPECT_EQ(report_from_json(report_to_json(a.report)), a.report);
  }
}

TEST(Report, MalformedJsonIsAnError) {
  EXPECT_THROW(report_from_json("{"), Error);
  EXPECT_THROW(report_from_json("{\"network\": 3}"), Error);
}

} // namespace
} // namespace hourglass
