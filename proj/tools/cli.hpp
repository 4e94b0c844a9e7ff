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

#ifndef HOURGLASS_TOOLS_CLI_HPP
#define HOURGLASS_TOOLS_CLI_HPP

#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hourglass/hourglass.hpp"

namespace hourglass::cli {

inline std::string read_text(const std::string &path) {
  if (path == "-")
    return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

inline void write_text(const std::string &path, const std::string &text,
                       std::ostream &out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw Error("cannot write '" + path + "'");
  file << text;
}

inline RawDigraph read_graph(const std::string &path,
                             const std::string &format) {
  const auto text = read_text(path);
  if (format == "reactions")
    return parse_reactions(text);
  return parse_edgelist(text);
}

inline std::set<std::string> read_names(const std::string &path) {
  std::set<std::string> names;
  if (path.empty())
    return names;
  std::istringstream in(read_text(path));
  std::string name;
  while (in >> name)
    names.insert(name);
  return names;
}

inline DependencyNetwork read_network(const std::string &path,
                                      const std::string &format,
                                      const std::string &exclude_path,
                                      bool lwcc) {
  auto [raw, unknown] =
      exclude_vertices(read_graph(path, format), read_names(exclude_path));
  auto network = condense(raw).first;
  return lwcc ? largest_wcc(network) : network;
}

// "poisson:2" or "const:3"
inline InDegreeLaw parse_indegree(const std::string &text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw Error("in-degree law must look like poisson:<mean> or const:<c>");
  const auto kind = text.substr(0, colon);
  double value = 0.0;
  try {
    value = std::stod(text.substr(colon + 1));
  } catch (const std::exception &) {
    throw Error("bad in-degree parameter in '" + text + "'");
  }
  if (kind == "poisson")
    return InDegreeLaw::one_plus_poisson(value);
  if (kind == "const" && value >= 1.0)
    return InDegreeLaw::constant(static_cast<unsigned>(value));
  throw Error("bad in-degree law '" + text + "'");
}

inline std::string sweep_csv(const std::string &parameter,
                             const std::vector<SweepRow> &rows) {
  std::ostringstream out;
  out << parameter
      << ",runs,h_mean,h_ci,core_mean,core_ci,flat_core_mean,flat_core_ci,"
         "uc_mean,uc_ci,lc_mean,lc_ci\n";
  for (const auto &r : rows) {
    out << format_double(r.parameter) << ',' << r.h_score.n;
    for (const auto *s : {&r.h_score, &r.core_size, &r.flat_core_size,
                          &r.core_vertex_coverage, &r.avg_core_location})
      out << ',' << format_double(s->mean) << ',' << format_double(s->ci);
    out << '\n';
  }
  return out.str();
}

/// Entry point of the `hourglass` tool. Returns 0 on success, 1 on bad
/// input or usage, 2 when an internal invariant fails.
inline int cli_main(int argc, const char *const *argv, std::ostream &out,
                    std::ostream &err) {
  CLI::App app{"Hourglass analysis of dependency networks", "hourglass"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  const std::vector<std::string> formats{"edgelist", "reactions"};

  // analyze
  std::string input, format = "edgelist", tie = "det", exclude_path;
  std::string json_path, csv_path, dot_path;
  double tau = 0.9;
  std::uint64_t seed = 0;
  bool lwcc = false;
  std::size_t enumerate = 0, bins = 12;
  auto *analyze_cmd = app.add_subcommand("analyze", "core, H-score and metrics");
  analyze_cmd->add_option("file", input, "edge list or reaction list")->required();
  analyze_cmd->add_option("--format", format)->check(CLI::IsMember(formats));
  analyze_cmd->add_option("--tau", tau, "path coverage threshold")
      ->check(CLI::Range(0.0, 1.0));
  analyze_cmd->add_option("--seed", seed);
  analyze_cmd->add_option("--tie", tie)->check(CLI::IsMember({"det", "seeded"}));
  analyze_cmd->add_option("--exclude", exclude_path, "file of vertex ids to drop");
  analyze_cmd->add_flag("--lwcc", lwcc, "keep the largest weakly connected component");
  analyze_cmd->add_option("--enumerate-cores", enumerate, "distinct cores to list");
  analyze_cmd->add_option("--json", json_path, "report path, '-' for stdout");
  analyze_cmd->add_option("--csv", csv_path, "per-vertex metrics path");
  analyze_cmd->add_option("--dot", dot_path, "Graphviz drawing path");
  analyze_cmd->add_option("--bins", bins, "location bins of the drawing")
      ->check(CLI::PositiveNumber);

  // flatten
  std::string out_path = "-";
  auto *flat_cmd = app.add_subcommand("flatten", "write the flat network");
  flat_cmd->add_option("file", input)->required();
  flat_cmd->add_option("--format", format)->check(CLI::IsMember(formats));
  flat_cmd->add_option("--exclude", exclude_path);
  flat_cmd->add_flag("--lwcc", lwcc);
  flat_cmd->add_option("--out", out_path);

  // generate
  std::size_t sources = 250, intermediates = 500, targets = 250;
  double alpha = 0.0, beta = 0.5;
  std::string indegree = "poisson:2", template_path;
  auto *generate_cmd = app.add_subcommand("generate", "synthetic networks");
  generate_cmd->require_subcommand(1);
  auto *gen_rp = generate_cmd->add_subcommand("rp", "Reuse-Preference model");
  gen_rp->add_option("--sources", sources)->check(CLI::PositiveNumber);
  gen_rp->add_option("--intermediates", intermediates);
  gen_rp->add_option("--targets", targets)->check(CLI::PositiveNumber);
  gen_rp->add_option("--alpha", alpha);
  gen_rp->add_option("--indegree", indegree, "poisson:<mean> or const:<c>");
  gen_rp->add_option("--template", template_path,
                     "fit to the layers of this network instead");
  gen_rp->add_option("--format", format)->check(CLI::IsMember(formats));
  gen_rp->add_option("--seed", seed);
  gen_rp->add_option("--out", out_path)->required();
  auto *gen_ec = generate_cmd->add_subcommand("edgecopy", "edge-copying model");
  gen_ec->add_option("--template", template_path)->required();
  gen_ec->add_option("--format", format)->check(CLI::IsMember(formats));
  gen_ec->add_option("--beta", beta)->check(CLI::Range(0.0, 1.0));
  gen_ec->add_option("--seed", seed);
  gen_ec->add_option("--out", out_path)->required();

  // fit
  AlphaGrid grid;
  std::size_t ensemble = 100;
  auto *fit_cmd = app.add_subcommand("fit", "estimate the reuse exponent alpha");
  fit_cmd->add_option("file", input)->required();
  fit_cmd->add_option("--format", format)->check(CLI::IsMember(formats));
  fit_cmd->add_option("--exclude", exclude_path);
  fit_cmd->add_flag("--lwcc", lwcc);
  fit_cmd->add_option("--alpha-min", grid.min);
  fit_cmd->add_option("--alpha-max", grid.max);
  fit_cmd->add_option("--alpha-step", grid.step);
  fit_cmd->add_option("--ensemble", ensemble);
  fit_cmd->add_option("--tau", tau)->check(CLI::Range(0.0, 1.0));
  fit_cmd->add_option("--seed", seed);
  fit_cmd->add_option("--csv", csv_path, "per-alpha table");

  // sweep
  std::string model = "rp";
  std::vector<double> values;
  std::size_t runs = 100;
  auto *sweep_cmd = app.add_subcommand("sweep", "ensemble statistics per parameter");
  sweep_cmd->add_option("--model", model)->check(CLI::IsMember({"rp", "edgecopy"}));
  sweep_cmd->add_option("--values", values, "alpha (rp) or beta (edgecopy) list")
      ->delimiter(',')
      ->required();
  sweep_cmd->add_option("--sources", sources)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--intermediates", intermediates);
  sweep_cmd->add_option("--targets", targets)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--indegree", indegree);
  sweep_cmd->add_option("--template", template_path, "scaffold for edgecopy");
  sweep_cmd->add_option("--format", format)->check(CLI::IsMember(formats));
  sweep_cmd->add_option("--runs", runs);
  sweep_cmd->add_option("--tau", tau)->check(CLI::Range(0.0, 1.0));
  sweep_cmd->add_option("--seed", seed);
  std::string sweep_csv_path = "-";
  sweep_cmd->add_option("--csv", sweep_csv_path, "result table path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (*analyze_cmd) {
      AnalysisOptions options;
      options.core.tau = tau;
      options.core.ties = tie == "seeded" ? TiePolicy::seeded(seed)
                                          : TiePolicy{TieMode::Deterministic, seed};
      options.lwcc = lwcc;
      options.exclude = read_names(exclude_path);
      options.enumerate_limit = enumerate;
      Provenance provenance;
      provenance.input = input;
      provenance.format = format;
      const auto a = analyze(read_graph(input, format), options, provenance);
      if (json_path.empty() && csv_path.empty() && dot_path.empty())
        json_path = "-";
      if (!json_path.empty())
        write_text(json_path, report_to_json(a.report), out);
      if (!csv_path.empty())
        write_text(csv_path,
                   write_metrics_csv(a.network, a.stats, a.hourglass.core),
                   out);
      if (!dot_path.empty())
        write_text(dot_path,
                   write_dot(a.network, a.stats, a.hourglass.core, bins), out);
    } else if (*flat_cmd) {
      const auto g = read_network(input, format, exclude_path, lwcc);
      write_text(out_path, write_edgelist(flatten(g)), out);
    } else if (*gen_rp) {
      DependencyNetwork g;
      if (!template_path.empty()) {
        const auto scaffold = layered_scaffold_from(
            read_network(template_path, format, "", false));
        g = rp_generate_fitted(scaffold, alpha, seed);
      } else {
        g = rp_generate({sources, intermediates, targets, alpha,
                         parse_indegree(indegree), seed});
      }
      write_text(out_path, write_edgelist(g), out);
    } else if (*gen_ec) {
      const auto scaffold = layered_scaffold_from(
          read_network(template_path, format, "", false));
      write_text(out_path,
                 write_edgelist(edge_copy_generate_fitted({beta, seed, &scaffold})),
                 out);
    } else if (*fit_cmd) {
      const auto g = read_network(input, format, exclude_path, lwcc);
      const auto result = fit_alpha(g, grid, ensemble, tau, seed);
      out << "alpha " << format_double(result.alpha) << "\n"
          << "target_h_score " << format_double(result.target_h_score) << "\n";
      if (!csv_path.empty()) {
        std::ostringstream table;
        table << "alpha,runs,h_mean,h_ci\n";
        for (const auto &row : result.table)
          table << format_double(row.alpha) << ',' << row.h_score.n << ','
                << format_double(row.h_score.mean) << ','
                << format_double(row.h_score.ci) << '\n';
        write_text(csv_path, table.str(), out);
      }
    } else if (*sweep_cmd) {
      std::vector<SweepRow> rows;
      if (model == "rp") {
        RpConfig cfg{sources, intermediates, targets, 0.0,
                     parse_indegree(indegree), seed};
        rows = sweep_rp_alpha(cfg, values, runs, tau);
      } else {
        if (template_path.empty())
          throw Error("sweep --model edgecopy needs --template");
        const auto scaffold = layered_scaffold_from(
            read_network(template_path, format, "", false));
        rows = sweep_edge_copy_beta(scaffold, values, runs, tau, seed);
      }
      write_text(sweep_csv_path,
                 sweep_csv(model == "rp" ? "alpha" : "beta", rows), out);
    }
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvariantViolation &e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

} // namespace hourglass::cli

#endif // HOURGLASS_TOOLS_CLI_HPP
