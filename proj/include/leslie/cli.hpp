// Copyright 2026 The leslie-game Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. run() is the whole program minus process setup,
// so tests can drive it with string streams.
//
// Exit codes: 0 success, 1 domain error (bad scenario, negative
// population, non-convergence), 2 usage error.

#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "leslie/errors.hpp"
#include "leslie/game.hpp"
#include "leslie/leslie.hpp"
#include "leslie/report.hpp"
#include "leslie/scenario.hpp"
#include "leslie/scenario_io.hpp"

namespace leslie::cli {

namespace internal {

// Bad flag values detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SourceOptions {
  std::string path;
  bool builtin = false;
};

inline void AddSource(CLI::App* cmd, SourceOptions& src) {
  auto* file = cmd->add_option("--scenario", src.path, "Scenario JSON file");
  auto* builtin = cmd->add_flag("--builtin-paper", src.builtin,
                                "Use the built-in two-country scenario");
  file->excludes(builtin);
}

inline Scenario LoadScenario(const SourceOptions& src) {
  if (src.builtin) return builtin_paper_scenario();
  if (src.path.empty()) {
    throw UsageError("one of --scenario FILE or --builtin-paper is required");
  }
  std::ifstream in(src.path, std::ios::binary);
  if (!in) throw Error(src.path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const Error& e) {
    throw Error(src.path + ": " + e.what());
  }
}

inline CountryId ResolveCountry(const Scenario& s, const std::string& name,
                                const char* flag) {
  if (name.empty()) return 0;
  if (auto id = s.find_country(name)) return *id;
  throw UsageError(std::string(flag) + ": unknown country '" + name + "'");
}

inline JointProfile ResolveProfile(const Scenario& s, const std::string& text) {
  if (text.empty()) throw UsageError("--profile is required");
  std::vector<std::string> labels;
  std::string current;
  for (char ch : text) {
    if (ch == ',') {
      labels.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  labels.push_back(current);
  if (labels.size() != s.countries().size()) {
    throw UsageError("--profile needs " +
                     std::to_string(s.countries().size()) +
                     " comma-separated action labels");
  }
  JointProfile profile;
  for (std::size_t c = 0; c < labels.size(); ++c) {
    auto a = s.find_action(c, labels[c]);
    if (!a) {
      throw UsageError("--profile: unknown action '" + labels[c] +
                       "' for country '" + s.country(c).name + "'");
    }
    profile.actions.push_back(*a);
  }
  return profile;
}

inline Format ResolveFormat(const std::string& name) {
  if (name == "csv") return Format::kCsv;
  if (name == "markdown") return Format::kMarkdown;
  if (name == "dot") return Format::kDot;
  throw UsageError("--format: unknown format '" + name + "'");
}

inline NegativePolicy Policy(bool clamp) {
  return clamp ? NegativePolicy::kClamp : NegativePolicy::kRaise;
}

}  // namespace internal

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Leslie-matrix population projection and two-country policy "
               "games",
               "leslie_game"};
  app.require_subcommand(1);

  internal::SourceOptions src;
  bool clamp = false;
  std::string country;
  std::string profile_text;
  std::string leader_name;
  std::string format_name = "csv";
  std::optional<std::size_t> steps;
  EigenOptions eigen_opts;
  bool simultaneous = false;

  auto* project = app.add_subcommand("project", "Project one country's "
                                                "population under a profile");
  internal::AddSource(project, src);
  project->add_option("--country", country, "Country name (default: first)");
  project->add_option("--profile", profile_text,
                      "Action labels in country order, e.g. S,I");
  project->add_option("--steps", steps,
                      "Projection intervals (default: scenario horizon)");
  project->add_option("--format", format_name, "csv");
  project->add_flag("--clamp", clamp, "Floor negative counts at zero");

  auto* eigen = app.add_subcommand(
      "eigen", "Dominant eigenvalue and stable age distribution");
  internal::AddSource(eigen, src);
  eigen->add_option("--country", country, "Country name (default: first)");
  eigen->add_option("--profile", profile_text,
                    "Action labels in country order, e.g. S,I");
  eigen->add_option("--tol", eigen_opts.tol, "Residual tolerance");
  eigen->add_option("--max-iter", eigen_opts.max_iter, "Iteration cap");

  auto* table = app.add_subcommand("table", "Normal-form payoff table");
  internal::AddSource(table, src);
  table->add_option("--leader", leader_name,
                    "Country moving first (default: first country)");
  table->add_flag("--simultaneous", simultaneous,
                  "Simultaneous-move table instead of leader-follower");
  table->add_option("--format", format_name, "csv or markdown");
  table->add_flag("--clamp", clamp, "Floor negative counts at zero");

  auto* nash = app.add_subcommand("nash", "Pure Nash equilibria");
  internal::AddSource(nash, src);
  nash->add_option("--leader", leader_name,
                   "Country moving first (default: first country)");
  nash->add_flag("--simultaneous", simultaneous,
                 "Simultaneous-move game instead of leader-follower");
  nash->add_flag("--clamp", clamp, "Floor negative counts at zero");

  auto* spe = app.add_subcommand("spe", "Backward-induction outcome");
  internal::AddSource(spe, src);
  spe->add_option("--first", leader_name,
                  "Country deciding first (default: first country)");
  spe->add_flag("--clamp", clamp, "Floor negative counts at zero");

  auto* tree = app.add_subcommand("tree", "Game tree as Graphviz DOT");
  internal::AddSource(tree, src);
  tree->add_option("--leader", leader_name,
                   "Country moving first (default: first country)");
  tree->add_flag("--clamp", clamp, "Floor negative counts at zero");

  auto* show = app.add_subcommand(
      "show-paper", "Print the built-in scenario as a scenario file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*show) {
      out << serialize_scenario(builtin_paper_scenario());
      return 0;
    }

    const Scenario scenario = internal::LoadScenario(src);
    const NegativePolicy policy = internal::Policy(clamp);

    if (*project) {
      const CountryId c =
          internal::ResolveCountry(scenario, country, "--country");
      const JointProfile profile =
          internal::ResolveProfile(scenario, profile_text);
      RenderOptions opts{internal::ResolveFormat(format_name)};
      if (opts.format != Format::kCsv) {
        throw internal::UsageError("project supports --format csv only");
      }
      const auto& dyn = scenario.dynamics(profile, c);
      const auto traj = project_trajectory(
          dyn.matrix, scenario.country(c).initial, dyn.immigration,
          steps.value_or(scenario.horizon()), policy);
      out << render_trajectory(traj, opts);
      return 0;
    }

    if (*eigen) {
      const CountryId c =
          internal::ResolveCountry(scenario, country, "--country");
      const JointProfile profile =
          internal::ResolveProfile(scenario, profile_text);
      const auto result =
          dominant_eigen(scenario.dynamics(profile, c).matrix, eigen_opts);
      out << "lambda," << format_number(result.lambda, false) << "\n";
      out << "iterations," << result.iterations << "\n";
      out << "residual," << format_number(result.residual, false) << "\n";
      for (std::size_t i = 0; i < result.stable_distribution.size(); ++i) {
        out << "class_" << i + 1 << ","
            << format_number(result.stable_distribution[i], false) << "\n";
      }
      return 0;
    }

    if (*table || *nash) {
      const CountryId leader =
          internal::ResolveCountry(scenario, leader_name, "--leader");
      const BimatrixGame game =
          simultaneous ? build_simultaneous_normal_form(scenario, policy)
                       : build_sequential_normal_form(scenario, leader, policy);
      if (*table) {
        const Format f = internal::ResolveFormat(format_name);
        if (f == Format::kDot) {
          throw internal::UsageError("table supports csv or markdown");
        }
        out << render_bimatrix(game, RenderOptions{f});
      } else {
        out << render_nash(game, pure_nash(game));
      }
      return 0;
    }

    if (*spe) {
      const CountryId leader =
          internal::ResolveCountry(scenario, leader_name, "--first");
      out << render_spe(scenario,
                        backward_induction(scenario, leader,
                                           TieBreak::kLowestIndex, policy));
      return 0;
    }

    if (*tree) {
      const CountryId leader =
          internal::ResolveCountry(scenario, leader_name, "--leader");
      out << render_tree(scenario, leader, policy);
      return 0;
    }
  } catch (const internal::UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace leslie::cli
