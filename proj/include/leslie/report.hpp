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

// Text renderers: CSV and Markdown payoff tables, DOT game trees, CSV
// trajectories, and plain-text solver reports. All output is deterministic.

#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "leslie/errors.hpp"
#include "leslie/game.hpp"
#include "leslie/leslie.hpp"
#include "leslie/scenario.hpp"

namespace leslie {

enum class Format {
  kMarkdown,
  kCsv,
  kDot,
};

inline std::string_view format_name(Format f) {
  switch (f) {
    case Format::kMarkdown:
      return "markdown";
    case Format::kCsv:
      return "csv";
    case Format::kDot:
      return "dot";
  }
  return "?";
}

struct RenderOptions {
  Format format = Format::kCsv;
  bool integer_snap = true;
};

// Values within 1e-6 of an integer print as that integer when snapping;
// everything else prints in shortest round-trip form.
inline std::string format_number(double v, bool integer_snap = true) {
  if (integer_snap && std::abs(v - std::round(v)) <= 1e-6 &&
      std::abs(v) < 9e15) {
    const long long n = std::llround(v);
    return std::to_string(n);
  }
  if (v == 0.0) return "0";  // drops the sign of -0
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

namespace internal {

inline std::string MarkdownField(std::string_view s) {
  std::string out;
  for (char ch : s) {
    if (ch == '|') out += '\\';
    out += ch;
  }
  return out;
}

inline std::string DotString(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

inline std::string PairText(const PayoffPair& p, bool snap) {
  return format_number(p.row, snap) + "," + format_number(p.col, snap);
}

}  // namespace internal

// One header row of column labels (preceded by an empty corner cell), then
// one row per row strategy; each cell is "u_row,u_col".
inline std::string render_bimatrix(const BimatrixGame& game,
                                   const RenderOptions& opts = {}) {
  std::string out;
  const bool snap = opts.integer_snap;
  switch (opts.format) {
    case Format::kCsv:
      for (const auto& label : game.col_labels()) out += "," + csv_field(label);
      out += "\n";
      for (std::size_t r = 0; r < game.rows(); ++r) {
        out += csv_field(game.row_labels()[r]);
        for (std::size_t c = 0; c < game.cols(); ++c) {
          out += "," + internal::PairText(game.at(r, c), snap);
        }
        out += "\n";
      }
      return out;
    case Format::kMarkdown:
      out += "| |";
      for (const auto& label : game.col_labels()) {
        out += " " + internal::MarkdownField(label) + " |";
      }
      out += "\n|---|";
      for (std::size_t c = 0; c < game.cols(); ++c) out += "---|";
      out += "\n";
      for (std::size_t r = 0; r < game.rows(); ++r) {
        out += "| " + internal::MarkdownField(game.row_labels()[r]) + " |";
        for (std::size_t c = 0; c < game.cols(); ++c) {
          out += " " + internal::PairText(game.at(r, c), snap) + " |";
        }
        out += "\n";
      }
      return out;
    case Format::kDot:
      break;
  }
  throw ValidationError("unsupported format for payoff table: " +
                        std::string(format_name(opts.format)));
}

// Leader decision at the root, one follower decision node per leader
// action, one leaf per joint profile labeled "(u_leader,u_follower)".
inline std::string render_tree(const Scenario& scenario, CountryId leader,
                               NegativePolicy policy = NegativePolicy::kRaise) {
  const BimatrixGame grid = leader_grid(scenario, leader, policy);
  const std::string& leader_name = scenario.country(leader).name;
  const std::string& follower_name = scenario.country(1 - leader).name;

  std::string out = "digraph game_tree {\n";
  out += "  root [label=" + internal::DotString(leader_name) +
         ", shape=circle];\n";
  for (std::size_t a = 0; a < grid.rows(); ++a) {
    const std::string node = "n" + std::to_string(a);
    out += "  " + node + " [label=" + internal::DotString(follower_name) +
           ", shape=circle];\n";
    out += "  root -> " + node +
           " [label=" + internal::DotString(grid.row_labels()[a]) + "];\n";
    for (std::size_t f = 0; f < grid.cols(); ++f) {
      const std::string leaf =
          "leaf_" + std::to_string(a) + "_" + std::to_string(f);
      out += "  " + leaf + " [label=" +
             internal::DotString(
                 "(" + internal::PairText(grid.at(a, f), true) + ")") +
             ", shape=box];\n";
      out += "  " + node + " -> " + leaf +
             " [label=" + internal::DotString(grid.col_labels()[f]) + "];\n";
    }
  }
  out += "}\n";
  return out;
}

// "t,class_1,...,class_k,total", one row per state.
inline std::string render_trajectory(const std::vector<PopulationVector>& traj,
                                     const RenderOptions& opts = {}) {
  if (opts.format != Format::kCsv) {
    throw ValidationError("unsupported format for trajectory: " +
                          std::string(format_name(opts.format)));
  }
  if (traj.empty()) return "t,total\n";
  std::string out = "t";
  for (std::size_t i = 0; i < traj.front().size(); ++i) {
    out += ",class_" + std::to_string(i + 1);
  }
  out += ",total\n";
  for (std::size_t t = 0; t < traj.size(); ++t) {
    out += std::to_string(t);
    for (double c : traj[t].counts()) {
      out += "," + format_number(c, opts.integer_snap);
    }
    out += "," + format_number(total_population(traj[t]), opts.integer_snap);
    out += "\n";
  }
  return out;
}

// "(row,col): u_row,u_col" per equilibrium.
inline std::string render_nash(const BimatrixGame& game,
                               const NashResult& nash) {
  std::string out;
  for (const auto& cell : nash.equilibria) {
    out += "(" + game.row_labels()[cell.row] + "," +
           game.col_labels()[cell.col] + "): " +
           internal::PairText(game.at(cell.row, cell.col), true) + "\n";
  }
  return out;
}

inline std::string render_spe(const Scenario& scenario,
                              const SpeResult& spe) {
  const auto& leader = scenario.country(spe.leader);
  const auto& follower = scenario.country(spe.follower);
  auto join = [](const std::vector<std::size_t>& ids,
                 const std::vector<std::string>& labels) {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) s += " ";
      s += labels[ids[i]];
    }
    return s;
  };

  std::string out;
  out += "leader: " + leader.name + "\n";
  out += "follower: " + follower.name + "\n";
  out += "leader action: " + spe.leader_action.label + "\n";
  out += "follower response map: " + spe.follower_response_map.label + "\n";
  for (std::size_t a = 0; a < leader.actions.size(); ++a) {
    out += "  " + leader.name + "=" + leader.actions[a] + " -> " +
           follower.name + "=" +
           follower.actions[spe.follower_response_map.responses[a]] +
           " (best: " + join(spe.follower_alternates[a], follower.actions) +
           ")\n";
  }
  out += "realized profile:";
  for (std::size_t c = 0; c < scenario.countries().size(); ++c) {
    const auto& country = scenario.country(c);
    out += (c ? ", " : " ") + country.name + "=" +
           country.actions[spe.realized_profile.actions[c]];
  }
  out += "\n";
  out += "payoffs (leader, follower): (" + format_number(spe.payoffs.row) +
         ", " + format_number(spe.payoffs.col) + ")\n";
  out += "optimal leader actions: " +
         join(spe.leader_alternates, leader.actions) + "\n";
  return out;
}

}  // namespace leslie
