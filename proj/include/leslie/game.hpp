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

// The two-country policy game.
//
// Every joint profile fixes, for each country, a Leslie matrix and an
// immigration vector; the country's payoff is its (weighted) total
// population after projecting `horizon` intervals under that profile. From
// these payoffs we build the simultaneous 2-player normal form, the
// sequential normal form in which the follower picks a contingent strategy
// (one response per leader action), pure Nash equilibria, and the
// backward-induction outcome of the leader-follower game.
//
// Payoffs are compared exactly, without an epsilon.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "leslie/errors.hpp"
#include "leslie/leslie.hpp"
#include "leslie/scenario.hpp"

namespace leslie {

struct Action {
  std::size_t id = 0;
  std::string label;

  friend bool operator==(const Action&, const Action&) = default;
};

inline std::vector<Action> actions_of(const Scenario& scenario,
                                      CountryId country) {
  std::vector<Action> out;
  const auto& labels = scenario.country(country).actions;
  for (std::size_t a = 0; a < labels.size(); ++a) out.push_back({a, labels[a]});
  return out;
}

// A follower plan: responses[a] is the follower action played when the
// leader plays a. The label concatenates response labels in leader order.
struct ContingentStrategy {
  std::vector<std::size_t> responses;
  std::string label;

  friend bool operator==(const ContingentStrategy&,
                         const ContingentStrategy&) = default;
};

// (row player, column player).
struct PayoffPair {
  double row = 0.0;
  double col = 0.0;

  friend bool operator==(const PayoffPair&, const PayoffPair&) = default;
  friend std::ostream& operator<<(std::ostream& os, const PayoffPair& p) {
    return os << "(" << p.row << "," << p.col << ")";
  }
};

struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Cell& c) {
    return os << "(" << c.row << "," << c.col << ")";
  }
};

class BimatrixGame {
 public:
  BimatrixGame(std::vector<std::string> row_labels,
               std::vector<std::string> col_labels,
               std::vector<std::vector<PayoffPair>> cells)
      : row_labels_(std::move(row_labels)),
        col_labels_(std::move(col_labels)),
        cells_(std::move(cells)) {
    if (row_labels_.empty() || col_labels_.empty()) {
      throw ValidationError("bimatrix game needs at least one row and column");
    }
    if (cells_.size() != row_labels_.size()) {
      throw DimensionMismatch("cell grid has " + std::to_string(cells_.size()) +
                              " rows, expected " +
                              std::to_string(row_labels_.size()));
    }
    for (std::size_t r = 0; r < cells_.size(); ++r) {
      if (cells_[r].size() != col_labels_.size()) {
        throw DimensionMismatch("row " + std::to_string(r + 1) + " has " +
                                std::to_string(cells_[r].size()) +
                                " cells, expected " +
                                std::to_string(col_labels_.size()));
      }
      for (const auto& p : cells_[r]) {
        if (!std::isfinite(p.row) || !std::isfinite(p.col)) {
          throw ValidationError("non-finite payoff in row " +
                                std::to_string(r + 1));
        }
      }
    }
  }

  std::size_t rows() const { return row_labels_.size(); }
  std::size_t cols() const { return col_labels_.size(); }
  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }
  const std::vector<std::vector<PayoffPair>>& cells() const { return cells_; }
  const PayoffPair& at(std::size_t r, std::size_t c) const {
    return cells_.at(r).at(c);
  }

  friend bool operator==(const BimatrixGame&, const BimatrixGame&) = default;

 private:
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  std::vector<std::vector<PayoffPair>> cells_;
};

struct NashResult {
  std::vector<Cell> equilibria;  // row-major order
};

enum class TieBreak {
  kLowestIndex,
  kHighestIndex,
};

struct SpeResult {
  CountryId leader = 0;
  CountryId follower = 0;
  Action leader_action;
  ContingentStrategy follower_response_map;
  JointProfile realized_profile;
  PayoffPair payoffs;  // (leader, follower)
  // Every leader action that is optimal under follower_response_map.
  std::vector<std::size_t> leader_alternates;
  // follower_alternates[a]: every follower best response to leader action a.
  std::vector<std::vector<std::size_t>> follower_alternates;
};

// Terminal payoff of each country under a joint profile: project the
// country's initial vector `horizon` times with the profile's matrix and
// immigration, then take the weighted total.
inline std::vector<double> profile_payoffs(
    const Scenario& scenario, const JointProfile& profile,
    NegativePolicy policy = NegativePolicy::kRaise) {
  if (profile.actions.size() != scenario.countries().size()) {
    throw ValidationError("profile must name one action per country");
  }
  const auto weights = scenario.effective_weights();
  std::vector<double> out;
  for (CountryId c = 0; c < scenario.countries().size(); ++c) {
    const auto& dyn = scenario.dynamics(profile, c);
    PopulationVector state = scenario.country(c).initial;
    for (std::size_t t = 0; t < scenario.horizon(); ++t) {
      try {
        state = project_once(dyn.matrix, state, dyn.immigration, policy);
      } catch (const NegativePopulation& e) {
        throw NegativePopulation(e.age_class(), e.value(), t + 1);
      }
    }
    out.push_back(weighted_total(state, weights));
  }
  return out;
}

// All |follower|^|leader| contingent strategies, lexicographic in
// (response to leader action 1, response to leader action 2, ...).
inline std::vector<ContingentStrategy> enumerate_follower_strategies(
    const std::vector<Action>& leader_actions,
    const std::vector<Action>& follower_actions) {
  if (leader_actions.empty() || follower_actions.empty()) {
    throw ValidationError("both action lists must be non-empty");
  }
  std::vector<ContingentStrategy> out;
  std::vector<std::size_t> digits(leader_actions.size(), 0);
  while (true) {
    ContingentStrategy s;
    for (std::size_t d : digits) {
      s.responses.push_back(follower_actions[d].id);
      s.label += follower_actions[d].label;
    }
    out.push_back(std::move(s));
    std::size_t pos = digits.size();
    while (pos > 0) {
      --pos;
      if (++digits[pos] < follower_actions.size()) break;
      digits[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

namespace internal {

inline void RequireTwoCountries(const Scenario& scenario) {
  if (scenario.countries().size() != 2) {
    throw ValidationError("the game needs exactly 2 countries, scenario has " +
                          std::to_string(scenario.countries().size()));
  }
}

inline JointProfile ProfileFor(CountryId leader, std::size_t leader_action,
                               std::size_t follower_action) {
  JointProfile p{{0, 0}};
  p.actions[leader] = leader_action;
  p.actions[1 - leader] = follower_action;
  return p;
}

}  // namespace internal

inline BimatrixGame build_simultaneous_normal_form(
    const Scenario& scenario, NegativePolicy policy = NegativePolicy::kRaise) {
  internal::RequireTwoCountries(scenario);
  const auto& a = scenario.country(0).actions;
  const auto& b = scenario.country(1).actions;
  std::vector<std::vector<PayoffPair>> cells(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const auto u = profile_payoffs(scenario, JointProfile{{i, j}}, policy);
      cells[i].push_back({u[0], u[1]});
    }
  }
  return BimatrixGame(a, b, std::move(cells));
}

// Re-orients the simultaneous form so the leader is the row player.
inline BimatrixGame leader_grid(const Scenario& scenario, CountryId leader,
                                NegativePolicy policy = NegativePolicy::kRaise) {
  internal::RequireTwoCountries(scenario);
  if (leader > 1) throw ValidationError("leader must be country 0 or 1");
  const CountryId follower = 1 - leader;
  const auto& la = scenario.country(leader).actions;
  const auto& fa = scenario.country(follower).actions;
  std::vector<std::vector<PayoffPair>> cells(la.size());
  for (std::size_t i = 0; i < la.size(); ++i) {
    for (std::size_t j = 0; j < fa.size(); ++j) {
      const auto u = profile_payoffs(
          scenario, internal::ProfileFor(leader, i, j), policy);
      cells[i].push_back({u[leader], u[follower]});
    }
  }
  return BimatrixGame(la, fa, std::move(cells));
}

// Sequential normal form from a leader-oriented grid (rows = leader
// actions, columns = follower actions).
inline BimatrixGame sequential_normal_form(const BimatrixGame& grid) {
  std::vector<Action> leader;
  std::vector<Action> follower;
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    leader.push_back({i, grid.row_labels()[i]});
  }
  for (std::size_t j = 0; j < grid.cols(); ++j) {
    follower.push_back({j, grid.col_labels()[j]});
  }
  const auto strategies = enumerate_follower_strategies(leader, follower);
  std::vector<std::string> col_labels;
  for (const auto& s : strategies) col_labels.push_back(s.label);
  std::vector<std::vector<PayoffPair>> cells(grid.rows());
  for (std::size_t a = 0; a < grid.rows(); ++a) {
    for (const auto& s : strategies) {
      cells[a].push_back(grid.at(a, s.responses[a]));
    }
  }
  return BimatrixGame(grid.row_labels(), std::move(col_labels),
                      std::move(cells));
}

// Rows are the leader's actions, columns the follower's contingent
// strategies; cells hold (leader, follower) payoffs.
inline BimatrixGame build_sequential_normal_form(
    const Scenario& scenario, CountryId leader,
    NegativePolicy policy = NegativePolicy::kRaise) {
  return sequential_normal_form(leader_grid(scenario, leader, policy));
}

// Cells whose row payoff is maximal in its column and whose column payoff
// is maximal in its row. Ties count as maxima.
inline NashResult pure_nash(const BimatrixGame& game) {
  std::vector<double> best_row_in_col(game.cols(), -INFINITY);
  std::vector<double> best_col_in_row(game.rows(), -INFINITY);
  for (std::size_t r = 0; r < game.rows(); ++r) {
    for (std::size_t c = 0; c < game.cols(); ++c) {
      const auto& p = game.at(r, c);
      best_row_in_col[c] = std::max(best_row_in_col[c], p.row);
      best_col_in_row[r] = std::max(best_col_in_row[r], p.col);
    }
  }
  NashResult result;
  for (std::size_t r = 0; r < game.rows(); ++r) {
    for (std::size_t c = 0; c < game.cols(); ++c) {
      const auto& p = game.at(r, c);
      if (p.row == best_row_in_col[c] && p.col == best_col_in_row[r]) {
        result.equilibria.push_back({r, c});
      }
    }
  }
  return result;
}

// True iff no unilateral deviation strictly improves the deviating
// player's payoff.
inline bool verify_equilibrium(const BimatrixGame& game, Cell cell) {
  if (cell.row >= game.rows() || cell.col >= game.cols()) {
    throw std::out_of_range("cell (" + std::to_string(cell.row) + "," +
                            std::to_string(cell.col) + ") outside " +
                            std::to_string(game.rows()) + "x" +
                            std::to_string(game.cols()) + " game");
  }
  const auto& here = game.at(cell.row, cell.col);
  for (std::size_t r = 0; r < game.rows(); ++r) {
    if (game.at(r, cell.col).row > here.row) return false;
  }
  for (std::size_t c = 0; c < game.cols(); ++c) {
    if (game.at(cell.row, c).col > here.col) return false;
  }
  return true;
}

namespace internal {

inline std::vector<std::size_t> Argmaxes(const std::vector<double>& values) {
  std::vector<std::size_t> out;
  double best = -INFINITY;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > best) {
      best = values[i];
      out.clear();
    }
    if (values[i] == best) out.push_back(i);
  }
  return out;
}

inline std::size_t Pick(const std::vector<std::size_t>& options,
                        TieBreak tie_break) {
  return tie_break == TieBreak::kLowestIndex ? options.front()
                                             : options.back();
}

}  // namespace internal

// Backward induction on a leader-oriented grid (rows = leader actions,
// columns = follower actions, cells = (leader, follower)). `leader` and
// `follower` in the result are 0 and 1; realized_profile is
// (leader action, follower action).
inline SpeResult solve_leader_follower(const BimatrixGame& grid,
                                       TieBreak tie_break =
                                           TieBreak::kLowestIndex) {
  SpeResult result;
  result.leader = 0;
  result.follower = 1;
  for (std::size_t a = 0; a < grid.rows(); ++a) {
    std::vector<double> follower_payoffs;
    for (std::size_t f = 0; f < grid.cols(); ++f) {
      follower_payoffs.push_back(grid.at(a, f).col);
    }
    auto best = internal::Argmaxes(follower_payoffs);
    const std::size_t chosen = internal::Pick(best, tie_break);
    result.follower_response_map.responses.push_back(chosen);
    result.follower_response_map.label += grid.col_labels()[chosen];
    result.follower_alternates.push_back(std::move(best));
  }

  std::vector<double> leader_payoffs;
  for (std::size_t a = 0; a < grid.rows(); ++a) {
    leader_payoffs.push_back(
        grid.at(a, result.follower_response_map.responses[a]).row);
  }
  result.leader_alternates = internal::Argmaxes(leader_payoffs);
  const std::size_t lead = internal::Pick(result.leader_alternates, tie_break);
  const std::size_t response = result.follower_response_map.responses[lead];
  result.leader_action = {lead, grid.row_labels()[lead]};
  result.realized_profile = JointProfile{{lead, response}};
  result.payoffs = grid.at(lead, response);
  return result;
}

// The follower best-responds at every node; the leader maximizes against
// those responses. realized_profile is in country order.
inline SpeResult backward_induction(
    const Scenario& scenario, CountryId leader,
    TieBreak tie_break = TieBreak::kLowestIndex,
    NegativePolicy policy = NegativePolicy::kRaise) {
  SpeResult result =
      solve_leader_follower(leader_grid(scenario, leader, policy), tie_break);
  result.leader = leader;
  result.follower = 1 - leader;
  result.realized_profile = internal::ProfileFor(
      leader, result.leader_action.id,
      result.follower_response_map.responses[result.leader_action.id]);
  return result;
}

}  // namespace leslie
