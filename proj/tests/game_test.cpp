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

#include "leslie/game.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "leslie/scenario.hpp"
#include "support/generators.hpp"

namespace leslie {
namespace {

constexpr std::size_t kS = 0;
constexpr std::size_t kI = 1;

using Row = std::vector<PayoffPair>;

std::vector<std::string> Labels(const std::vector<ContingentStrategy>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(s.label);
  return out;
}

// Two countries with the given action labels and the same dynamics under
// every profile.
Scenario ConstantScenario(std::vector<std::string> a_actions,
                          std::vector<std::string> b_actions) {
  const auto l = make_leslie({0, 1}, {0.5});
  const ImmigrationVector imm({1, 1});
  std::vector<CountrySpec> countries{
      {"A", a_actions, PopulationVector({10, 10})},
      {"B", b_actions, PopulationVector({10, 10})},
  };
  std::vector<EffectEntry> effects;
  for (std::size_t i = 0; i < a_actions.size(); ++i) {
    for (std::size_t j = 0; j < b_actions.size(); ++j) {
      effects.push_back({{{i, j}}, {{l, imm}, {l, imm}}});
    }
  }
  return Scenario(2, std::move(countries), std::move(effects));
}

// Country payoffs depend on (own action, rival action) the same way for
// both countries.
Scenario SymmetricScenario() {
  const LeslieMatrix own[2] = {make_leslie({0, 3, 1}, {0.4, 0.6}),
                               make_leslie({0, 2, 1}, {0.2, 0.4})};
  const ImmigrationVector imm[2][2] = {
      {ImmigrationVector({5, 10, 10}), ImmigrationVector({0, 0, 0})},
      {ImmigrationVector({30, 30, 30}), ImmigrationVector({5, 10, 10})}};
  std::vector<CountrySpec> countries{
      {"A", {"S", "I"}, PopulationVector({30, 35, 25})},
      {"B", {"S", "I"}, PopulationVector({30, 35, 25})},
  };
  std::vector<EffectEntry> effects;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      effects.push_back(
          {{{i, j}}, {{own[i], imm[i][j]}, {own[j], imm[j][i]}}});
    }
  }
  return Scenario(3, std::move(countries), std::move(effects));
}

TEST(ProfilePayoffs, PaperProfiles) {
  const auto s = builtin_paper_scenario();
  EXPECT_EQ(profile_payoffs(s, {{kS, kS}}), (std::vector<double>{188, 343}));
  EXPECT_EQ(profile_payoffs(s, {{kS, kI}}), (std::vector<double>{158, 375}));
  EXPECT_EQ(profile_payoffs(s, {{kI, kS}}), (std::vector<double>{230, 328}));
  EXPECT_EQ(profile_payoffs(s, {{kI, kI}}), (std::vector<double>{140, 285}));
}

TEST(ProfilePayoffs, RejectsMalformedProfile) {
  const auto s = builtin_paper_scenario();
  EXPECT_THROW(profile_payoffs(s, {{kS}}), ValidationError);
  EXPECT_THROW(profile_payoffs(s, {{kS, 7}}), ScenarioError);
}

TEST(ProfilePayoffs, LongerHorizonReappliesPolicy) {
  const auto base = builtin_paper_scenario();
  const Scenario two(3, base.countries(), base.effects(), 2);
  // A under (S,S): (135,22,31) -> LA_S gives (97, 54, 13.2) + (5,10,10).
  const auto u = profile_payoffs(two, {{kS, kS}});
  EXPECT_NEAR(u[0], 102 + 64 + 23.2, 1e-12);
}

TEST(ProfilePayoffs, WeightsScaleClasses) {
  const auto base = builtin_paper_scenario();
  const Scenario weighted(3, base.countries(), base.effects(), 1,
                          std::vector<double>{1, 0, 0});
  EXPECT_EQ(profile_payoffs(weighted, {{kS, kS}})[0], 135);
}

TEST(EnumerateFollowerStrategies, PaperOrder) {
  const std::vector<Action> sa{{0, "S"}, {1, "I"}};
  const auto strategies = enumerate_follower_strategies(sa, sa);
  EXPECT_EQ(Labels(strategies),
            (std::vector<std::string>{"SS", "SI", "IS", "II"}));
  EXPECT_EQ(strategies[2].responses, (std::vector<std::size_t>{kI, kS}));
}

TEST(EnumerateFollowerStrategies, DegenerateLists) {
  const std::vector<Action> s{{0, "S"}};
  const std::vector<Action> si{{0, "S"}, {1, "I"}};
  const std::vector<Action> x{{0, "X"}};
  EXPECT_EQ(Labels(enumerate_follower_strategies(s, si)),
            (std::vector<std::string>{"S", "I"}));
  EXPECT_EQ(Labels(enumerate_follower_strategies(si, x)),
            (std::vector<std::string>{"XX"}));
  EXPECT_THROW(enumerate_follower_strategies({}, si), ValidationError);
}

TEST(EnumerateFollowerStrategies, CountLaw) {
  std::vector<Action> leader;
  for (std::size_t n = 1; n <= 3; ++n) {
    leader.push_back({n - 1, "L" + std::to_string(n)});
    std::vector<Action> follower;
    for (std::size_t m = 1; m <= 4; ++m) {
      follower.push_back({m - 1, "f" + std::to_string(m)});
      EXPECT_EQ(enumerate_follower_strategies(leader, follower).size(),
                static_cast<std::size_t>(std::pow(m, n)));
    }
  }
}

TEST(SequentialNormalForm, LeaderA) {
  const auto g = build_sequential_normal_form(builtin_paper_scenario(), 0);
  EXPECT_EQ(g.row_labels(), (std::vector<std::string>{"S", "I"}));
  EXPECT_EQ(g.col_labels(),
            (std::vector<std::string>{"SS", "SI", "IS", "II"}));
  EXPECT_EQ(g.cells()[0],
            (Row{{188, 343}, {188, 343}, {158, 375}, {158, 375}}));
  EXPECT_EQ(g.cells()[1],
            (Row{{230, 328}, {140, 285}, {230, 328}, {140, 285}}));
}

TEST(SequentialNormalForm, LeaderB) {
  const auto g = build_sequential_normal_form(builtin_paper_scenario(), 1);
  EXPECT_EQ(g.cells()[0],
            (Row{{343, 188}, {343, 188}, {328, 230}, {328, 230}}));
  EXPECT_EQ(g.cells()[1],
            (Row{{375, 158}, {285, 140}, {375, 158}, {285, 140}}));
}

TEST(SequentialNormalForm, ProfileIndependentScenarioHasFlatRows) {
  const auto g = build_sequential_normal_form(
      ConstantScenario({"S", "I"}, {"S", "I", "X"}), 0);
  EXPECT_EQ(g.cols(), 9u);
  for (const auto& row : g.cells()) {
    for (const auto& cell : row) EXPECT_EQ(cell, row.front());
  }
}

TEST(SequentialNormalForm, RequiresTwoCountries) {
  const Scenario single(1, {{"A", {"S"}, PopulationVector({1})}},
                        {{{{0}}, {{make_leslie({1}, {}),
                                   ImmigrationVector({0})}}}});
  EXPECT_THROW(build_sequential_normal_form(single, 0), ValidationError);
  EXPECT_THROW(build_simultaneous_normal_form(single), ValidationError);
}

TEST(SimultaneousNormalForm, PaperGrid) {
  const auto g = build_simultaneous_normal_form(builtin_paper_scenario());
  EXPECT_EQ(g.cells()[0], (Row{{188, 343}, {158, 375}}));
  EXPECT_EQ(g.cells()[1], (Row{{230, 328}, {140, 285}}));
  EXPECT_EQ(g.at(kI, kS), (PayoffPair{230, 328}));
}

TEST(SimultaneousNormalForm, SymmetricScenarioIsSwappedTranspose) {
  const auto g = build_simultaneous_normal_form(SymmetricScenario());
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      EXPECT_EQ(g.at(i, j).row, g.at(j, i).col);
      EXPECT_EQ(g.at(i, j).col, g.at(j, i).row);
    }
  }
}

TEST(BimatrixGame, ValidatesShape) {
  EXPECT_THROW(BimatrixGame({"a"}, {"x", "y"}, {{{1, 1}}}), DimensionMismatch);
  EXPECT_THROW(BimatrixGame({}, {}, {}), ValidationError);
  EXPECT_THROW(BimatrixGame({"a"}, {"x"}, {{{NAN, 1}}}), ValidationError);
}

TEST(PureNash, PaperTables) {
  const auto s = builtin_paper_scenario();
  // (S,II) is an equilibrium too: A would drop from 158 to 140 by
  // switching, and 375 is already B's best in row S.
  const std::vector<Cell> expected{{kS, 3}, {kI, 0}, {kI, 2}};
  EXPECT_EQ(pure_nash(build_sequential_normal_form(s, 0)).equilibria,
            expected);
  EXPECT_EQ(pure_nash(build_sequential_normal_form(s, 1)).equilibria,
            expected);
}

TEST(PureNash, PaperListedCellsAreEquilibria) {
  const auto s = builtin_paper_scenario();
  for (CountryId leader = 0; leader < 2; ++leader) {
    const auto g = build_sequential_normal_form(s, leader);
    EXPECT_TRUE(verify_equilibrium(g, {kI, 0}));  // (I,SS)
    EXPECT_TRUE(verify_equilibrium(g, {kI, 2}));  // (I,IS)
    EXPECT_TRUE(verify_equilibrium(g, {kS, 3}));  // (S,II)
  }
}

TEST(PureNash, SingleCell) {
  const BimatrixGame g({"a"}, {"x"}, {{{3, -1}}});
  EXPECT_EQ(pure_nash(g).equilibria, (std::vector<Cell>{{0, 0}}));
}

TEST(PureNash, MatchingPenniesHasNone) {
  const BimatrixGame g({"H", "T"}, {"H", "T"},
                       {{{1, -1}, {-1, 1}}, {{-1, 1}, {1, -1}}});
  EXPECT_TRUE(pure_nash(g).equilibria.empty());
}

TEST(VerifyEquilibrium, PaperCells) {
  const auto g = build_sequential_normal_form(builtin_paper_scenario(), 0);
  EXPECT_TRUE(verify_equilibrium(g, {kI, 0}));   // (I,SS)
  EXPECT_FALSE(verify_equilibrium(g, {kS, 0}));  // S -> I raises 188 to 230
  EXPECT_FALSE(verify_equilibrium(g, {kI, 1}));  // SI -> SS raises 285 to 328
  EXPECT_THROW(verify_equilibrium(g, {2, 0}), std::out_of_range);
  EXPECT_THROW(verify_equilibrium(g, {0, 4}), std::out_of_range);
}

TEST(BackwardInduction, LeaderA) {
  const auto s = builtin_paper_scenario();
  const auto r = backward_induction(s, 0);
  EXPECT_EQ(r.leader, 0u);
  EXPECT_EQ(r.follower, 1u);
  EXPECT_EQ(r.leader_action, (Action{kI, "I"}));
  EXPECT_EQ(r.follower_response_map.label, "IS");
  EXPECT_EQ(r.realized_profile, (JointProfile{{kI, kS}}));
  EXPECT_EQ(r.payoffs, (PayoffPair{230, 328}));
  EXPECT_EQ(r.leader_alternates, (std::vector<std::size_t>{kI}));
}

TEST(BackwardInduction, LeaderB) {
  const auto s = builtin_paper_scenario();
  const auto r = backward_induction(s, 1);
  EXPECT_EQ(r.leader_action.label, "I");
  EXPECT_EQ(r.follower_response_map.label, "IS");
  // Country order: A plays S, B plays I.
  EXPECT_EQ(r.realized_profile, (JointProfile{{kS, kI}}));
  EXPECT_EQ(r.payoffs, (PayoffPair{375, 158}));
}

TEST(BackwardInduction, TotalTieListsEverything) {
  const auto s = ConstantScenario({"S", "I"}, {"S", "I"});
  const auto low = backward_induction(s, 0, TieBreak::kLowestIndex);
  EXPECT_EQ(low.leader_alternates, (std::vector<std::size_t>{0, 1}));
  for (const auto& alts : low.follower_alternates) {
    EXPECT_EQ(alts, (std::vector<std::size_t>{0, 1}));
  }
  EXPECT_EQ(low.leader_action.id, 0u);
  EXPECT_EQ(low.follower_response_map.label, "SS");

  const auto high = backward_induction(s, 0, TieBreak::kHighestIndex);
  EXPECT_EQ(high.leader_action.id, 1u);
  EXPECT_EQ(high.follower_response_map.label, "II");
}

TEST(PureNashProperty, MatchesExhaustiveVerification) {
  testing::Rng rng(101);
  for (int trial = 0; trial < 500; ++trial) {
    const auto g = testing::RandomGame(rng, testing::UniformInt(rng, 1, 4),
                                       testing::UniformInt(rng, 1, 8));
    std::vector<Cell> oracle;
    for (std::size_t r = 0; r < g.rows(); ++r) {
      for (std::size_t c = 0; c < g.cols(); ++c) {
        if (verify_equilibrium(g, {r, c})) oracle.push_back({r, c});
      }
    }
    EXPECT_EQ(pure_nash(g).equilibria, oracle);
  }
}

std::size_t StrategyColumn(const ContingentStrategy& s, std::size_t arity) {
  std::size_t index = 0;
  for (std::size_t r : s.responses) index = index * arity + r;
  return index;
}

TEST(SequentialProperty, DuplicateColumnsAndSpeConsistency) {
  testing::Rng rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = testing::RandomScenario(rng);
    for (CountryId leader = 0; leader < 2; ++leader) {
      const auto g = build_sequential_normal_form(s, leader);
      const auto& la = s.country(leader).actions;
      const auto& fa = s.country(1 - leader).actions;
      const auto strategies =
          enumerate_follower_strategies(actions_of(s, leader),
                                        actions_of(s, 1 - leader));
      ASSERT_EQ(g.cols(),
                static_cast<std::size_t>(std::pow(fa.size(), la.size())));
      for (std::size_t a = 0; a < g.rows(); ++a) {
        for (std::size_t f = 0; f < g.cols(); ++f) {
          for (std::size_t f2 = 0; f2 < g.cols(); ++f2) {
            if (strategies[f].responses[a] == strategies[f2].responses[a]) {
              EXPECT_EQ(g.at(a, f), g.at(a, f2));
            }
          }
        }
      }

      const auto spe = backward_induction(s, leader);
      const std::size_t col =
          StrategyColumn(spe.follower_response_map, fa.size());
      EXPECT_EQ(g.at(spe.leader_action.id, col), spe.payoffs);
      const auto u = profile_payoffs(s, spe.realized_profile);
      EXPECT_EQ(spe.payoffs, (PayoffPair{u[leader], u[1 - leader]}));

      bool unique = true;
      for (const auto& alts : spe.follower_alternates) {
        unique = unique && alts.size() == 1;
      }
      if (unique) {
        const auto nash = pure_nash(g).equilibria;
        EXPECT_NE(std::find(nash.begin(), nash.end(),
                            Cell{spe.leader_action.id, col}),
                  nash.end());
      }

      for (std::size_t a = 0; a < g.rows(); ++a) {
        EXPECT_LE(g.at(a, col).row, spe.payoffs.row);
      }
    }
  }
}

TEST(ArgmaxProperty, PositiveScalingPreservesSolutions) {
  testing::Rng rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testing::RandomGame(rng, testing::UniformInt(rng, 1, 4),
                                       testing::UniformInt(rng, 1, 8));
    const double scale = testing::UniformInt(rng, 1, 1000);
    auto cells = g.cells();
    for (auto& row : cells) {
      for (auto& p : row) p = {p.row * scale, p.col * scale};
    }
    const BimatrixGame scaled(g.row_labels(), g.col_labels(), cells);
    EXPECT_EQ(pure_nash(g).equilibria, pure_nash(scaled).equilibria);
    const auto a = solve_leader_follower(g);
    const auto b = solve_leader_follower(scaled);
    EXPECT_EQ(a.realized_profile, b.realized_profile);
  }
}

}  // namespace
}  // namespace leslie
