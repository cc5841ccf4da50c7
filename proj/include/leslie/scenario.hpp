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

#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "leslie/errors.hpp"
#include "leslie/leslie.hpp"

namespace leslie {

using CountryId = std::size_t;

struct CountrySpec {
  std::string name;
  std::vector<std::string> actions;
  PopulationVector initial;

  friend bool operator==(const CountrySpec&, const CountrySpec&) = default;
};

// One action index per country, in country declaration order.
struct JointProfile {
  std::vector<std::size_t> actions;

  friend auto operator<=>(const JointProfile&, const JointProfile&) = default;
};

struct CountryDynamics {
  LeslieMatrix matrix;
  ImmigrationVector immigration;

  friend bool operator==(const CountryDynamics&,
                         const CountryDynamics&) = default;
};

// The matrix and immigration each country experiences under one joint
// profile. dynamics[c] belongs to country c.
struct EffectEntry {
  JointProfile profile;
  std::vector<CountryDynamics> dynamics;

  friend bool operator==(const EffectEntry&, const EffectEntry&) = default;
};

// Countries, their action sets and initial populations, and a total effect
// table over the joint action space. One country is enough for projection;
// the game solvers need two. Effects are kept sorted by profile, so equal
// scenarios compare equal regardless of declaration order.
class Scenario {
 public:
  Scenario(std::size_t age_classes, std::vector<CountrySpec> countries,
           std::vector<EffectEntry> effects, std::size_t horizon = 1,
           std::optional<std::vector<double>> payoff_weights = std::nullopt)
      : age_classes_(age_classes),
        horizon_(horizon),
        payoff_weights_(std::move(payoff_weights)),
        countries_(std::move(countries)),
        effects_(std::move(effects)) {
    Validate();
    std::sort(effects_.begin(), effects_.end(),
              [](const EffectEntry& a, const EffectEntry& b) {
                return a.profile < b.profile;
              });
  }

  std::size_t age_classes() const { return age_classes_; }
  std::size_t horizon() const { return horizon_; }
  const std::optional<std::vector<double>>& payoff_weights() const {
    return payoff_weights_;
  }
  const std::vector<CountrySpec>& countries() const { return countries_; }
  const std::vector<EffectEntry>& effects() const { return effects_; }

  const CountrySpec& country(CountryId id) const { return countries_.at(id); }

  std::optional<CountryId> find_country(const std::string& name) const {
    for (std::size_t c = 0; c < countries_.size(); ++c) {
      if (countries_[c].name == name) return c;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> find_action(CountryId country,
                                         const std::string& label) const {
    const auto& actions = countries_.at(country).actions;
    for (std::size_t a = 0; a < actions.size(); ++a) {
      if (actions[a] == label) return a;
    }
    return std::nullopt;
  }

  // Weights applied to the final age-class counts; all ones by default.
  std::vector<double> effective_weights() const {
    return payoff_weights_ ? *payoff_weights_
                           : std::vector<double>(age_classes_, 1.0);
  }

  const CountryDynamics& dynamics(const JointProfile& profile,
                                  CountryId country) const {
    auto it = std::lower_bound(
        effects_.begin(), effects_.end(), profile,
        [](const EffectEntry& e, const JointProfile& p) {
          return e.profile < p;
        });
    if (it == effects_.end() || it->profile != profile) {
      throw ScenarioError("effect table missing profile " +
                          profile_label(profile));
    }
    return it->dynamics.at(country);
  }

  // "(S,I)": action labels in country order.
  std::string profile_label(const JointProfile& profile) const {
    std::string out = "(";
    for (std::size_t c = 0; c < profile.actions.size(); ++c) {
      if (c) out += ",";
      if (c < countries_.size() &&
          profile.actions[c] < countries_[c].actions.size()) {
        out += countries_[c].actions[profile.actions[c]];
      } else {
        out += "?";
      }
    }
    return out + ")";
  }

  // Every joint profile, lexicographic with the first country most
  // significant.
  std::vector<JointProfile> all_profiles() const {
    std::vector<JointProfile> out;
    JointProfile current{std::vector<std::size_t>(countries_.size(), 0)};
    while (true) {
      out.push_back(current);
      std::size_t c = countries_.size();
      while (c > 0) {
        --c;
        if (++current.actions[c] < countries_[c].actions.size()) break;
        current.actions[c] = 0;
        if (c == 0) return out;
      }
      if (countries_.empty()) return out;
    }
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  void Validate() const {
    if (age_classes_ < 1) {
      throw ScenarioError("must be at least 1", "age_classes");
    }
    if (horizon_ < 1) throw ScenarioError("must be at least 1", "horizon");
    if (payoff_weights_) {
      if (payoff_weights_->size() != age_classes_) {
        throw ScenarioError("expected " + std::to_string(age_classes_) +
                                " entries, got " +
                                std::to_string(payoff_weights_->size()),
                            "payoff_weights");
      }
      for (std::size_t i = 0; i < payoff_weights_->size(); ++i) {
        if (!std::isfinite((*payoff_weights_)[i])) {
          throw ScenarioError("weight must be finite",
                              "payoff_weights[" + std::to_string(i) + "]");
        }
      }
    }
    if (countries_.empty() || countries_.size() > 2) {
      throw ScenarioError("expected 1 or 2 countries, got " +
                              std::to_string(countries_.size()),
                          "countries");
    }
    std::set<std::string> names;
    for (std::size_t c = 0; c < countries_.size(); ++c) {
      const auto& country = countries_[c];
      const std::string field = "countries[" + std::to_string(c) + "]";
      if (country.name.empty()) {
        throw ScenarioError("name must be non-empty", field + ".name");
      }
      if (!names.insert(country.name).second) {
        throw ScenarioError("duplicate country name '" + country.name + "'",
                            field + ".name");
      }
      if (country.actions.empty()) {
        throw ScenarioError("at least one action required",
                            field + ".actions");
      }
      std::set<std::string> labels;
      for (std::size_t a = 0; a < country.actions.size(); ++a) {
        const std::string action_field =
            field + ".actions[" + std::to_string(a) + "]";
        if (country.actions[a].empty()) {
          throw ScenarioError("action label must be non-empty", action_field);
        }
        if (!labels.insert(country.actions[a]).second) {
          throw ScenarioError("duplicate action label '" +
                                  country.actions[a] + "'",
                              action_field);
        }
      }
      if (country.initial.size() != age_classes_) {
        throw ScenarioError("expected " + std::to_string(age_classes_) +
                                " age classes, got " +
                                std::to_string(country.initial.size()),
                            field + ".initial");
      }
    }

    std::set<JointProfile> seen;
    for (std::size_t e = 0; e < effects_.size(); ++e) {
      const auto& entry = effects_[e];
      const std::string field = "effects[" + std::to_string(e) + "]";
      if (entry.profile.actions.size() != countries_.size()) {
        throw ScenarioError("profile must name one action per country",
                            field + ".profile");
      }
      for (std::size_t c = 0; c < countries_.size(); ++c) {
        if (entry.profile.actions[c] >= countries_[c].actions.size()) {
          throw ScenarioError("unknown action for country '" +
                                  countries_[c].name + "'",
                              field + ".profile");
        }
      }
      if (!seen.insert(entry.profile).second) {
        throw ScenarioError(
            "duplicate profile " + profile_label(entry.profile),
            field + ".profile");
      }
      if (entry.dynamics.size() != countries_.size()) {
        throw ScenarioError("dynamics must cover every country",
                            field + ".dynamics");
      }
      for (std::size_t c = 0; c < countries_.size(); ++c) {
        const std::string dyn_field =
            field + ".dynamics." + countries_[c].name;
        if (entry.dynamics[c].matrix.size() != age_classes_) {
          throw ScenarioError(
              "matrix has " + std::to_string(entry.dynamics[c].matrix.size()) +
                  " age classes, expected " + std::to_string(age_classes_),
              dyn_field + ".fertilities");
        }
        if (entry.dynamics[c].immigration.size() != age_classes_) {
          throw ScenarioError(
              "immigration has " +
                  std::to_string(entry.dynamics[c].immigration.size()) +
                  " age classes, expected " + std::to_string(age_classes_),
              dyn_field + ".immigration");
        }
      }
    }

    std::vector<std::string> missing;
    for (const auto& profile : all_profiles()) {
      if (!seen.count(profile)) missing.push_back(profile_label(profile));
    }
    if (!missing.empty()) {
      std::string msg = missing.size() == 1 ? "effect table missing profile "
                                            : "effect table missing profiles ";
      for (std::size_t i = 0; i < missing.size(); ++i) {
        if (i) msg += ", ";
        msg += missing[i];
      }
      throw ScenarioError(msg, "effects");
    }
  }

  std::size_t age_classes_;
  std::size_t horizon_;
  std::optional<std::vector<double>> payoff_weights_;
  std::vector<CountrySpec> countries_;
  std::vector<EffectEntry> effects_;
};

// The two-country survival-vs-immigration example: country A starts at
// (30,35,25), B at (40,30,30), thousands per class, horizon one interval.
//
// Matrices follow each country's own action. Immigration follows the joint
// profile: a country investing in immigration alone gets the raised flow
// and its rival the reduced one; when both invest, both keep their base
// flows, the only reading that yields the (140, 285) outcome for (I,I).
inline Scenario builtin_paper_scenario() {
  const auto la0 = make_leslie({0, 2, 1}, {0.2, 0.4});
  const auto lb0 = make_leslie({0, 5, 2}, {0.2, 0.4});
  const auto las = make_leslie({0, 3, 1}, {0.4, 0.6});
  const auto lbs = make_leslie({0, 6, 2}, {0.6, 0.8});

  const ImmigrationVector ia0({5, 10, 10});
  const ImmigrationVector ib0({15, 20, 20});
  const ImmigrationVector ia_in({35, 40, 40});
  const ImmigrationVector ib_out({10, 15, 15});
  const ImmigrationVector ib_in({45, 50, 50});
  const ImmigrationVector ia_out({-5, 0, 0});

  constexpr std::size_t kS = 0;
  constexpr std::size_t kI = 1;

  std::vector<CountrySpec> countries{
      {"A", {"S", "I"}, PopulationVector({30, 35, 25})},
      {"B", {"S", "I"}, PopulationVector({40, 30, 30})},
  };
  std::vector<EffectEntry> effects{
      {{{kS, kS}}, {{las, ia0}, {lbs, ib0}}},
      {{{kS, kI}}, {{las, ia_out}, {lb0, ib_in}}},
      {{{kI, kS}}, {{la0, ia_in}, {lbs, ib_out}}},
      {{{kI, kI}}, {{la0, ia0}, {lb0, ib0}}},
  };
  return Scenario(3, std::move(countries), std::move(effects), 1);
}

}  // namespace leslie
