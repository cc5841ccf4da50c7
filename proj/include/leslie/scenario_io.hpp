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

// JSON scenario documents.
//
//   {
//     "age_classes": 3,
//     "horizon": 1,                      (optional, default 1)
//     "payoff_weights": [1, 1, 1],       (optional, default all ones)
//     "countries": [
//       {"name": "A", "actions": ["S", "I"], "initial": [30, 35, 25]}, ...
//     ],
//     "effects": [
//       {"profile": {"A": "S", "B": "S"},
//        "dynamics": {"A": {"fertilities": [...], "survivals": [...],
//                           "immigration": [...]}, ...}}, ...
//     ]
//   }
//
// serialize_scenario writes keys in that order, countries in declaration
// order and effect entries sorted by profile (action declaration order,
// first country most significant), so equal scenarios give equal bytes.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "leslie/errors.hpp"
#include "leslie/leslie.hpp"
#include "leslie/scenario.hpp"

namespace leslie {

namespace internal {

using Json = nlohmann::ordered_json;

inline void RequireKind(const Json& j, bool ok, const std::string& field,
                        const char* expected) {
  if (!ok) {
    throw ScenarioError(std::string("expected ") + expected + ", got " +
                            j.type_name(),
                        field);
  }
}

inline void RejectUnknownKeys(const Json& object,
                              std::initializer_list<std::string_view> allowed,
                              const std::string& field) {
  for (const auto& item : object.items()) {
    bool known = false;
    for (auto key : allowed) known = known || item.key() == key;
    if (!known) {
      throw ScenarioError("unknown field '" + item.key() + "'",
                          field.empty() ? item.key()
                                        : field + "." + item.key());
    }
  }
}

inline const Json& Member(const Json& object, const std::string& key,
                          const std::string& field) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw ScenarioError("missing required field",
                        field.empty() ? key : field + "." + key);
  }
  return *it;
}

inline std::string JoinField(const std::string& field, const std::string& key) {
  return field.empty() ? key : field + "." + key;
}

inline double ReadNumber(const Json& j, const std::string& field) {
  RequireKind(j, j.is_number(), field, "number");
  return j.get<double>();
}

inline std::size_t ReadPositiveInt(const Json& j, const std::string& field) {
  RequireKind(j, j.is_number_integer(), field, "integer");
  if (j.is_number_unsigned()) {
    const auto v = j.get<std::uint64_t>();
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  throw ScenarioError("must be at least 1", field);
}

inline std::string ReadString(const Json& j, const std::string& field) {
  RequireKind(j, j.is_string(), field, "string");
  return j.get<std::string>();
}

inline std::vector<double> ReadNumbers(const Json& j,
                                       const std::string& field) {
  RequireKind(j, j.is_array(), field, "array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(ReadNumber(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// Integral values print without a fractional part.
inline Json NumberToJson(double v) {
  if (v == std::trunc(v) && std::abs(v) < 9007199254740992.0) {
    return Json(static_cast<std::int64_t>(v));
  }
  return Json(v);
}

inline Json NumbersToJson(std::span<const double> values) {
  Json out = Json::array();
  for (double v : values) out.push_back(NumberToJson(v));
  return out;
}

inline CountryDynamics ReadDynamics(const Json& j, const std::string& field) {
  RequireKind(j, j.is_object(), field, "object");
  RejectUnknownKeys(j, {"fertilities", "survivals", "immigration"}, field);
  auto fert = ReadNumbers(Member(j, "fertilities", field),
                          JoinField(field, "fertilities"));
  auto surv = ReadNumbers(Member(j, "survivals", field),
                          JoinField(field, "survivals"));
  auto imm = ReadNumbers(Member(j, "immigration", field),
                         JoinField(field, "immigration"));
  std::optional<LeslieMatrix> matrix;
  try {
    matrix = make_leslie(std::move(fert), std::move(surv));
  } catch (const Error& e) {
    throw ScenarioError(e.what(), field);
  }
  try {
    return CountryDynamics{*matrix, ImmigrationVector(std::move(imm))};
  } catch (const Error& e) {
    throw ScenarioError(e.what(), JoinField(field, "immigration"));
  }
}

}  // namespace internal

inline Scenario parse_scenario(std::string_view text) {
  using internal::Json;
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // e.byte is the 1-based offset of the last character read.
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte, text.size() + 1);
    for (std::size_t i = 0; i + 1 < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string detail = e.what();
    if (auto pos = detail.find(": syntax error"); pos != std::string::npos) {
      detail = detail.substr(pos + 2);
    }
    throw ScenarioError(detail, {}, line, column);
  }

  internal::RequireKind(doc, doc.is_object(), "(document)", "object");
  internal::RejectUnknownKeys(
      doc, {"age_classes", "horizon", "payoff_weights", "countries", "effects"},
      "");

  const std::size_t age_classes = internal::ReadPositiveInt(
      internal::Member(doc, "age_classes", ""), "age_classes");
  std::size_t horizon = 1;
  if (doc.contains("horizon")) {
    horizon = internal::ReadPositiveInt(doc["horizon"], "horizon");
  }
  std::optional<std::vector<double>> weights;
  if (doc.contains("payoff_weights")) {
    weights = internal::ReadNumbers(doc["payoff_weights"], "payoff_weights");
  }

  const Json& countries_json = internal::Member(doc, "countries", "");
  internal::RequireKind(countries_json, countries_json.is_array(), "countries",
                        "array");
  std::vector<CountrySpec> countries;
  for (std::size_t c = 0; c < countries_json.size(); ++c) {
    const std::string field = "countries[" + std::to_string(c) + "]";
    const Json& cj = countries_json[c];
    internal::RequireKind(cj, cj.is_object(), field, "object");
    internal::RejectUnknownKeys(cj, {"name", "actions", "initial"}, field);
    std::string name =
        internal::ReadString(internal::Member(cj, "name", field),
                             field + ".name");
    const Json& actions_json = internal::Member(cj, "actions", field);
    internal::RequireKind(actions_json, actions_json.is_array(),
                          field + ".actions", "array");
    std::vector<std::string> actions;
    for (std::size_t a = 0; a < actions_json.size(); ++a) {
      actions.push_back(internal::ReadString(
          actions_json[a], field + ".actions[" + std::to_string(a) + "]"));
    }
    auto initial = internal::ReadNumbers(
        internal::Member(cj, "initial", field), field + ".initial");
    try {
      countries.push_back(CountrySpec{std::move(name), std::move(actions),
                                      PopulationVector(std::move(initial))});
    } catch (const ValidationError& e) {
      throw ScenarioError(e.what(), field + ".initial");
    }
  }

  // Names and labels are resolved below, so check them before the Scenario
  // constructor would.
  for (std::size_t c = 0; c < countries.size(); ++c) {
    for (std::size_t d = 0; d < c; ++d) {
      if (countries[c].name == countries[d].name) {
        throw ScenarioError("duplicate country name '" + countries[c].name +
                                "'",
                            "countries[" + std::to_string(c) + "].name");
      }
    }
  }

  const Json& effects_json = internal::Member(doc, "effects", "");
  internal::RequireKind(effects_json, effects_json.is_array(), "effects",
                        "array");
  std::vector<EffectEntry> effects;
  for (std::size_t e = 0; e < effects_json.size(); ++e) {
    const std::string field = "effects[" + std::to_string(e) + "]";
    const Json& ej = effects_json[e];
    internal::RequireKind(ej, ej.is_object(), field, "object");
    internal::RejectUnknownKeys(ej, {"profile", "dynamics"}, field);

    const Json& profile_json = internal::Member(ej, "profile", field);
    internal::RequireKind(profile_json, profile_json.is_object(),
                          field + ".profile", "object");
    const Json& dynamics_json = internal::Member(ej, "dynamics", field);
    internal::RequireKind(dynamics_json, dynamics_json.is_object(),
                          field + ".dynamics", "object");

    EffectEntry entry;
    std::vector<std::string> names;
    for (const auto& country : countries) names.emplace_back(country.name);
    for (const auto& item : profile_json.items()) {
      if (std::find(names.begin(), names.end(), item.key()) == names.end()) {
        throw ScenarioError("unknown country '" + item.key() + "'",
                            field + ".profile");
      }
    }
    for (const auto& item : dynamics_json.items()) {
      if (std::find(names.begin(), names.end(), item.key()) == names.end()) {
        throw ScenarioError("unknown country '" + item.key() + "'",
                            field + ".dynamics");
      }
    }
    for (std::size_t c = 0; c < countries.size(); ++c) {
      const std::string pfield = field + ".profile." + countries[c].name;
      const std::string label = internal::ReadString(
          internal::Member(profile_json, countries[c].name, field + ".profile"),
          pfield);
      const auto& actions = countries[c].actions;
      auto it = std::find(actions.begin(), actions.end(), label);
      if (it == actions.end()) {
        throw ScenarioError("unknown action '" + label + "'", pfield);
      }
      entry.profile.actions.push_back(
          static_cast<std::size_t>(it - actions.begin()));
      entry.dynamics.push_back(internal::ReadDynamics(
          internal::Member(dynamics_json, countries[c].name,
                           field + ".dynamics"),
          field + ".dynamics." + countries[c].name));
    }
    effects.push_back(std::move(entry));
  }

  return Scenario(age_classes, std::move(countries), std::move(effects),
                  horizon, std::move(weights));
}

inline std::string serialize_scenario(const Scenario& scenario) {
  using internal::Json;
  Json doc = Json::object();
  doc["age_classes"] = scenario.age_classes();
  doc["horizon"] = scenario.horizon();
  if (scenario.payoff_weights()) {
    doc["payoff_weights"] = internal::NumbersToJson(*scenario.payoff_weights());
  }
  Json countries = Json::array();
  for (const auto& country : scenario.countries()) {
    Json cj = Json::object();
    cj["name"] = country.name;
    cj["actions"] = country.actions;
    cj["initial"] = internal::NumbersToJson(country.initial.counts());
    countries.push_back(std::move(cj));
  }
  doc["countries"] = std::move(countries);

  Json effects = Json::array();
  for (const auto& entry : scenario.effects()) {
    Json profile = Json::object();
    Json dynamics = Json::object();
    for (std::size_t c = 0; c < scenario.countries().size(); ++c) {
      const auto& country = scenario.country(c);
      profile[country.name] = country.actions[entry.profile.actions[c]];
      Json dj = Json::object();
      dj["fertilities"] =
          internal::NumbersToJson(entry.dynamics[c].matrix.fertilities());
      dj["survivals"] =
          internal::NumbersToJson(entry.dynamics[c].matrix.survivals());
      dj["immigration"] =
          internal::NumbersToJson(entry.dynamics[c].immigration.flows());
      dynamics[country.name] = std::move(dj);
    }
    Json ej = Json::object();
    ej["profile"] = std::move(profile);
    ej["dynamics"] = std::move(dynamics);
    effects.push_back(std::move(ej));
  }
  doc["effects"] = std::move(effects);
  return doc.dump(2) + "\n";
}

}  // namespace leslie
