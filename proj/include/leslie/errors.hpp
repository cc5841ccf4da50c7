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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace leslie {

// Base class for every domain error raised by the library. The CLI maps
// these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input values: negative fertility, survival outside [0,1],
// non-finite counts, bad labels.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A projected age class fell below zero. Age classes are reported 1-based;
// step is set when the failure happened inside a trajectory.
class NegativePopulation : public Error {
 public:
  NegativePopulation(std::size_t age_class, double value,
                     std::optional<std::size_t> step = std::nullopt)
      : Error(Describe(age_class, value, step)),
        age_class_(age_class),
        value_(value),
        step_(step) {}

  std::size_t age_class() const { return age_class_; }
  double value() const { return value_; }
  std::optional<std::size_t> step() const { return step_; }

 private:
  static std::string Describe(std::size_t age_class, double value,
                              std::optional<std::size_t> step) {
    std::string msg = "negative population in age class " +
                      std::to_string(age_class) + " (" +
                      std::to_string(value) + ")";
    if (step) msg += " at step " + std::to_string(*step);
    return msg;
  }

  std::size_t age_class_;
  double value_;
  std::optional<std::size_t> step_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(std::size_t iterations, double residual)
      : Error("power iteration did not converge after " +
              std::to_string(iterations) +
              " iterations (last residual " + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}

  std::size_t iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  std::size_t iterations_;
  double residual_;
};

// Scenario construction or parsing failed. `field` is a JSON-path-like
// locator such as "effects[2].dynamics.A.survivals"; line/column are set
// for syntax errors.
class ScenarioError : public Error {
 public:
  explicit ScenarioError(const std::string& message, std::string field = {},
                         std::optional<std::size_t> line = std::nullopt,
                         std::optional<std::size_t> column = std::nullopt)
      : Error(Describe(message, field, line, column)),
        field_(std::move(field)),
        line_(line),
        column_(column) {}

  const std::string& field() const { return field_; }
  std::optional<std::size_t> line() const { return line_; }
  std::optional<std::size_t> column() const { return column_; }

 private:
  static std::string Describe(const std::string& message,
                              const std::string& field,
                              std::optional<std::size_t> line,
                              std::optional<std::size_t> column) {
    std::string out;
    if (line) {
      out += "line " + std::to_string(*line);
      if (column) out += ", column " + std::to_string(*column);
      out += ": ";
    }
    if (!field.empty()) out += field + ": ";
    return out + message;
  }

  std::string field_;
  std::optional<std::size_t> line_;
  std::optional<std::size_t> column_;
};

}  // namespace leslie
