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

// Leslie matrices and age-structured population projection.
//
// A population with k age classes is a vector n of k non-negative counts.
// One projection interval maps n to A n + i, where A carries fertilities in
// its first row and survival probabilities on its sub-diagonal, and i is an
// optional per-class net immigration flow. Age classes are stored 0-based
// and reported 1-based in every message.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "leslie/errors.hpp"

namespace leslie {

namespace internal {

inline std::string ClassLabel(std::size_t zero_based) {
  return std::to_string(zero_based + 1);
}

inline void RequireFinite(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ValidationError(std::string(what) + " must be finite at index " +
                            ClassLabel(i));
    }
  }
}

}  // namespace internal

// Per-age-class counts, in thousands of individuals. Always non-empty,
// finite and non-negative.
class PopulationVector {
 public:
  explicit PopulationVector(std::vector<double> counts)
      : counts_(std::move(counts)) {
    if (counts_.empty()) {
      throw ValidationError("population vector needs at least one age class");
    }
    internal::RequireFinite(counts_, "population count");
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      if (counts_[i] < 0.0) {
        throw ValidationError("population count is negative at index " +
                              internal::ClassLabel(i));
      }
    }
  }

  std::size_t size() const { return counts_.size(); }
  double operator[](std::size_t i) const { return counts_[i]; }
  std::span<const double> counts() const { return counts_; }

  friend bool operator==(const PopulationVector&,
                         const PopulationVector&) = default;

 private:
  std::vector<double> counts_;
};

// Per-age-class net inflow per projection interval. Entries may be
// negative (net emigration).
class ImmigrationVector {
 public:
  explicit ImmigrationVector(std::vector<double> flows)
      : flows_(std::move(flows)) {
    if (flows_.empty()) {
      throw ValidationError("immigration vector needs at least one age class");
    }
    internal::RequireFinite(flows_, "immigration flow");
  }

  static ImmigrationVector Zero(std::size_t k) {
    return ImmigrationVector(std::vector<double>(k, 0.0));
  }

  std::size_t size() const { return flows_.size(); }
  double operator[](std::size_t i) const { return flows_[i]; }
  std::span<const double> flows() const { return flows_; }

  friend bool operator==(const ImmigrationVector&,
                         const ImmigrationVector&) = default;

 private:
  std::vector<double> flows_;
};

using DenseMatrix = std::vector<std::vector<double>>;

class LeslieMatrix;
LeslieMatrix make_leslie(std::vector<double> fertilities,
                         std::vector<double> survivals);

// Fertilities F_1..F_k and survivals P_1..P_{k-1}. Only constructible
// through make_leslie, so every instance is valid.
class LeslieMatrix {
 public:
  std::size_t size() const { return fertilities_.size(); }
  std::span<const double> fertilities() const { return fertilities_; }
  std::span<const double> survivals() const { return survivals_; }

  friend bool operator==(const LeslieMatrix&, const LeslieMatrix&) = default;

 private:
  friend LeslieMatrix make_leslie(std::vector<double>, std::vector<double>);

  LeslieMatrix(std::vector<double> fertilities, std::vector<double> survivals)
      : fertilities_(std::move(fertilities)),
        survivals_(std::move(survivals)) {}

  std::vector<double> fertilities_;
  std::vector<double> survivals_;
};

inline LeslieMatrix make_leslie(std::vector<double> fertilities,
                                std::vector<double> survivals) {
  if (fertilities.empty()) {
    throw DimensionMismatch("Leslie matrix needs at least one age class");
  }
  if (survivals.size() + 1 != fertilities.size()) {
    throw DimensionMismatch(
        "expected " + std::to_string(fertilities.size() - 1) +
        " survival probabilities for " + std::to_string(fertilities.size()) +
        " fertilities, got " + std::to_string(survivals.size()));
  }
  for (std::size_t i = 0; i < fertilities.size(); ++i) {
    if (!std::isfinite(fertilities[i]) || fertilities[i] < 0.0) {
      throw ValidationError("negative or non-finite fertility at index " +
                            internal::ClassLabel(i));
    }
  }
  for (std::size_t i = 0; i < survivals.size(); ++i) {
    // Written so that NaN fails the check.
    if (!(survivals[i] >= 0.0 && survivals[i] <= 1.0)) {
      throw ValidationError("survival outside [0,1] at index " +
                            internal::ClassLabel(i));
    }
  }
  return LeslieMatrix(std::move(fertilities), std::move(survivals));
}

inline DenseMatrix to_dense(const LeslieMatrix& leslie) {
  const std::size_t k = leslie.size();
  DenseMatrix grid(k, std::vector<double>(k, 0.0));
  for (std::size_t j = 0; j < k; ++j) grid[0][j] = leslie.fertilities()[j];
  for (std::size_t j = 0; j + 1 < k; ++j) {
    grid[j + 1][j] = leslie.survivals()[j];
  }
  return grid;
}

// Inverse of to_dense. Rejects grids with non-zero cells outside the first
// row and sub-diagonal.
inline LeslieMatrix from_dense(const DenseMatrix& grid) {
  const std::size_t k = grid.size();
  if (k == 0) throw DimensionMismatch("dense matrix is empty");
  for (const auto& row : grid) {
    if (row.size() != k) throw DimensionMismatch("dense matrix is not square");
  }
  std::vector<double> fertilities(grid[0]);
  std::vector<double> survivals;
  for (std::size_t r = 1; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      if (c + 1 == r) continue;
      if (grid[r][c] != 0.0) {
        throw ValidationError("non-zero entry outside first row and "
                              "sub-diagonal at (" +
                              internal::ClassLabel(r) + "," +
                              internal::ClassLabel(c) + ")");
      }
    }
    survivals.push_back(grid[r][r - 1]);
  }
  return make_leslie(std::move(fertilities), std::move(survivals));
}

enum class NegativePolicy {
  kRaise,  // throw NegativePopulation
  kClamp,  // floor each class at zero
};

// One interval: A n + imm.
inline PopulationVector project_once(
    const LeslieMatrix& leslie, const PopulationVector& population,
    const std::optional<ImmigrationVector>& immigration = std::nullopt,
    NegativePolicy policy = NegativePolicy::kRaise) {
  const std::size_t k = leslie.size();
  if (population.size() != k) {
    throw DimensionMismatch("population has " +
                            std::to_string(population.size()) +
                            " age classes, matrix has " + std::to_string(k));
  }
  if (immigration && immigration->size() != k) {
    throw DimensionMismatch("immigration has " +
                            std::to_string(immigration->size()) +
                            " age classes, matrix has " + std::to_string(k));
  }

  std::vector<double> next(k, 0.0);
  const auto fert = leslie.fertilities();
  for (std::size_t j = 0; j < k; ++j) next[0] += fert[j] * population[j];
  for (std::size_t i = 1; i < k; ++i) {
    next[i] = leslie.survivals()[i - 1] * population[i - 1];
  }
  if (immigration) {
    for (std::size_t i = 0; i < k; ++i) next[i] += (*immigration)[i];
  }

  for (std::size_t i = 0; i < k; ++i) {
    if (!std::isfinite(next[i])) {
      throw ValidationError("projected count overflowed at index " +
                            internal::ClassLabel(i));
    }
    if (next[i] < 0.0) {
      if (policy == NegativePolicy::kRaise) {
        throw NegativePopulation(i + 1, next[i]);
      }
      next[i] = 0.0;
    }
  }
  return PopulationVector(std::move(next));
}

// steps + 1 states, starting with `initial`. Policies persist: the same
// matrix and immigration are applied at every step.
inline std::vector<PopulationVector> project_trajectory(
    const LeslieMatrix& leslie, const PopulationVector& initial,
    const std::optional<ImmigrationVector>& immigration, std::size_t steps,
    NegativePolicy policy = NegativePolicy::kRaise) {
  std::vector<PopulationVector> states;
  states.reserve(steps + 1);
  states.push_back(initial);
  for (std::size_t t = 0; t < steps; ++t) {
    try {
      states.push_back(
          project_once(leslie, states.back(), immigration, policy));
    } catch (const NegativePopulation& e) {
      throw NegativePopulation(e.age_class(), e.value(), t + 1);
    }
  }
  return states;
}

inline double total_population(const PopulationVector& population) {
  double total = 0.0;
  for (double c : population.counts()) total += c;
  return total;
}

// Sum of weights[i] * counts[i].
inline double weighted_total(const PopulationVector& population,
                             std::span<const double> weights) {
  if (weights.size() != population.size()) {
    throw DimensionMismatch("payoff weights have " +
                            std::to_string(weights.size()) +
                            " entries, population has " +
                            std::to_string(population.size()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    total += weights[i] * population[i];
  }
  return total;
}

struct EigenOptions {
  double tol = 1e-10;
  std::size_t max_iter = 100000;
};

struct EigenResult {
  double lambda = 0.0;
  std::vector<double> stable_distribution;  // sums to 1
  std::size_t iterations = 0;
  double residual = 0.0;  // max-norm of A w - lambda w
};

// Dominant eigenvalue (asymptotic growth factor) and stable age
// distribution by power iteration on A + I. The unit shift keeps the Perron
// root strictly dominant for irreducible but imprimitive matrices, e.g.
// fertility only in the last class, where iterating A alone oscillates.
// Converged when ||A w - lambda w||_inf <= tol * max(1, lambda).
inline EigenResult dominant_eigen(const LeslieMatrix& leslie,
                                  EigenOptions options = {}) {
  if (!(options.tol > 0.0) || !std::isfinite(options.tol)) {
    throw ValidationError("tolerance must be positive and finite");
  }
  if (options.max_iter < 1) {
    throw ValidationError("max_iter must be at least 1");
  }

  const std::size_t k = leslie.size();
  const auto fert = leslie.fertilities();
  const auto surv = leslie.survivals();
  auto apply = [&](const std::vector<double>& x) {
    std::vector<double> y(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) y[0] += fert[j] * x[j];
    for (std::size_t i = 1; i < k; ++i) y[i] = surv[i - 1] * x[i - 1];
    return y;
  };

  std::vector<double> x(k, 1.0 / static_cast<double>(k));
  double residual = 0.0;
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    std::vector<double> y = apply(x);
    double norm = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      y[i] += x[i];
      norm += y[i];
    }
    // y >= x >= 0 with sum(x) = 1, so norm >= 1.
    for (std::size_t i = 0; i < k; ++i) x[i] = y[i] / norm;

    const std::vector<double> ax = apply(x);
    double mass = 0.0;
    double image = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      mass += x[i];
      image += ax[i];
    }
    const double lambda = image / mass;
    residual = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      residual = std::max(residual, std::abs(ax[i] - lambda * x[i]));
    }
    if (residual <= options.tol * std::max(1.0, lambda)) {
      for (double& v : x) v /= mass;
      return EigenResult{lambda, std::move(x), it, residual};
    }
  }
  throw ConvergenceError(options.max_iter, residual);
}

}  // namespace leslie
